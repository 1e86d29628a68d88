#include <algorithm>
#include <cassert>

#include "hopfu/gf.hpp"

namespace hopfu::gf {

namespace {

void require_same_field(const Field& a, const Field& b) {
    if (!(a == b)) throw Error(ErrorKind::FieldMismatch, a.describe() + " vs " + b.describe());
}

}  // namespace

void axpy(const Field& f, std::span<Elem> dst, Elem factor, std::span<const Elem> src) {
    if (factor == 0) return;
    if (f.is_prime()) {
        const std::uint64_t p = f.characteristic();
        for (std::size_t j = 0; j < dst.size(); ++j) {
            if (src[j] == 0) continue;
            dst[j] = static_cast<Elem>((dst[j] + std::uint64_t{factor} * src[j]) % p);
        }
        return;
    }
    for (std::size_t j = 0; j < dst.size(); ++j) {
        if (src[j] == 0) continue;
        dst[j] = f.add(dst[j], f.mul(factor, src[j]));
    }
}

Matrix Matrix::identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, f.one());
    return m;
}

Matrix Matrix::from_ints(const Field& f, const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    Matrix m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, f.from_int(rows[r][c]));
    }
    return m;
}

Matrix Matrix::from_ints(const Field& f, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    std::vector<std::vector<std::int64_t>> v;
    for (const auto& r : rows) v.emplace_back(r);
    return from_ints(f, v);
}

Matrix Matrix::from_rows(const Field& f, std::size_t cols, const std::vector<std::vector<Elem>>& rows) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw Error(ErrorKind::DimensionMismatch, "row length differs from cols");
        std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
    }
    return m;
}

Matrix Matrix::diagonal(const Field& f, std::span<const Elem> diag) {
    Matrix m(f, diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
    return m;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](Elem e) { return e == 0; });
}

Matrix Matrix::transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.set(c, r, (*this)(r, c));
    return t;
}

Matrix Matrix::scaled(Elem s) const {
    Matrix m = *this;
    for (auto& e : m.data_) e = field_.mul(e, s);
    return m;
}

Matrix Matrix::pow(std::uint64_t e) const {
    if (!is_square()) throw Error(ErrorKind::DimensionMismatch, "power of a non-square matrix");
    Matrix result = identity(field_, rows_);
    Matrix base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

std::vector<Elem> Matrix::apply(std::span<const Elem> v) const {
    if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "vector length differs from cols");
    std::vector<Elem> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        Elem acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) {
            if (v[c] != 0 && (*this)(r, c) != 0) acc = field_.add(acc, field_.mul((*this)(r, c), v[c]));
        }
        out[r] = acc;
    }
    return out;
}

Matrix Matrix::submatrix_rows(std::size_t first, std::size_t count) const {
    Matrix m(field_, count, cols_);
    std::copy(data_.begin() + static_cast<std::ptrdiff_t>(first * cols_),
              data_.begin() + static_cast<std::ptrdiff_t>((first + count) * cols_), m.data_.begin());
    return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_field(a.field_, b.field_);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix sum shapes");
    Matrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
    return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_field(a.field_, b.field_);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "matrix difference shapes");
    Matrix m = a;
    for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
    return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_field(a.field_, b.field_);
    if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product shapes");
    Matrix m(a.field_, a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Elem f = a(r, k);
            if (f != 0) axpy(a.field_, m.row(r), f, b.row(k));
        }
    }
    return m;
}

std::strong_ordering compare_entries(const Matrix& a, const Matrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.data_.begin(), a.data_.end(), b.data_.begin(), b.data_.end());
}

Matrix kron(const Matrix& a, const Matrix& b) {
    require_same_field(a.field(), b.field());
    const Field& f = a.field();
    Matrix m(f, a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Elem x = a(i, j);
            if (x == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    m.set(i * b.rows() + k, j * b.cols() + l, f.mul(x, b(k, l)));
        }
    return m;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
    require_same_field(a.field(), b.field());
    Matrix m(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m.set(i, j, a(i, j));
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m.set(a.rows() + i, a.cols() + j, b(i, j));
    return m;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
    require_same_field(top.field(), bottom.field());
    if (top.cols() != bottom.cols()) throw Error(ErrorKind::DimensionMismatch, "vstack column counts differ");
    Matrix m(top.field(), top.rows() + bottom.rows(), top.cols());
    for (std::size_t r = 0; r < top.rows(); ++r) std::copy(top.row(r).begin(), top.row(r).end(), m.row(r).begin());
    for (std::size_t r = 0; r < bottom.rows(); ++r)
        std::copy(bottom.row(r).begin(), bottom.row(r).end(), m.row(top.rows() + r).begin());
    return m;
}

RowEchelon rref(const Matrix& m) {
    Matrix a = m;
    const Field& f = a.field();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t sel = r;
        while (sel < a.rows() && a(sel, c) == 0) ++sel;
        if (sel == a.rows()) continue;
        if (sel != r) std::swap_ranges(a.row(sel).begin(), a.row(sel).end(), a.row(r).begin());
        const Elem inv = f.inv(a(r, c));
        if (inv != f.one()) {
            for (auto& e : a.row(r).subspan(c)) e = f.mul(e, inv);
        }
        const auto pivot_row = a.row(r).subspan(c);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r) continue;
            const Elem x = a(i, c);
            if (x != 0) axpy(f, a.row(i).subspan(c), f.neg(x), pivot_row);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), r, std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Subspace Subspace::span(const Matrix& generators) {
    auto e = rref(generators);
    return Subspace(e.reduced.submatrix_rows(0, e.rank), std::move(e.pivots));
}

Subspace Subspace::span(const Field& f, std::size_t ambient, const std::vector<std::vector<Elem>>& vectors) {
    return span(Matrix::from_rows(f, ambient, vectors));
}

Subspace Subspace::zero(const Field& f, std::size_t ambient) { return Subspace(Matrix(f, 0, ambient), {}); }

Subspace Subspace::full(const Field& f, std::size_t ambient) {
    std::vector<std::size_t> piv(ambient);
    for (std::size_t i = 0; i < ambient; ++i) piv[i] = i;
    return Subspace(Matrix::identity(f, ambient), std::move(piv));
}

std::vector<Elem> Subspace::reduce(std::span<const Elem> v) const {
    if (v.size() != ambient()) throw Error(ErrorKind::AmbientMismatch, "vector length differs from ambient dimension");
    std::vector<Elem> w(v.begin(), v.end());
    const Field& f = field();
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
        const Elem x = w[pivots_[r]];
        if (x != 0) axpy(f, w, f.neg(x), basis_.row(r));
    }
    return w;
}

bool Subspace::contains(std::span<const Elem> v) const {
    const auto w = reduce(v);
    return std::all_of(w.begin(), w.end(), [](Elem e) { return e == 0; });
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient() != ambient()) throw Error(ErrorKind::AmbientMismatch, "subspaces in different ambient spaces");
    for (std::size_t r = 0; r < other.dim(); ++r)
        if (!contains(other.basis().row(r))) return false;
    return true;
}

Subspace kernel(const Matrix& m) {
    const Field& f = m.field();
    const auto e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<std::vector<Elem>> vecs;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<Elem> v(m.cols(), 0);
        v[free] = f.one();
        for (std::size_t r = 0; r < e.rank; ++r) v[e.pivots[r]] = f.neg(e.reduced(r, free));
        vecs.push_back(std::move(v));
    }
    return Subspace::span(f, m.cols(), vecs);
}

Subspace image(const Matrix& m) { return Subspace::span(m.transpose()); }

Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw Error(ErrorKind::AmbientMismatch, "subspace sum across ambients");
    require_same_field(a.field(), b.field());
    return Subspace::span(vstack(a.basis(), b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw Error(ErrorKind::AmbientMismatch, "subspace intersection across ambients");
    require_same_field(a.field(), b.field());
    const Field& f = a.field();
    if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(f, a.ambient());
    // Left null space of [A; B]: coefficient pairs (x, y) with xA + yB = 0.
    const Matrix stacked = vstack(a.basis(), b.basis());
    const Subspace rel = kernel(stacked.transpose());
    std::vector<std::vector<Elem>> vecs;
    for (std::size_t r = 0; r < rel.dim(); ++r) {
        std::vector<Elem> v(a.ambient(), 0);
        for (std::size_t i = 0; i < a.dim(); ++i) axpy(f, v, rel.basis()(r, i), a.basis().row(i));
        vecs.push_back(std::move(v));
    }
    Subspace out = Subspace::span(f, a.ambient(), vecs);
    assert(out.dim() + sum(a, b).dim() == a.dim() + b.dim());
    return out;
}

bool contains(const Subspace& a, std::span<const Elem> v) { return a.contains(v); }

}  // namespace hopfu::gf

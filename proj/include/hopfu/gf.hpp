#pragma once

// Exact arithmetic over finite fields F_{p^k} and the dense linear algebra
// (row reduction, kernels, subspace lattice) everything else is built on.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hopfu/error.hpp"

namespace hopfu::gf {

// An element of F_{p^k} is stored as the integer code sum_j c_j p^j of its
// polynomial representative c_0 + c_1 t + ... + c_{k-1} t^{k-1}.  Codes
// below p are exactly the prime subfield Z_p.
using Elem = std::uint32_t;

namespace detail {
struct FieldData {
    std::uint32_t p = 0;
    std::uint32_t k = 0;
    std::uint32_t q = 0;
    std::vector<std::uint32_t> modulus;  // monic, low degree first; empty when k == 1
    std::vector<Elem> inv;               // prime fields
    std::vector<Elem> exp;               // extension fields: powers of a primitive element
    std::vector<std::uint32_t> log;
    std::vector<Elem> add_table;         // extension fields with q <= 256
};
}  // namespace detail

class Field {
public:
    // Builds F_{p^k}.  Without a modulus the lexicographically smallest monic
    // irreducible of degree k is used (ordered by the code of its lower
    // coefficients), so the same (p, k) always yields the same field.
    static Field make(std::uint32_t p, std::uint32_t k = 1,
                      std::optional<std::vector<std::uint32_t>> modulus = std::nullopt);

    std::uint32_t characteristic() const { return d_->p; }
    std::uint32_t degree() const { return d_->k; }
    std::uint32_t order() const { return d_->q; }
    const std::vector<std::uint32_t>& modulus() const { return d_->modulus; }
    bool is_prime() const { return d_->k == 1; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }
    Elem from_int(std::int64_t v) const;
    Elem from_coeffs(std::span<const std::uint32_t> coeffs) const;
    std::vector<std::uint32_t> coeffs(Elem e) const;
    bool in_prime_subfield(Elem e) const { return e < d_->p; }
    bool contains(Elem e) const { return e < d_->q; }

    Elem add(Elem a, Elem b) const {
        if (d_->k == 1) {
            const std::uint64_t s = std::uint64_t{a} + b;
            return static_cast<Elem>(s >= d_->p ? s - d_->p : s);
        }
        if (!d_->add_table.empty()) return d_->add_table[std::size_t{a} * d_->q + b];
        return add_slow(a, b);
    }
    Elem neg(Elem a) const {
        if (d_->k == 1) return a == 0 ? 0 : d_->p - a;
        return neg_slow(a);
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (d_->k == 1) return static_cast<Elem>(std::uint64_t{a} * b % d_->p);
        if (a == 0 || b == 0) return 0;
        return d_->exp[(d_->log[a] + d_->log[b]) % (d_->q - 1)];
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;

    std::string format(Elem e) const;
    std::string describe() const;

    friend bool operator==(const Field& a, const Field& b) {
        return a.d_ == b.d_ ||
               (a.d_->p == b.d_->p && a.d_->k == b.d_->k && a.d_->modulus == b.d_->modulus);
    }

private:
    explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
    Elem add_slow(Elem a, Elem b) const;
    Elem neg_slow(Elem a) const;

    std::shared_ptr<const detail::FieldData> d_;
};

bool is_prime(std::uint64_t n);

// Irreducibility of a monic polynomial over F_p by trial division against every
// monic polynomial of degree <= deg/2.
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic_low_first);

// Value type pairing a field with one of its elements.
class FieldElem {
public:
    FieldElem(Field field, Elem code) : field_(std::move(field)), code_(code) {}
    static FieldElem from_coeffs(const Field& f, std::span<const std::uint32_t> c) {
        return {f, f.from_coeffs(c)};
    }

    const Field& field() const { return field_; }
    Elem code() const { return code_; }
    std::vector<std::uint32_t> coeffs() const { return field_.coeffs(code_); }
    bool is_zero() const { return code_ == 0; }

    FieldElem operator+(const FieldElem& o) const { return {field_, field_.add(code_, o.code_)}; }
    FieldElem operator-(const FieldElem& o) const { return {field_, field_.sub(code_, o.code_)}; }
    FieldElem operator*(const FieldElem& o) const { return {field_, field_.mul(code_, o.code_)}; }
    FieldElem operator/(const FieldElem& o) const { return {field_, field_.div(code_, o.code_)}; }
    FieldElem operator-() const { return {field_, field_.neg(code_)}; }
    FieldElem inverse() const { return {field_, field_.inv(code_)}; }
    friend bool operator==(const FieldElem& a, const FieldElem& b) {
        return a.code_ == b.code_ && a.field_ == b.field_;
    }

private:
    Field field_;
    Elem code_;
};

class Matrix {
public:
    Matrix(Field field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static Matrix identity(const Field& f, std::size_t n);
    static Matrix from_ints(const Field& f, const std::vector<std::vector<std::int64_t>>& rows);
    static Matrix from_ints(const Field& f, std::initializer_list<std::initializer_list<std::int64_t>> rows);
    static Matrix from_rows(const Field& f, std::size_t cols, const std::vector<std::vector<Elem>>& rows);
    static Matrix diagonal(const Field& f, std::span<const Elem> diag);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Elem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, Elem v) { data_[r * cols_ + c] = v; }
    std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    const std::vector<Elem>& data() const { return data_; }

    bool is_zero() const;
    Matrix transpose() const;
    Matrix scaled(Elem s) const;
    Matrix pow(std::uint64_t e) const;
    std::vector<Elem> apply(std::span<const Elem> v) const;  // M v
    Matrix submatrix_rows(std::size_t first, std::size_t count) const;

    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ && a.field_ == b.field_;
    }
    // Lexicographic order on entry codes; used only for canonical output ordering.
    friend std::strong_ordering compare_entries(const Matrix& a, const Matrix& b);

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> data_;
};

// Kronecker product with left-factor-major index order: (i, j) -> i * b.rows() + j.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& top, const Matrix& bottom);

// dst += factor * src
void axpy(const Field& f, std::span<Elem> dst, Elem factor, std::span<const Elem> src);

struct RowEchelon {
    Matrix reduced;
    std::size_t rank;
    std::vector<std::size_t> pivots;
};

RowEchelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);

// A subspace of F^n held as the nonzero rows of a reduced row echelon form,
// so that two subspaces are equal exactly when their bases are equal.
class Subspace {
public:
    static Subspace span(const Matrix& generators);
    static Subspace span(const Field& f, std::size_t ambient, const std::vector<std::vector<Elem>>& vectors);
    static Subspace zero(const Field& f, std::size_t ambient);
    static Subspace full(const Field& f, std::size_t ambient);

    const Field& field() const { return basis_.field(); }
    std::size_t ambient() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    // Residue of v after clearing every pivot coordinate.
    std::vector<Elem> reduce(std::span<const Elem> v) const;
    bool contains(std::span<const Elem> v) const;
    bool contains(const Subspace& other) const;

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.basis_ == b.basis_; }

private:
    Subspace(Matrix basis, std::vector<std::size_t> pivots)
        : basis_(std::move(basis)), pivots_(std::move(pivots)) {}
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

Subspace kernel(const Matrix& m);  // right null space {x : m x = 0}
Subspace image(const Matrix& m);   // column space
Subspace intersect(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
bool contains(const Subspace& a, std::span<const Elem> v);

}  // namespace hopfu::gf

#include "hopfu/umod.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cstdio>
#include <sstream>

namespace hopfu::umod {

using gf::Elem;

std::string format_label(const Label& lab) {
    if (lab.l == 1) return "S_" + std::to_string(lab.i);
    return "M(" + std::to_string(lab.l) + "," + std::to_string(lab.i) + ")";
}

Label parse_label(std::string_view text, std::uint32_t p) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    long l = 0, i = 0;
    char tail = 0;
    bool ok = false;
    if (s.size() > 2 && (s[0] == 'S' || s[0] == 's') && s[1] == '_') {
        l = 1;
        ok = std::sscanf(s.c_str() + 2, "%ld%c", &i, &tail) == 1;
    } else if (s.size() > 2 && (s[0] == 'M' || s[0] == 'm') && s[1] == '(') {
        ok = std::sscanf(s.c_str() + 2, "%ld,%ld)%c", &l, &i, &tail) == 2 && s.back() == ')';
    } else {
        ok = std::sscanf(s.c_str(), "%ld,%ld%c", &l, &i, &tail) == 2;
    }
    if (!ok) throw Error(ErrorKind::BadLabel, "cannot read label '" + std::string(text) + "'");
    if (l < 1 || l > static_cast<long>(p) || i < 0 || i >= static_cast<long>(p)) {
        throw Error(ErrorKind::BadLabel, "label '" + std::string(text) + "' needs 1 <= l <= " + std::to_string(p) +
                                             " and 0 <= i < " + std::to_string(p));
    }
    return {static_cast<std::uint32_t>(l), static_cast<std::uint32_t>(i)};
}

std::string Decomposition::to_terms() const {
    std::string out;
    for (const auto& [lab, n] : mult) {
        if (n == 0) continue;
        if (!out.empty()) out += " + ";
        if (n > 1) out += std::to_string(n) + " ";
        out += "M(" + std::to_string(lab.l) + "," + std::to_string(lab.i) + ")";
    }
    return out.empty() ? "0" : out;
}

std::uint64_t Decomposition::dim() const {
    std::uint64_t d = 0;
    for (const auto& [lab, n] : mult) d += lab.l * n;
    return d;
}

std::string Decomposition::to_string() const {
    std::ostringstream os;
    bool first = true;
    // Longest summands first, then by weight.
    std::vector<std::pair<Label, std::uint64_t>> terms(mult.begin(), mult.end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return a.first.l != b.first.l ? a.first.l > b.first.l : a.first.i < b.first.i;
    });
    for (const auto& [lab, n] : terms) {
        if (!first) os << " + ";
        first = false;
        if (n != 1) os << n << ' ';
        os << format_label(lab);
    }
    return first ? "0" : os.str();
}

Decomposition decomposition_of(std::uint32_t p, std::initializer_list<std::pair<Label, std::uint64_t>> terms) {
    Decomposition d{p, {}};
    for (const auto& [lab, n] : terms)
        if (n) d.mult[lab] += n;
    return d;
}

std::optional<std::string> failing_identity(const Matrix& u, const Matrix& w) {
    if (!u.is_square() || !w.is_square() || u.rows() != w.rows()) return "matrices are not square of equal size";
    if (!(u.field() == w.field())) return "matrices over different fields";
    const std::uint32_t p = u.field().characteristic();
    if (!u.pow(p).is_zero()) return "u^p = 0";
    if (!(w.pow(p) == w)) return "w^p = w";
    if (!(w * u - u * w == u)) return "wu - uw = u";
    return std::nullopt;
}

bool validate(const Matrix& u, const Matrix& w) { return !failing_identity(u, w); }

UModule UModule::make(Matrix u, Matrix w) {
    if (auto bad = failing_identity(u, w)) throw Error(ErrorKind::InvalidModule, "fails " + *bad);
    return UModule(std::move(u), std::move(w));
}

UModule standard_module(const Field& f, std::uint32_t l, std::uint32_t i) {
    const std::uint32_t p = f.characteristic();
    if (l < 1 || l > p) throw Error(ErrorKind::BadLength, "length " + std::to_string(l) + " outside [1, " + std::to_string(p) + "]");
    if (i >= p) throw Error(ErrorKind::BadLabel, "weight " + std::to_string(i) + " outside Z_" + std::to_string(p));
    Matrix u(f, l, l), w(f, l, l);
    for (std::uint32_t j = 0; j < l; ++j) {
        if (j + 1 < l) u.set(j + 1, j, f.one());
        w.set(j, j, (i + j) % p);
    }
    return UModule::make(std::move(u), std::move(w));
}

UModule zero_module(const Field& f) { return UModule::make(Matrix(f, 0, 0), Matrix(f, 0, 0)); }

UModule regular_module(const Field& f) {
    const std::uint32_t p = f.characteristic();
    const std::size_t n = std::size_t{p} * p;
    Matrix u(f, n, n), w(f, n, n);
    for (std::uint32_t a = 0; a < p; ++a) {
        for (std::uint32_t b = 0; b < p; ++b) {
            const std::size_t src = std::size_t{a} * p + b;
            if (a + 1 < p) u.set((a + 1) * p + b, src, f.one());
            // w u^a w^b = u^a (w + a) w^b = u^a w^{b+1} + a u^a w^b, with w^p = w.
            const std::uint32_t b1 = b + 1 < p ? b + 1 : 1;
            w.set(std::size_t{a} * p + b1, src, f.add(w(std::size_t{a} * p + b1, src), f.one()));
            w.set(src, src, f.add(w(src, src), a % p));
        }
    }
    return UModule::make(std::move(u), std::move(w));
}

UModule direct_sum(const UModule& a, const UModule& b) {
    if (!(a.field() == b.field())) throw Error(ErrorKind::FieldMismatch, "direct sum over different fields");
    return UModule::make(gf::block_diagonal(a.mat_u(), b.mat_u()), gf::block_diagonal(a.mat_w(), b.mat_w()));
}

UModule tensor(const UModule& a, const UModule& b) {
    if (!(a.field() == b.field())) throw Error(ErrorKind::FieldMismatch, "tensor product over different fields");
    const Field& f = a.field();
    const auto ia = Matrix::identity(f, a.dim());
    const auto ib = Matrix::identity(f, b.dim());
    return UModule::make(gf::kron(a.mat_u(), ib) + gf::kron(ia, b.mat_u()),
                         gf::kron(a.mat_w(), ib) + gf::kron(ia, b.mat_w()));
}

std::vector<Subspace> weight_spaces(const UModule& m) {
    const Field& f = m.field();
    const std::uint32_t p = m.p();
    std::vector<Subspace> out;
    out.reserve(p);
    std::size_t total = 0;
    for (std::uint32_t i = 0; i < p; ++i) {
        out.push_back(gf::kernel(m.mat_w() - Matrix::identity(f, m.dim()).scaled(i)));
        total += out.back().dim();
    }
    if (total != m.dim()) throw Error(ErrorKind::InvalidModule, "weight spaces do not span the module");
    for (std::uint32_t i = 0; i < p; ++i) {
        const auto& src = out[i];
        for (std::size_t r = 0; r < src.dim(); ++r) {
            [[maybe_unused]] const auto v = m.mat_u().apply(src.basis().row(r));
            assert(out[(i + 1) % p].contains(v));
        }
    }
    return out;
}

Subspace socle(const UModule& m) { return gf::kernel(m.mat_u()); }

Subspace radical(const UModule& m) { return gf::image(m.mat_u()); }

std::vector<std::uint64_t> head_weights(const UModule& m) {
    const auto ws = weight_spaces(m);
    const auto rad = radical(m);
    std::vector<std::uint64_t> out(m.p(), 0);
    for (std::uint32_t i = 0; i < m.p(); ++i) {
        // u is homogeneous, so rad(M) is graded and (M / rad M)[i] = M[i] / rad M[i].
        out[i] = ws[i].dim() - gf::intersect(ws[i], rad).dim();
    }
    return out;
}

Decomposition decompose(const UModule& m) {
    const Field& f = m.field();
    const std::uint32_t p = m.p();
    const auto ws = weight_spaces(m);
    const auto ker = socle(m);
    // images[s] = u^s M for s = 0..p
    std::vector<Subspace> images;
    images.reserve(p + 1);
    images.push_back(Subspace::full(f, m.dim()));
    Matrix power = Matrix::identity(f, m.dim());
    for (std::uint32_t s = 1; s <= p; ++s) {
        power = m.mat_u() * power;
        images.push_back(gf::image(power));
    }
    // strings[s][j] = dim(ker u ∩ u^s M ∩ M[j])
    std::vector<std::vector<std::size_t>> strings(p + 1, std::vector<std::size_t>(p, 0));
    for (std::uint32_t s = 0; s <= p; ++s) {
        const auto base = gf::intersect(ker, images[s]);
        for (std::uint32_t j = 0; j < p; ++j) strings[s][j] = gf::intersect(base, ws[j]).dim();
    }
    Decomposition d{p, {}};
    for (std::uint32_t l = 1; l <= p; ++l) {
        for (std::uint32_t j = 0; j < p; ++j) {
            const std::size_t n = strings[l - 1][j] - strings[l][j];
            if (n) d.mult[Label{l, (j + p - (l - 1) % p) % p}] = n;
        }
    }
    if (d.dim() != m.dim()) throw Error(ErrorKind::InvalidModule, "string counts do not add up to the dimension");
    return d;
}

std::size_t hom_dim(const UModule& a, const UModule& b) {
    if (!(a.field() == b.field())) throw Error(ErrorKind::FieldMismatch, "hom between modules over different fields");
    const Field& f = a.field();
    const std::size_t na = a.dim(), nb = b.dim();
    const std::size_t vars = na * nb;
    if (vars == 0) return 0;
    // Unknown F: nb x na, F(r, c) at index r * na + c.  Equations F A = B F for A, B in {u, w}.
    Matrix sys(f, 2 * vars, vars);
    std::size_t row = 0;
    for (int which = 0; which < 2; ++which) {
        const Matrix& ma = which == 0 ? a.mat_u() : a.mat_w();
        const Matrix& mb = which == 0 ? b.mat_u() : b.mat_w();
        for (std::size_t r = 0; r < nb; ++r) {
            for (std::size_t c = 0; c < na; ++c, ++row) {
                for (std::size_t k = 0; k < na; ++k) {
                    const Elem x = ma(k, c);
                    if (x) sys.set(row, r * na + k, f.add(sys(row, r * na + k), x));
                }
                for (std::size_t k = 0; k < nb; ++k) {
                    const Elem x = mb(r, k);
                    if (x) sys.set(row, k * na + c, f.sub(sys(row, k * na + c), x));
                }
            }
        }
    }
    return vars - gf::rank(sys);
}

bool is_isomorphic(const UModule& a, const UModule& b) {
    if (!(a.field() == b.field()) || a.dim() != b.dim()) return false;
    return decompose(a) == decompose(b);
}

}  // namespace hopfu::umod

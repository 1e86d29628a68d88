#include "hopfu/green.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hopfu::green {

namespace {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void poly_add(IntPoly2& acc, std::pair<std::uint32_t, std::uint32_t> key, std::int64_t c) {
    if (c == 0) return;
    auto& slot = acc[key];
    slot += c;
    if (slot == 0) acc.erase(key);
}

}  // namespace

void GreenElem::check_label(Label lab) const {
    if (lab.l < 1 || lab.l > p_ || lab.i >= p_) {
        throw Error(ErrorKind::BadLabel, umod::format_label(lab) + " is not a label for p = " + std::to_string(p_));
    }
}

GreenElem GreenElem::basis(std::uint32_t p, Label lab, std::int64_t coeff) {
    GreenElem g(p);
    g.add_term(lab, coeff);
    return g;
}

GreenElem GreenElem::from_decomposition(const umod::Decomposition& d) {
    GreenElem g(d.p);
    for (const auto& [lab, n] : d.mult) g.add_term(lab, static_cast<std::int64_t>(n));
    return g;
}

std::int64_t GreenElem::coeff(Label lab) const {
    auto it = coeffs_.find(lab);
    return it == coeffs_.end() ? 0 : it->second;
}

std::int64_t GreenElem::dim() const {
    std::int64_t d = 0;
    for (const auto& [lab, c] : coeffs_) d += static_cast<std::int64_t>(lab.l) * c;
    return d;
}

std::string GreenElem::to_string() const {
    if (coeffs_.empty()) return "0";
    std::vector<std::pair<Label, std::int64_t>> terms(coeffs_.begin(), coeffs_.end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return a.first.l != b.first.l ? a.first.l > b.first.l : a.first.i < b.first.i;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [lab, c] : terms) {
        const std::int64_t mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (mag != 1) os << mag << ' ';
        os << umod::format_label(lab);
    }
    return os.str();
}

void GreenElem::add_term(Label lab, std::int64_t c) {
    check_label(lab);
    if (c == 0) return;
    auto& slot = coeffs_[lab];
    slot += c;
    if (slot == 0) coeffs_.erase(lab);
}

GreenElem& GreenElem::operator+=(const GreenElem& o) {
    if (o.p_ != p_) throw Error(ErrorKind::CharacteristicMismatch, "adding Green ring elements for different p");
    for (const auto& [lab, c] : o.coeffs_) add_term(lab, c);
    return *this;
}

GreenElem& GreenElem::operator-=(const GreenElem& o) {
    if (o.p_ != p_) throw Error(ErrorKind::CharacteristicMismatch, "subtracting Green ring elements for different p");
    for (const auto& [lab, c] : o.coeffs_) add_term(lab, -c);
    return *this;
}

GreenElem operator*(std::int64_t s, const GreenElem& a) {
    GreenElem g(a.p_);
    for (const auto& [lab, c] : a.coeffs_) g.add_term(lab, s * c);
    return g;
}

GreenElem operator*(const GreenElem& a, const GreenElem& b) { return mul(a, b); }

GreenElem basis_product(std::uint32_t p, Label a, Label b) {
    GreenElem out(p);
    // Validates both labels.
    (void)GreenElem::basis(p, a);
    (void)GreenElem::basis(p, b);
    if (a.l > b.l) std::swap(a, b);
    const std::uint32_t l = a.l, m = b.l;
    const std::uint32_t s = (a.i + b.i) % p;
    auto at = [p](std::uint64_t w) { return static_cast<std::uint32_t>(w % p); };
    if (l == 1) {
        out.add_term({m, s}, 1);
    } else if (m == p) {
        for (std::uint32_t i = 0; i < l; ++i) out.add_term({p, at(s + i)}, 1);
    } else if (l + m <= p) {
        for (std::uint32_t i = 1; i <= l; ++i) out.add_term({m - l - 1 + 2 * i, at(s + l - i)}, 1);
    } else {
        for (std::uint32_t i = 1; i <= p - m; ++i) out.add_term({m - l - 1 + 2 * i, at(s + l - i)}, 1);
        for (std::uint32_t i = 1; i <= l + m - p; ++i) out.add_term({p, at(s + i - 1)}, 1);
    }
    return out;
}

GreenElem mul(const GreenElem& a, const GreenElem& b) {
    if (a.p() != b.p()) throw Error(ErrorKind::CharacteristicMismatch, "multiplying Green ring elements for different p");
    GreenElem out(a.p());
    for (const auto& [la, ca] : a.coeffs())
        for (const auto& [lb, cb] : b.coeffs()) out += (ca * cb) * basis_product(a.p(), la, lb);
    return out;
}

GreenElem power(const GreenElem& a, std::uint64_t e) {
    GreenElem r = GreenElem::one(a.p());
    for (std::uint64_t k = 0; k < e; ++k) r = mul(r, a);
    return r;
}

IntPoly2 f_poly_closed(std::uint32_t n) {
    if (n == 0) throw Error(ErrorKind::BadParameter, "f_n is defined for n >= 1");
    IntPoly2 f;
    for (std::uint32_t i = 0; 2 * i <= n - 1; ++i) {
        const std::int64_t c = binomial(n - 1 - i, i) * (i % 2 ? -1 : 1);
        poly_add(f, {i, n - 1 - 2 * i}, c);
    }
    return f;
}

IntPoly2 f_poly_recursive(std::uint32_t n) {
    if (n == 0) throw Error(ErrorKind::BadParameter, "f_n is defined for n >= 1");
    IntPoly2 prev{{{0, 0}, 1}};  // f_1
    if (n == 1) return prev;
    IntPoly2 cur{{{0, 1}, 1}};  // f_2
    for (std::uint32_t k = 3; k <= n; ++k) {
        IntPoly2 next;
        for (const auto& [e, c] : cur) poly_add(next, {e.first, e.second + 1}, c);
        for (const auto& [e, c] : prev) poly_add(next, {e.first + 1, e.second}, -c);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

IntPoly2 f_poly(std::uint32_t n) {
    auto closed = f_poly_closed(n);
    if (closed != f_poly_recursive(n)) {
        throw Error(ErrorKind::CheckFailed, "closed form of f_" + std::to_string(n) + " differs from the recursion");
    }
    return closed;
}

std::string format_poly(const IntPoly2& f) {
    if (f.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Ascending y-degree, so f_n prints with its leading z power first.
    for (auto it = f.begin(); it != f.end(); ++it) {
        const auto [ey, ez] = it->first;
        const std::int64_t c = it->second;
        const std::int64_t mag = c < 0 ? -c : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        const bool has_var = ey > 0 || ez > 0;
        if (mag != 1 || !has_var) os << mag;
        if (ey > 0) os << 'y' << (ey > 1 ? "^" + std::to_string(ey) : "");
        if (ez > 0) os << 'z' << (ez > 1 ? "^" + std::to_string(ez) : "");
    }
    return os.str();
}

GreenElem evaluate(const IntPoly2& f, const GreenElem& y, const GreenElem& z) {
    GreenElem out(y.p());
    for (const auto& [e, c] : f) out += c * mul(power(y, e.first), power(z, e.second));
    return out;
}

GreenElem chebyshev_class(std::uint32_t p, std::uint32_t l) {
    if (l < 1 || l > p) throw Error(ErrorKind::BadLength, "length " + std::to_string(l) + " outside [1, p]");
    const GreenElem x = GreenElem::basis(p, {2, 0});
    const GreenElem a = GreenElem::basis(p, {1, 1 % p});
    GreenElem prev = GreenElem::one(p);
    GreenElem cur = l == 1 ? prev : x;
    for (std::uint32_t k = 3; k <= l; ++k) {
        GreenElem next = mul(x, cur) - mul(a, prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    const GreenElem expected = GreenElem::basis(p, {l, 0});
    if (cur != expected) {
        throw Error(ErrorKind::CheckFailed, "u_" + std::to_string(l) + " = " + cur.to_string() + " but [M(" +
                                                std::to_string(l) + ",0)] expected");
    }
    return cur;
}

PresentationReport presentation_check(std::uint32_t p) {
    if (!gf::is_prime(p)) throw Error(ErrorKind::NonPrime, std::to_string(p) + " is not prime");
    PresentationReport rep;
    rep.p = p;
    const GreenElem one = GreenElem::one(p);
    const GreenElem a = GreenElem::basis(p, {1, 1 % p});
    const GreenElem x = GreenElem::basis(p, {2, 0});

    const GreenElem ap = power(a, p);
    if (ap != one) throw Error(ErrorKind::CheckFailed, "a^p = 1 fails: a^p = " + ap.to_string());
    rep.a_pow_p_is_one = true;
    rep.lines.push_back("a^" + std::to_string(p) + " = " + ap.to_string());

    std::vector<GreenElem> u;
    for (std::uint32_t l = 1; l <= p; ++l) u.push_back(chebyshev_class(p, l));
    const GreenElem rel = mul(x - a - one, u.back());
    if (!rel.is_zero()) throw Error(ErrorKind::CheckFailed, "(x - a - 1) u_p = 0 fails: got " + rel.to_string());
    rep.x_minus_a_minus_one_kills_u_p = true;
    rep.lines.push_back("(x - a - 1) u_" + std::to_string(p) + " = 0");

    std::map<Label, int> hits;
    GreenElem ar = one;
    for (std::uint32_t r = 0; r < p; ++r) {
        for (std::uint32_t l = 1; l <= p; ++l) {
            const GreenElem prod = mul(ar, u[l - 1]);
            const GreenElem expected = GreenElem::basis(p, {l, r});
            if (prod != expected) {
                throw Error(ErrorKind::CheckFailed, "a^" + std::to_string(r) + " u_" + std::to_string(l) + " = " +
                                                        prod.to_string() + " but " + expected.to_string() + " expected");
            }
            ++hits[{l, r}];
        }
        ar = mul(ar, a);
    }
    if (hits.size() != std::size_t{p} * p) throw Error(ErrorKind::CheckFailed, "a^r u_l do not hit every basis class");
    rep.monomials_give_basis = true;
    rep.lines.push_back("a^r u_l = [M(l,r)] for all " + std::to_string(p * p) + " pairs");
    return rep;
}

double fpdim(std::uint32_t p, const std::map<Label, std::uint64_t>& mult) {
    for (const auto& [lab, n] : mult) {
        if (lab.l < 1 || lab.l > p || lab.i >= p) throw Error(ErrorKind::BadLabel, umod::format_label(lab));
    }
    if (p == 2) {
        double d = 0;
        for (const auto& [lab, n] : mult) d += static_cast<double>(lab.l) * static_cast<double>(n);
        return d;
    }
    if (p == 3) {
        auto a = [&](std::uint32_t l, std::uint32_t i) {
            auto it = mult.find({l, i});
            return it == mult.end() ? 0.0 : static_cast<double>(it->second);
        };
        double alpha = 0;
        for (std::uint32_t i = 0; i < 3; ++i) alpha += a(1, i) + 2 * a(2, i) + 3 * a(3, i);
        const double beta = a(1, 2) + a(2, 1) + a(2, 2) + a(3, 0) + a(3, 1) + a(3, 2);
        const double gamma = a(1, 0) + a(2, 2) + a(3, 1);
        return 0.5 * ((alpha + gamma) + std::sqrt((alpha - gamma) * (alpha - gamma) + 4 * beta * beta));
    }
    throw Error(ErrorKind::UnsupportedCharacteristic, "no closed fpdim formula for p = " + std::to_string(p));
}

double multiplication_spectral_radius(const GreenElem& x) {
    const std::uint32_t p = x.p();
    for (const auto& [lab, c] : x.coeffs()) {
        if (c < 0) throw Error(ErrorKind::BadParameter, "spectral radius needs non-negative coefficients");
    }
    const std::size_t n = std::size_t{p} * p;
    auto index = [p](Label lab) { return (lab.l - 1) * std::size_t{p} + lab.i; };
    std::vector<double> m(n * n, 0.0);
    for (std::uint32_t l = 1; l <= p; ++l)
        for (std::uint32_t i = 0; i < p; ++i) {
            const GreenElem col = mul(x, GreenElem::basis(p, {l, i}));
            for (const auto& [lab, c] : col.coeffs()) m[index(lab) * n + index({l, i})] = static_cast<double>(c);
        }
    // rho = lim ||M^(2^k)||^(1/2^k); renormalize after each squaring and carry the log.
    double log_scale = 0.0;
    double exponent = 1.0;
    double estimate = 0.0;
    for (int k = 0; k < 60; ++k) {
        double norm = 0.0;
        for (double v : m) norm = std::max(norm, std::abs(v));
        if (norm == 0.0) return 0.0;
        for (double& v : m) v /= norm;
        log_scale += std::log(norm) / exponent;
        estimate = std::exp(log_scale);
        std::vector<double> sq(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k2 = 0; k2 < n; ++k2) {
                const double a = m[i * n + k2];
                if (a == 0.0) continue;
                for (std::size_t j = 0; j < n; ++j) sq[i * n + j] += a * m[k2 * n + j];
            }
        m = std::move(sq);
        exponent *= 2.0;
    }
    return estimate;
}

}  // namespace hopfu::green

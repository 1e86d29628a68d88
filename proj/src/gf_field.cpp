#include <algorithm>
#include <sstream>

#include "hopfu/gf.hpp"

namespace hopfu::gf {

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic polynomial g over F_p.
Poly poly_rem(Poly a, const Poly& g, std::uint32_t p) {
    const std::size_t dg = g.size() - 1;
    trim(a);
    while (a.size() > dg) {
        const std::uint64_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dg;
        for (std::size_t i = 0; i <= dg; ++i) {
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - lead) * g[i]) % p);
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& g, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
        }
    }
    return poly_rem(std::move(r), g, p);
}

Poly digits(std::uint64_t code, std::uint32_t p, std::size_t len) {
    Poly d(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        d[i] = static_cast<std::uint32_t>(code % p);
        code /= p;
    }
    return d;
}

std::uint64_t to_code(const Poly& d, std::uint32_t p) {
    std::uint64_t code = 0;
    for (std::size_t i = d.size(); i-- > 0;) code = code * p + d[i];
    return code;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

Poly poly_pow(Poly base, std::uint64_t e, const Poly& g, std::uint32_t p) {
    Poly r{1};
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, g, p);
        base = poly_mulmod(base, base, g, p);
        e >>= 1;
    }
    return r;
}

constexpr std::uint32_t kMaxExtensionOrder = 1u << 20;
constexpr std::uint32_t kAddTableOrder = 256;

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> monic_low_first) {
    Poly f(monic_low_first.begin(), monic_low_first.end());
    trim(f);
    if (f.size() < 2 || f.back() != 1) return false;
    const std::size_t n = f.size() - 1;
    for (std::size_t d = 1; d <= n / 2; ++d) {
        const std::uint64_t count = ipow(p, static_cast<std::uint32_t>(d));
        for (std::uint64_t c = 0; c < count; ++c) {
            Poly g = digits(c, p, d);
            g.push_back(1);
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

Field Field::make(std::uint32_t p, std::uint32_t k, std::optional<std::vector<std::uint32_t>> modulus) {
    if (!gf::is_prime(p) || p >= (1u << 31)) {
        throw Error(ErrorKind::NonPrime, "characteristic " + std::to_string(p) + " is not a supported prime");
    }
    if (k == 0) throw Error(ErrorKind::BadParameter, "extension degree must be at least 1");
    auto d = std::make_shared<detail::FieldData>();
    d->p = p;
    d->k = k;

    if (k == 1) {
        if (modulus && !modulus->empty()) {
            Poly m = *modulus;
            if (m.size() != 2 || m[1] != 1 || m[0] >= p) {
                throw Error(ErrorKind::ReducibleModulus, "a prime field takes no modulus other than t + c");
            }
        }
        d->q = p;
        if (p <= kMaxExtensionOrder) {
            d->inv.assign(p, 0);
            for (std::uint32_t a = 1; a < p; ++a) {
                if (d->inv[a] != 0) continue;
                // Fermat: a^(p-2)
                std::uint64_t r = 1, b = a, e = p - 2;
                while (e) {
                    if (e & 1) r = r * b % p;
                    b = b * b % p;
                    e >>= 1;
                }
                d->inv[a] = static_cast<Elem>(r);
                d->inv[r] = a;
            }
        }
        return Field(std::move(d));
    }

    const std::uint64_t q64 = ipow(p, k);
    if (q64 > kMaxExtensionOrder) {
        throw Error(ErrorKind::BadParameter, "extension field of order " + std::to_string(q64) + " is too large");
    }
    d->q = static_cast<std::uint32_t>(q64);

    Poly mod;
    if (modulus) {
        mod = *modulus;
        if (mod.size() != k + 1 || mod.back() != 1 ||
            std::any_of(mod.begin(), mod.end(), [p](std::uint32_t c) { return c >= p; })) {
            throw Error(ErrorKind::ReducibleModulus, "modulus must be monic of degree " + std::to_string(k) +
                                                         " with coefficients in [0, p)");
        }
        if (!is_irreducible(p, mod)) throw Error(ErrorKind::ReducibleModulus, "supplied modulus is reducible");
    } else {
        const std::uint64_t count = ipow(p, k);
        for (std::uint64_t c = 0; c < count; ++c) {
            Poly cand = digits(c, p, k);
            cand.push_back(1);
            if (is_irreducible(p, cand)) {
                mod = std::move(cand);
                break;
            }
        }
    }
    d->modulus = mod;

    // Log/exp tables from a primitive element.
    const std::uint64_t order = q64 - 1;
    const auto factors = prime_factors(order);
    Poly gen;
    for (std::uint64_t c = 1; c < q64; ++c) {
        Poly g = digits(c, p, k);
        trim(g);
        bool primitive = true;
        for (auto r : factors) {
            Poly t = poly_pow(g, order / r, mod, p);
            if (t.size() == 1 && t[0] == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen = g;
            break;
        }
    }
    d->exp.resize(order);
    d->log.assign(q64, 0);
    Poly cur{1};
    for (std::uint64_t i = 0; i < order; ++i) {
        Poly padded = cur;
        padded.resize(k, 0);
        const auto code = static_cast<Elem>(to_code(padded, p));
        d->exp[i] = code;
        d->log[code] = static_cast<std::uint32_t>(i);
        cur = poly_mulmod(cur, gen, mod, p);
    }
    Field f(d);
    if (q64 <= kAddTableOrder) {
        d->add_table.resize(q64 * q64);
        for (Elem a = 0; a < q64; ++a) {
            for (Elem b = 0; b < q64; ++b) d->add_table[std::size_t{a} * q64 + b] = f.add_slow(a, b);
        }
    }
    return f;
}

Elem Field::from_int(std::int64_t v) const {
    const std::int64_t p = d_->p;
    return static_cast<Elem>(((v % p) + p) % p);
}

Elem Field::from_coeffs(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() > d_->k) {
        for (std::size_t i = d_->k; i < coeffs.size(); ++i) {
            if (coeffs[i] != 0) {
                throw Error(ErrorKind::BadParameter, "element has more than k = " + std::to_string(d_->k) +
                                                         " coefficients");
            }
        }
    }
    Poly c(d_->k, 0);
    for (std::size_t i = 0; i < std::min<std::size_t>(coeffs.size(), d_->k); ++i) {
        if (coeffs[i] >= d_->p) {
            throw Error(ErrorKind::BadParameter, "coefficient " + std::to_string(coeffs[i]) + " not in [0, p)");
        }
        c[i] = coeffs[i];
    }
    return static_cast<Elem>(to_code(c, d_->p));
}

std::vector<std::uint32_t> Field::coeffs(Elem e) const { return digits(e, d_->p, d_->k); }

Elem Field::add_slow(Elem a, Elem b) const {
    const std::uint32_t p = d_->p;
    std::uint64_t code = 0, scale = 1;
    for (std::uint32_t i = 0; i < d_->k; ++i) {
        code += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    return static_cast<Elem>(code);
}

Elem Field::neg_slow(Elem a) const {
    const std::uint32_t p = d_->p;
    std::uint64_t code = 0, scale = 1;
    for (std::uint32_t i = 0; i < d_->k; ++i) {
        code += ((p - a % p) % p) * scale;
        a /= p;
        scale *= p;
    }
    return static_cast<Elem>(code);
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw Error(ErrorKind::BadParameter, "inverse of zero");
    if (d_->k == 1) {
        if (!d_->inv.empty()) return d_->inv[a];
        return pow(a, d_->p - 2);
    }
    const std::uint32_t order = d_->q - 1;
    return d_->exp[(order - d_->log[a]) % order];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    Elem r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::string Field::format(Elem e) const {
    if (d_->k == 1) return std::to_string(e);
    const auto c = coeffs(e);
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        if (!first) os << '+';
        first = false;
        if (i == 0) {
            os << c[i];
        } else {
            if (c[i] != 1) os << c[i];
            os << 't';
            if (i > 1) os << '^' << i;
        }
    }
    return first ? "0" : os.str();
}

std::string Field::describe() const {
    std::ostringstream os;
    os << "F_" << d_->q;
    if (d_->k > 1) {
        os << " = F_" << d_->p << "[t]/(";
        bool first = true;
        for (std::size_t i = d_->modulus.size(); i-- > 0;) {
            const auto c = d_->modulus[i];
            if (c == 0) continue;
            if (!first) os << '+';
            first = false;
            if (i == 0 || c != 1) os << c;
            if (i > 0) os << 't';
            if (i > 1) os << '^' << i;
        }
        os << ')';
    }
    return os.str();
}

}  // namespace hopfu::gf

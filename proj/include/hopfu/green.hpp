#pragma once

// The Green ring r(U): the free abelian group on the p^2 classes [M(l,i)],
// multiplied by the closed-form tensor product rules.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hopfu/umod.hpp"

namespace hopfu::green {

using umod::Label;

class GreenElem {
public:
    explicit GreenElem(std::uint32_t p) : p_(p) {}
    static GreenElem basis(std::uint32_t p, Label lab, std::int64_t coeff = 1);
    static GreenElem one(std::uint32_t p) { return basis(p, {1, 0}); }
    static GreenElem from_decomposition(const umod::Decomposition& d);

    std::uint32_t p() const { return p_; }
    const std::map<Label, std::int64_t>& coeffs() const { return coeffs_; }
    std::int64_t coeff(Label lab) const;
    bool is_zero() const { return coeffs_.empty(); }
    // Sum of l * coefficient: the dimension of the (virtual) module.
    std::int64_t dim() const;
    std::string to_string() const;  // "M(3,0) + S_1", "2 M(2,1) - S_0", "0"

    void add_term(Label lab, std::int64_t c);
    GreenElem& operator+=(const GreenElem& o);
    GreenElem& operator-=(const GreenElem& o);
    friend GreenElem operator+(GreenElem a, const GreenElem& b) { return a += b; }
    friend GreenElem operator-(GreenElem a, const GreenElem& b) { return a -= b; }
    friend GreenElem operator*(std::int64_t s, const GreenElem& a);
    friend GreenElem operator*(const GreenElem& a, const GreenElem& b);
    friend bool operator==(const GreenElem&, const GreenElem&) = default;

private:
    void check_label(Label lab) const;
    std::uint32_t p_;
    std::map<Label, std::int64_t> coeffs_;  // no zero entries
};

// [M(l,r)] [M(m,r')] by the closed forms (simple factor, projective factor,
// l + m <= p, l + m > p).
GreenElem basis_product(std::uint32_t p, Label a, Label b);
GreenElem mul(const GreenElem& a, const GreenElem& b);
GreenElem power(const GreenElem& a, std::uint64_t e);

// Polynomials in Z[y, z], keyed by (deg_y, deg_z).
using IntPoly2 = std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t>;
IntPoly2 f_poly_closed(std::uint32_t n);
IntPoly2 f_poly_recursive(std::uint32_t n);
// Closed form, after asserting it equals the recursion.
IntPoly2 f_poly(std::uint32_t n);
std::string format_poly(const IntPoly2& f);
// f(y, z) with y, z replaced by Green ring elements.
GreenElem evaluate(const IntPoly2& f, const GreenElem& y, const GreenElem& z);

// u_l from u_1 = 1, u_2 = x, u_l = x u_{l-1} - a u_{l-2}, x = [M(2,0)], a = [S_1];
// throws CheckFailed if the result differs from [M(l,0)].
GreenElem chebyshev_class(std::uint32_t p, std::uint32_t l);

struct PresentationReport {
    std::uint32_t p = 0;
    bool a_pow_p_is_one = false;
    bool x_minus_a_minus_one_kills_u_p = false;
    bool monomials_give_basis = false;
    std::vector<std::string> lines;
};

// Throws CheckFailed naming the first identity that does not hold.
PresentationReport presentation_check(std::uint32_t p);

// Frobenius-Perron dimension from the closed formulas for p = 2, 3.
double fpdim(std::uint32_t p, const std::map<Label, std::uint64_t>& multiplicities);
// Spectral radius of multiplication by x on r(U) (x with non-negative
// coefficients).  Reported as data next to fpdim; the two need not agree.
double multiplication_spectral_radius(const GreenElem& x);

}  // namespace hopfu::green

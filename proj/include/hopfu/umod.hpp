#pragma once

// Finite-dimensional modules over U = k<u,w>/(u^p, w^p - w, wu - uw - u),
// held as the pair of matrices by which u and w act.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hopfu/gf.hpp"

namespace hopfu::umod {

using gf::Field;
using gf::Matrix;
using gf::Subspace;

// M(l, i): length l in [1, p], lowest weight i in Z_p.  M(1, i) is the simple S_i.
struct Label {
    std::uint32_t l = 1;
    std::uint32_t i = 0;
    friend auto operator<=>(const Label&, const Label&) = default;
};

std::string format_label(const Label& lab);  // "S_1", "M(3,0)"
// Accepts "S_i", "M(l,i)" and "l,i"; throws BadLabel unless 1 <= l <= p and i < p.
Label parse_label(std::string_view text, std::uint32_t p);

struct Decomposition {
    std::uint32_t p = 0;
    std::map<Label, std::uint64_t> mult;

    std::uint64_t dim() const;
    std::string to_string() const;  // "M(3,0) + 2 S_1", "0" when empty
    // Ascending labels, always in M(l,i) notation: "M(1,1) + M(3,0)".
    std::string to_terms() const;
    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

// Name of the first of u^p = 0, w^p = w, wu - uw = u that fails, if any.
std::optional<std::string> failing_identity(const Matrix& u, const Matrix& w);
bool validate(const Matrix& u, const Matrix& w);

class UModule {
public:
    // Throws InvalidModule when the matrices are not square of equal size or
    // violate one of the defining relations.
    static UModule make(Matrix u, Matrix w);

    const Field& field() const { return u_.field(); }
    std::uint32_t p() const { return u_.field().characteristic(); }
    std::size_t dim() const { return u_.rows(); }
    const Matrix& mat_u() const { return u_; }
    const Matrix& mat_w() const { return w_; }

private:
    UModule(Matrix u, Matrix w) : u_(std::move(u)), w_(std::move(w)) {}
    Matrix u_;
    Matrix w_;
};

UModule standard_module(const Field& f, std::uint32_t l, std::uint32_t i);
UModule zero_module(const Field& f);
// U acting on itself by left multiplication, basis u^a w^b at index a*p + b.
UModule regular_module(const Field& f);

UModule direct_sum(const UModule& a, const UModule& b);
UModule tensor(const UModule& a, const UModule& b);

// M[i] = ker(w - i) for i = 0..p-1.
std::vector<Subspace> weight_spaces(const UModule& m);
Subspace socle(const UModule& m);
Subspace radical(const UModule& m);
// Count of each weight in M / uM, indexed by weight.
std::vector<std::uint64_t> head_weights(const UModule& m);

Decomposition decompose(const UModule& m);
Decomposition decomposition_of(std::uint32_t p, std::initializer_list<std::pair<Label, std::uint64_t>> terms);
std::size_t hom_dim(const UModule& a, const UModule& b);
bool is_isomorphic(const UModule& a, const UModule& b);

}  // namespace hopfu::umod

#pragma once

// Graded quadratic algebras T = k<V>/(R) with R a subspace of V (x) V.
//
// Graded pieces are built degree by degree: T_n = (T_{n-1} (x) V) / K_n where
// K_n is the image of V^{n-2} (x) R.  Coordinates on T_{n-1} (x) V are
// sigma * g + a for a basis element sigma of T_{n-1} and a generator a.  The
// basis of T_n is the set of non-pivot coordinates of the reduced echelon
// form of K_n; these are exactly the normal words for the left-factor-major
// (lexicographic) order on V^{(x) n}, so every basis element of T_n is a
// word whose every prefix is again a normal word.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <string>
#include <vector>

#include "hopfu/gf.hpp"

namespace hopfu::quadalg {

using gf::Elem;
using gf::Field;
using gf::Matrix;
using gf::Subspace;

inline constexpr std::size_t kDefaultCoordinateBudget = 1'000'000;

struct GradedPiece {
    std::size_t degree = 0;
    std::size_t n_gens = 0;
    std::size_t dim = 0;
    // For basis element t of T_n: the coordinate parent * n_gens + letter in T_{n-1} (x) V.
    std::vector<std::size_t> basis_coord;
    // coordinate -> index of the basis element, or npos for pivot coordinates
    std::vector<std::size_t> coord_to_basis;
    // Reduced echelon form of K_n: row r has its pivot at pivots[r], and
    // e_{pivots[r]} = sum of c * basis[t] over tails[r] modulo K_n.
    std::vector<std::size_t> pivots;
    std::vector<std::vector<std::pair<std::size_t, Elem>>> tails;
    std::vector<std::size_t> coord_to_row;  // coordinate -> row, or npos

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t coords() const { return coord_to_basis.size(); }
    std::size_t parent(std::size_t t) const { return basis_coord[t] / n_gens; }
    std::size_t letter(std::size_t t) const { return basis_coord[t] % n_gens; }
    // Class in T_n of the coordinate vector v on T_{n-1} (x) V.
    std::vector<Elem> normal_form(const Field& f, std::span<const Elem> v) const;
    // dst += c * class(e_coord)
    void add_class_of_coord(const Field& f, std::span<Elem> dst, std::size_t coord, Elem c) const;
};

struct Term {
    Elem coeff;
    std::uint32_t left;
    std::uint32_t right;
};

// The vector sum coeff * x_left (x) x_right in V (x) V.
std::vector<Elem> relation_vector(const Field& f, std::size_t n_gens, const std::vector<Term>& terms);

class QuadAlgebra {
public:
    static QuadAlgebra make(const Field& f, std::vector<std::string> names,
                            const std::vector<std::vector<Elem>>& relation_vectors);
    static QuadAlgebra from_terms(const Field& f, std::vector<std::string> names,
                                  const std::vector<std::vector<Term>>& relations);

    const Field& field() const { return relations_.field(); }
    std::size_t n_gens() const { return names_.size(); }
    const std::vector<std::string>& gen_names() const { return names_; }
    const Subspace& relations() const { return relations_; }
    std::size_t supplied_relations() const { return supplied_; }
    std::size_t dependent_relations() const { return supplied_ - relations_.dim(); }

    void set_coordinate_budget(std::size_t budget) { budget_ = budget; }
    std::size_t coordinate_budget() const { return budget_; }

    // Cached; throws BudgetExceeded when T_{n-1} (x) V has more coordinates than the budget.
    std::shared_ptr<const GradedPiece> piece(std::size_t n) const;
    std::vector<std::size_t> hilbert(std::size_t max_deg) const;

    // The word (generator indices) of basis element t of T_n.
    std::vector<std::uint32_t> word(std::size_t n, std::size_t t) const;
    std::string format_word(const std::vector<std::uint32_t>& w) const;
    std::string format_element(std::size_t n, std::span<const Elem> v) const;

    // Class of u * x_letter for u in T_n.
    std::vector<Elem> right_multiply(std::size_t n, std::span<const Elem> u, std::uint32_t letter) const;
    std::vector<Elem> reduce_word(const std::vector<std::uint32_t>& w) const;
    std::vector<Elem> graded_multiply(std::size_t n, std::size_t m, std::span<const Elem> u,
                                      std::span<const Elem> v) const;

    // The degree-n part of the ideal as a subspace of V^{(x) n} (kernel of the
    // projection onto T_n); only for small g^n.
    Subspace ideal_component(std::size_t n) const;
    // The projection V^{(x) n} -> T_n as a dim T_n x g^n matrix.
    Matrix projection(std::size_t n) const;

private:
    QuadAlgebra(std::vector<std::string> names, Subspace relations, std::size_t supplied);
    struct Cache;
    std::vector<std::string> names_;
    Subspace relations_;
    std::size_t supplied_;
    std::size_t budget_ = kDefaultCoordinateBudget;
    std::shared_ptr<Cache> cache_;
};

// Ideal component by direct summation of V^a (x) R (x) V^b in V^{(x) n}; an
// independent check of QuadAlgebra::piece for small n.
Subspace ideal_component_direct(const QuadAlgebra& a, std::size_t n);

// dim (R (x) V) ∩ (V (x) R) in V^{(x) 3}.
std::size_t overlap_dim(const QuadAlgebra& a);

// Generators x_i* and relation space R^perp under <a (x) b, c (x) d> = a(c) b(d).
QuadAlgebra koszul_dual(const QuadAlgebra& a);

enum class FrobeniusStatus { Frobenius, NotFrobenius, Inconclusive };
std::string_view to_string(FrobeniusStatus s);

struct FrobeniusReport {
    FrobeniusStatus status = FrobeniusStatus::Inconclusive;
    bool finite = false;
    std::vector<std::size_t> dims;  // up to the cutoff, or up to the first zero
    std::optional<std::size_t> top_degree;
    bool top_is_one_dimensional = false;
    bool symmetric = false;
    bool pairings_nondegenerate = false;
    std::vector<std::size_t> pairing_ranks;  // rank of B_i x B_{d-i} -> B_d for i = 0..d
    std::string reason;
};

FrobeniusReport frobenius_check(const QuadAlgebra& a, std::size_t cutoff = 8);

}  // namespace hopfu::quadalg

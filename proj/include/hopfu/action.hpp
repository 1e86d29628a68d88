#pragma once

// U acting on a quadratic algebra T = k<V>/(R) through derivations: u and w
// act on V by rho_u, rho_w and on T_n by the Leibniz extension.

#include <cstdint>
#include <vector>

#include "hopfu/quadalg.hpp"
#include "hopfu/umod.hpp"

namespace hopfu::action {

using gf::Elem;
using gf::Field;
using gf::Matrix;
using gf::Subspace;
using quadalg::QuadAlgebra;

inline constexpr std::uint64_t kDefaultSolveBudget = 100'000'000;

// (X (x) 1 + 1 (x) X)(R) ⊆ R
bool preserves_relations(const QuadAlgebra& a, const Matrix& x);

class UAction {
public:
    // Throws NotUModule (naming the failing identity) or RelationsNotPreserved.
    // Checking u^p = 0, w^p = w, wu - uw = u on V suffices: each left side is
    // again a derivation in characteristic p, and a derivation vanishing on V
    // vanishes on T.
    static UAction make(QuadAlgebra a, Matrix rho_u, Matrix rho_w);

    const QuadAlgebra& algebra() const { return algebra_; }
    const umod::UModule& v_module() const { return v_; }
    const Matrix& rho_u() const { return v_.mat_u(); }
    const Matrix& rho_w() const { return v_.mat_w(); }

private:
    UAction(QuadAlgebra a, umod::UModule v) : algebra_(std::move(a)), v_(std::move(v)) {}
    QuadAlgebra algebra_;
    umod::UModule v_;
};

bool is_inner_faithful(const UAction& act);

// Matrix of the derivation extending x to T_n, on the normal-word basis.
Matrix induced_derivation(const QuadAlgebra& a, const Matrix& x, std::size_t n);
umod::UModule induced_module(const UAction& act, std::size_t n);
std::vector<umod::Decomposition> graded_decompose(const UAction& act, std::size_t max_deg);
std::vector<std::size_t> invariant_dims(const UAction& act, std::size_t max_deg);

// Elements sum c_ij u^i w^j (coordinate i * p + j) acting as zero on T_0 + ... + T_N.
Subspace annihilator(const UAction& act, std::size_t max_deg);

struct ActionSolution {
    Matrix rho_u;
    Matrix rho_w;
    bool inner_faithful = false;
};

struct SolveResult {
    std::size_t derivation_space_dim = 0;
    Subspace derivation_space;  // in coordinates X(r, c) at r * g + c
    std::uint64_t candidates_u = 0;
    std::uint64_t nilpotent_u = 0;
    std::vector<ActionSolution> solutions;  // canonical order
    std::size_t inner_faithful_count() const;
};

// The space D of X with (X (x) 1 + 1 (x) X)(R) ⊆ R.
Subspace derivation_space(const QuadAlgebra& a);

// All (rho_u, rho_w) in D x D satisfying the defining relations of U.
// Throws BudgetExceeded when |F|^(2 dim D) exceeds the budget.
SolveResult solve_actions(const QuadAlgebra& a, std::uint64_t budget = kDefaultSolveBudget, unsigned workers = 0);

}  // namespace hopfu::action

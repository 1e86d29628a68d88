#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "hopfu/action.hpp"
#include "hopfu/error.hpp"

using namespace hopfu;
using namespace hopfu::action;
using quadalg::Term;
using umod::Label;

namespace {

std::vector<std::string> gen_names(std::size_t g) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < g; ++i) names.push_back("x" + std::to_string(i + 1));
    return names;
}

QuadAlgebra commutative(const Field& f, std::size_t g) {
    std::vector<std::vector<Term>> rels;
    for (std::uint32_t i = 0; i < g; ++i)
        for (std::uint32_t j = i + 1; j < g; ++j) rels.push_back({{1, j, i}, {f.neg(1), i, j}});
    return QuadAlgebra::from_terms(f, gen_names(g), rels);
}

// x_j x_i = q x_i x_j for i < j
QuadAlgebra skew(const Field& f, std::size_t g, Elem q) {
    std::vector<std::vector<Term>> rels;
    for (std::uint32_t i = 0; i < g; ++i)
        for (std::uint32_t j = i + 1; j < g; ++j) rels.push_back({{1, j, i}, {f.neg(q), i, j}});
    return QuadAlgebra::from_terms(f, gen_names(g), rels);
}

// Induced operator on V^{(x) n} reduced modulo the directly summed ideal, in
// the coordinates of the non-pivot columns.
Matrix word_expansion(const QuadAlgebra& a, const Matrix& x, std::size_t n) {
    const Field& f = a.field();
    const std::size_t g = a.n_gens();
    const auto ideal = quadalg::ideal_component_direct(a, n);
    const std::size_t amb = ideal.ambient();
    Matrix full(f, amb, amb);
    for (std::size_t k = 0; k < n; ++k) {
        Matrix term = Matrix::identity(f, 1);
        for (std::size_t j = 0; j < n; ++j) term = gf::kron(term, j == k ? x : Matrix::identity(f, g));
        full = full + term;
    }
    std::vector<std::size_t> free_cols;
    std::vector<bool> is_pivot(amb, false);
    for (auto c : ideal.pivots()) is_pivot[c] = true;
    for (std::size_t c = 0; c < amb; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix out(f, free_cols.size(), free_cols.size());
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        std::vector<Elem> e(amb, 0);
        e[free_cols[j]] = 1;
        const auto img = ideal.reduce(full.apply(e));
        for (std::size_t i = 0; i < free_cols.size(); ++i) out.set(i, j, img[free_cols[i]]);
    }
    return out;
}

// Every (U, W) of g x g matrices satisfying the U relations and preserving R.
std::vector<std::pair<Matrix, Matrix>> brute_force_solutions(const QuadAlgebra& a) {
    const Field& f = a.field();
    const std::size_t g = a.n_gens();
    const std::uint32_t q = f.order();
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < g * g; ++k) count *= q;
    std::vector<Matrix> stable;
    for (std::uint64_t code = 0; code < count; ++code) {
        Matrix m(f, g, g);
        std::uint64_t c = code;
        for (std::size_t e = 0; e < g * g; ++e, c /= q) m.set(e / g, e % g, static_cast<Elem>(c % q));
        if (preserves_relations(a, m)) stable.push_back(std::move(m));
    }
    std::vector<std::pair<Matrix, Matrix>> out;
    for (const auto& u : stable)
        for (const auto& w : stable)
            if (umod::validate(u, w)) out.emplace_back(u, w);
    return out;
}

bool pair_less(const std::pair<Matrix, Matrix>& a, const std::pair<Matrix, Matrix>& b) {
    if (auto c = compare_entries(a.first, b.first); c != 0) return c < 0;
    return compare_entries(a.second, b.second) < 0;
}

std::vector<std::pair<Matrix, Matrix>> as_pairs(const SolveResult& r) {
    std::vector<std::pair<Matrix, Matrix>> out;
    for (const auto& s : r.solutions) out.emplace_back(s.rho_u, s.rho_w);
    return out;
}

QuadAlgebra random_algebra(std::mt19937_64& rng, const Field& f, std::size_t g) {
    const std::size_t nrel = rng() % (g * g + 1);
    std::vector<std::vector<Elem>> rels(nrel, std::vector<Elem>(g * g));
    for (auto& r : rels)
        for (auto& e : r) e = static_cast<Elem>(rng() % 2 == 0 ? rng() % f.order() : 0);
    return QuadAlgebra::make(f, gen_names(g), rels);
}

}  // namespace

TEST_CASE("M(2,1) acting on k[x1,x2] at p = 2") {
    auto f = Field::make(2);
    auto v = umod::standard_module(f, 2, 1);
    auto act = UAction::make(commutative(f, 2), v.mat_u(), v.mat_w());
    CHECK(is_inner_faithful(act));
    CHECK(invariant_dims(act, 6) == std::vector<std::size_t>{1, 1, 2, 2, 3, 3, 4});
    const auto dec = graded_decompose(act, 6);
    CHECK(dec[0] == umod::decomposition_of(2, {{{1, 0}, 1}}));
    CHECK(dec[1] == umod::decomposition_of(2, {{{2, 1}, 1}}));
    CHECK(dec[2] == umod::decomposition_of(2, {{{2, 1}, 1}, {{1, 0}, 1}}));
    CHECK(dec[3] == umod::decomposition_of(2, {{{2, 1}, 2}}));
    CHECK(dec[4] == umod::decomposition_of(2, {{{2, 1}, 2}, {{1, 0}, 1}}));
    for (std::size_t m = 0; m <= 3; ++m) {
        if (2 * m <= 6) CHECK(dec[2 * m] == umod::decomposition_of(2, {{{2, 1}, m}, {{1, 0}, 1}}));
        if (2 * m + 1 <= 6) CHECK(dec[2 * m + 1] == umod::decomposition_of(2, {{{2, 1}, m + 1}}));
    }
    // Kernel of U -> End(T): spanned by wu - uw - u = uw + u in the PBW basis.
    const auto ann = annihilator(act, 6);
    REQUIRE(ann.dim() == 1);
    CHECK(ann.contains(std::vector<Elem>{0, 0, 1, 1}));
}

TEST_CASE("M(2,0) acting on k[x1,x2] at p = 3") {
    auto f = Field::make(3);
    auto v = umod::standard_module(f, 2, 0);
    auto act = UAction::make(commutative(f, 2), v.mat_u(), v.mat_w());
    CHECK(invariant_dims(act, 6) == std::vector<std::size_t>{1, 0, 0, 2, 0, 0, 3});
    const auto dec = graded_decompose(act, 3);
    CHECK(dec[2] == umod::decomposition_of(3, {{{3, 0}, 1}}));
    CHECK(dec[3].dim() == 4);
}

TEST_CASE("the trivial action is annihilated by the augmentation ideal") {
    auto f = Field::make(3);
    Matrix z(f, 2, 2);
    auto act = UAction::make(commutative(f, 2), z, z);
    CHECK_FALSE(is_inner_faithful(act));
    CHECK(annihilator(act, 3).dim() == 8);
    CHECK(invariant_dims(act, 4) == std::vector<std::size_t>{1, 2, 3, 4, 5});
}

TEST_CASE("make_action rejects bad input") {
    auto f = Field::make(3);
    auto a = commutative(f, 2);
    const auto id = Matrix::identity(f, 2);
    CHECK_THROWS_WITH_AS(UAction::make(a, id, Matrix(f, 2, 2)), doctest::Contains("u^p = 0"), Error);
    try {
        UAction::make(a, id, Matrix(f, 2, 2));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotUModule);
    }
    // x2x1 = 2 x1x2 at p = 3 is not preserved by u = E21.
    auto s = skew(f, 2, 2);
    auto v = umod::standard_module(f, 2, 0);
    try {
        UAction::make(s, v.mat_u(), v.mat_w());
        FAIL("expected RelationsNotPreserved");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RelationsNotPreserved);
    }
    CHECK_THROWS_AS(UAction::make(a, Matrix::identity(f, 3), Matrix::identity(f, 3)), Error);
}

TEST_CASE("induced action agrees with word expansion") {
    std::mt19937_64 rng(7);
    int checked = 0;
    for (auto [p, k] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
        auto f = Field::make(p, k);
        for (std::size_t g : {2u, 3u}) {
            if (g == 3 && k == 2) continue;
            for (int t = 0; t < 6; ++t) {
                auto a = random_algebra(rng, f, g);
                const auto sols = solve_actions(a, 10'000'000'000ULL);
                for (std::size_t k = 0; k < sols.solutions.size(); k += 1 + sols.solutions.size() / 5) {
                    const auto& s = sols.solutions[k];
                    auto act = UAction::make(a, s.rho_u, s.rho_w);
                    for (std::size_t n = 0; n <= (g == 2 ? 5u : 3u); ++n) {
                        auto ui = induced_derivation(a, s.rho_u, n);
                        auto wi = induced_derivation(a, s.rho_w, n);
                        auto uo = word_expansion(a, s.rho_u, n);
                        auto wo = word_expansion(a, s.rho_w, n);
                        // The incremental basis is the set of non-pivot words, so the matrices agree exactly.
                        CHECK(ui == uo);
                        CHECK(wi == wo);
                        CHECK(umod::decompose(induced_module(act, n)) == umod::decompose(umod::UModule::make(uo, wo)));
                        ++checked;
                    }
                }
            }
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("solver agrees with brute force over all matrix pairs") {
    std::mt19937_64 rng(11);
    for (std::uint32_t q : {2u, 3u}) {
        auto f = Field::make(q);
        for (int t = 0; t < 8; ++t) {
            auto a = t == 0 ? commutative(f, 2) : random_algebra(rng, f, 2);
            auto brute = brute_force_solutions(a);
            std::sort(brute.begin(), brute.end(), pair_less);
            const auto res = solve_actions(a);
            CHECK(as_pairs(res) == brute);
            for (const auto& s : res.solutions) CHECK(s.inner_faithful == !s.rho_u.is_zero());
        }
    }
}

TEST_CASE("solver output is canonical") {
    auto f = Field::make(3);
    auto a = commutative(f, 2);
    const auto one = solve_actions(a, kDefaultSolveBudget, 1);
    const auto many = solve_actions(a, kDefaultSolveBudget, 4);
    CHECK(as_pairs(one) == as_pairs(many));
    const auto pairs = as_pairs(one);
    CHECK(std::is_sorted(pairs.begin(), pairs.end(), pair_less));
    // Permuting and rescaling the supplied relation basis does not matter.
    auto b = QuadAlgebra::make(f, gen_names(3), {{0, 1, 0, 2, 0, 0, 0, 0, 1}, {0, 0, 1, 0, 0, 0, 2, 0, 0}});
    auto c = QuadAlgebra::make(f, gen_names(3), {{0, 0, 2, 0, 0, 0, 1, 0, 0}, {0, 2, 0, 1, 0, 0, 0, 0, 2}});
    CHECK(as_pairs(solve_actions(b)) == as_pairs(solve_actions(c)));
}

TEST_CASE("derivation spaces") {
    auto f2 = Field::make(2);
    CHECK(derivation_space(commutative(f2, 2)).dim() == 4);
    auto free1 = QuadAlgebra::make(f2, {"x1"}, {});
    const auto res = solve_actions(free1);
    REQUIRE(res.solutions.size() == 2);
    CHECK(res.solutions[0].rho_u.is_zero());
    CHECK(res.solutions[0].rho_w.is_zero());
    CHECK(res.solutions[1].rho_w == Matrix::identity(f2, 1));
    CHECK(res.inner_faithful_count() == 0);

    auto f3 = Field::make(3);
    // Skew relations with q = -1 only admit diagonal derivations, so u acts by zero.
    auto s = skew(f3, 3, 2);
    const auto sres = solve_actions(s);
    CHECK(sres.derivation_space_dim == 3);
    CHECK(sres.inner_faithful_count() == 0);
    CHECK(sres.solutions.size() == 27);
}

TEST_CASE("solver budget") {
    auto f = Field::make(3);
    auto free3 = QuadAlgebra::make(f, gen_names(3), {});
    try {
        solve_actions(free3, 1000);
        FAIL("expected BudgetExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BudgetExceeded);
    }
    CHECK_NOTHROW(solve_actions(QuadAlgebra::make(f, gen_names(1), {}), 9));
    CHECK_THROWS_AS(solve_actions(QuadAlgebra::make(f, gen_names(1), {}), 8), Error);
}

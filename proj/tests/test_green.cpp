#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hopfu/green.hpp"

using namespace hopfu;
using namespace hopfu::green;

namespace {

GreenElem elem(std::uint32_t p, std::initializer_list<std::pair<Label, std::int64_t>> terms) {
    GreenElem g(p);
    for (const auto& [lab, c] : terms) g.add_term(lab, c);
    return g;
}

// Spectral radius of a small non-negative matrix: ||A^(2^k)||^(1/2^k).
double spectral_radius(std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    double log_rho = 0, scale = 1;
    for (int k = 0; k < 50; ++k) {
        double norm = 0;
        for (auto& row : a)
            for (double v : row) norm = std::max(norm, v);
        if (norm == 0) return 0;
        for (auto& row : a)
            for (double& v : row) v /= norm;
        log_rho += std::log(norm) / scale;
        std::vector<std::vector<double>> sq(n, std::vector<double>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t m = 0; m < n; ++m) sq[i][j] += a[i][m] * a[m][j];
        a = std::move(sq);
        scale *= 2;
    }
    return std::exp(log_rho);
}

// Frobenius-Perron dimension of X from its definition: the supremum over sets of
// pairwise Hom-orthogonal bricks X_1..X_n of the spectral radius of the matrix
// dim Hom(X_i, X (x) X_j).  Every M(l,i) is a brick.
double fpdim_by_brick_sets(std::uint32_t p, const umod::UModule& x) {
    const auto f = x.field();
    std::vector<umod::UModule> bricks;
    for (std::uint32_t l = 1; l <= p; ++l)
        for (std::uint32_t i = 0; i < p; ++i) bricks.push_back(umod::standard_module(f, l, i));
    const std::size_t nb = bricks.size();
    std::vector<std::vector<std::size_t>> hom(nb, std::vector<std::size_t>(nb));
    std::vector<std::vector<std::size_t>> adj(nb, std::vector<std::size_t>(nb));
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
            hom[i][j] = umod::hom_dim(bricks[i], bricks[j]);
            adj[i][j] = umod::hom_dim(bricks[i], umod::tensor(x, bricks[j]));
        }
    double best = 0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << nb); ++mask) {
        std::vector<std::size_t> set;
        for (std::size_t i = 0; i < nb; ++i)
            if (mask >> i & 1) set.push_back(i);
        bool orthogonal = true;
        for (auto i : set)
            for (auto j : set)
                if (i != j && hom[i][j] != 0) orthogonal = false;
        if (!orthogonal) continue;
        std::vector<std::vector<double>> a(set.size(), std::vector<double>(set.size()));
        for (std::size_t r = 0; r < set.size(); ++r)
            for (std::size_t c = 0; c < set.size(); ++c) a[r][c] = static_cast<double>(adj[set[r]][set[c]]);
        best = std::max(best, spectral_radius(a));
    }
    return best;
}

}  // namespace

TEST_CASE("f_n polynomials") {
    CHECK(f_poly(1) == IntPoly2{{{0, 0}, 1}});
    CHECK(f_poly(2) == IntPoly2{{{0, 1}, 1}});
    CHECK(f_poly(3) == IntPoly2{{{0, 2}, 1}, {{1, 0}, -1}});
    CHECK(f_poly(5) == IntPoly2{{{0, 4}, 1}, {{1, 2}, -3}, {{2, 0}, 1}});
    CHECK(format_poly(f_poly(5)) == "z^4 - 3yz^2 + y^2");
    for (std::uint32_t n = 1; n <= 20; ++n) {
        CHECK(f_poly_closed(n) == f_poly_recursive(n));
        std::uint32_t top = 0;
        for (const auto& [e, c] : f_poly(n)) top = std::max(top, e.second);
        CHECK(top == n - 1);
    }
}

TEST_CASE("basis products") {
    CHECK(basis_product(3, {2, 0}, {2, 0}) == elem(3, {{{1, 1}, 1}, {{3, 0}, 1}}));
    CHECK(basis_product(5, {2, 0}, {3, 0}) == elem(5, {{{2, 1}, 1}, {{4, 0}, 1}}));
    CHECK(basis_product(2, {2, 0}, {2, 1}) == elem(2, {{{2, 1}, 1}, {{2, 0}, 1}}));
    CHECK(basis_product(3, {2, 0}, {2, 0}).to_string() == "M(3,0) + S_1");
    CHECK_THROWS_AS(basis_product(3, {4, 0}, {1, 0}), Error);
    CHECK_THROWS_AS(basis_product(3, {1, 3}, {1, 0}), Error);
    for (std::uint32_t p : {2u, 3u, 5u, 7u})
        for (std::uint32_t l = 1; l <= p; ++l)
            for (std::uint32_t m = 1; m <= p; ++m)
                for (std::uint32_t r = 0; r < p; ++r) {
                    auto g = basis_product(p, {l, r}, {m, (r * 3 + 1) % p});
                    CHECK(g.dim() == static_cast<std::int64_t>(l * m));
                    for (const auto& [lab, c] : g.coeffs()) CHECK(c > 0);
                }
}

TEST_CASE("closed forms agree with brute-force decomposition for every pair") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto f = gf::Field::make(p);
        for (std::uint32_t l = 1; l <= p; ++l)
            for (std::uint32_t r = 0; r < p; ++r)
                for (std::uint32_t m = 1; m <= p; ++m)
                    for (std::uint32_t r2 = 0; r2 < p; ++r2) {
                        auto brute = umod::decompose(umod::tensor(umod::standard_module(f, l, r), umod::standard_module(f, m, r2)));
                        CHECK(GreenElem::from_decomposition(brute) == basis_product(p, {l, r}, {m, r2}));
                    }
    }
}

TEST_CASE("ring axioms") {
    const auto one = GreenElem::one(3);
    const auto g = elem(3, {{{2, 1}, 2}, {{3, 0}, -1}});
    CHECK(mul(one, g) == g);
    CHECK(power(GreenElem::basis(3, {1, 1}), 3) == one);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto x = GreenElem::basis(p, {2, 0});
        auto a = GreenElem::basis(p, {1, 1});
        auto mp = GreenElem::basis(p, {p, 0});
        CHECK(mul(x, mp) == mul(a + GreenElem::one(p), mp));
    }
    CHECK_THROWS_AS(mul(GreenElem::one(2), GreenElem::one(3)), Error);
}

TEST_CASE("commutativity, associativity and dimension on random triples") {
    std::mt19937_64 rng(31337);
    int triples = 0;
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto pick = [&] { return Label{static_cast<std::uint32_t>(1 + rng() % p), static_cast<std::uint32_t>(rng() % p)}; };
        for (int t = 0; t < 200; ++t, ++triples) {
            auto a = GreenElem::basis(p, pick());
            auto b = GreenElem::basis(p, pick());
            auto c = GreenElem::basis(p, pick());
            CHECK(mul(a, b) == mul(b, a));
            CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
            CHECK(mul(a, b).dim() == a.dim() * b.dim());
        }
    }
    CHECK(triples >= 500);
}

TEST_CASE("Chebyshev classes") {
    CHECK(chebyshev_class(3, 1) == GreenElem::one(3));
    CHECK(chebyshev_class(3, 2) == GreenElem::basis(3, {2, 0}));
    CHECK(chebyshev_class(3, 3) == GreenElem::basis(3, {3, 0}));
    CHECK(chebyshev_class(5, 5) == GreenElem::basis(5, {5, 0}));
    CHECK_THROWS_AS(chebyshev_class(3, 4), Error);
    // u_l = f_l(a, x)
    for (std::uint32_t p : {2u, 3u, 5u})
        for (std::uint32_t l = 1; l <= p; ++l)
            CHECK(evaluate(f_poly(l), GreenElem::basis(p, {1, 1}), GreenElem::basis(p, {2, 0})) ==
                  GreenElem::basis(p, {l, 0}));
}

TEST_CASE("presentation check") {
    for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
        auto rep = presentation_check(p);
        CHECK(rep.a_pow_p_is_one);
        CHECK(rep.x_minus_a_minus_one_kills_u_p);
        CHECK(rep.monomials_give_basis);
    }
    // The a-orbit of u_1 is the set of simples.
    GreenElem ar = GreenElem::one(5);
    for (std::uint32_t r = 0; r < 5; ++r) {
        CHECK(ar == GreenElem::basis(5, {1, r}));
        ar = mul(ar, GreenElem::basis(5, {1, 1}));
    }
}

TEST_CASE("fpdim") {
    for (std::uint32_t l = 1; l <= 2; ++l)
        for (std::uint32_t i = 0; i < 2; ++i) CHECK(fpdim(2, {{{l, i}, 1}}) == doctest::Approx(l));
    CHECK(fpdim(3, {{{1, 0}, 1}}) == doctest::Approx(1.0));
    CHECK(fpdim(3, {{{1, 1}, 1}}) == doctest::Approx(1.0));
    // alpha = 1, beta = 1 (a_12), gamma = 0
    CHECK(fpdim(3, {{{1, 2}, 1}}) == doctest::Approx((1 + std::sqrt(5.0)) / 2));
    const double expected = (3 + std::sqrt(13.0)) / 2;
    CHECK(std::abs(fpdim(3, {{{3, 0}, 1}}) - expected) <= 1e-12 * expected);
    CHECK_THROWS_AS(fpdim(5, {{{1, 0}, 1}}), Error);
    try {
        fpdim(5, {});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsupportedCharacteristic);
    }
}

TEST_CASE("fpdim closed formulas agree with the brick-set definition") {
    for (std::uint32_t p : {2u, 3u}) {
        auto f = gf::Field::make(p);
        for (std::uint32_t l = 1; l <= p; ++l)
            for (std::uint32_t i = 0; i < p; ++i) {
                const double oracle = fpdim_by_brick_sets(p, umod::standard_module(f, l, i));
                CHECK(fpdim(p, {{{l, i}, 1}}) == doctest::Approx(oracle).epsilon(1e-9));
            }
    }
    auto f3 = gf::Field::make(3);
    auto x = umod::direct_sum(umod::standard_module(f3, 2, 1), umod::standard_module(f3, 1, 0));
    CHECK(fpdim(3, {{{2, 1}, 1}, {{1, 0}, 1}}) == doctest::Approx(fpdim_by_brick_sets(3, x)).epsilon(1e-9));
}

TEST_CASE("spectral radius of multiplication is data next to fpdim") {
    // Multiplication by a simple permutes the basis.
    CHECK(multiplication_spectral_radius(GreenElem::basis(3, {1, 1})) == doctest::Approx(1.0));
    // [M(p,0)] [M(p,i)] = p [projectives], so the radius on the projective block is p.
    CHECK(multiplication_spectral_radius(GreenElem::basis(3, {3, 0})) == doctest::Approx(3.0));
    CHECK(multiplication_spectral_radius(GreenElem::basis(2, {2, 1})) == doctest::Approx(2.0));
}

TEST_CASE("formatting") {
    CHECK(elem(3, {{{2, 1}, 2}, {{1, 0}, -1}}).to_string() == "2 M(2,1) - S_0");
    CHECK(GreenElem(2).to_string() == "0");
}

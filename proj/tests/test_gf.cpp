#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hopfu/gf.hpp"

using namespace hopfu;
using namespace hopfu::gf;

namespace {

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Matrix m(f, r, c);
    std::uniform_int_distribution<Elem> d(0, f.order() - 1);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, d(rng));
    return m;
}

// Independent dimension count by brute enumeration of all vectors, for tiny spaces.
std::size_t count_vectors_in_span(const Matrix& gens) {
    const Field& f = gens.field();
    const std::size_t n = gens.rows();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= f.order();
    std::vector<std::vector<Elem>> seen;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<Elem> v(gens.cols(), 0);
        std::size_t c = code;
        for (std::size_t i = 0; i < n; ++i) {
            axpy(f, v, static_cast<Elem>(c % f.order()), gens.row(i));
            c /= f.order();
        }
        seen.push_back(std::move(v));
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    return seen.size();
}

}  // namespace

TEST_CASE("prime fields") {
    auto f2 = Field::make(2);
    CHECK(f2.order() == 2);
    CHECK(f2.is_prime());
    auto f3 = Field::make(3);
    CHECK(f3.add(2, 2) == 1);
    CHECK(f3.mul(2, 2) == 1);
    CHECK(f3.inv(2) == 2);
    CHECK_THROWS_AS(Field::make(4), Error);
    try {
        Field::make(9);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonPrime);
    }
}

TEST_CASE("F_4 default modulus is the only irreducible quadratic over F_2") {
    // t^2 + b t + c is irreducible over F_2 iff it has no root in F_2.
    std::vector<std::vector<std::uint32_t>> irreducible;
    for (std::uint32_t c = 0; c < 2; ++c)
        for (std::uint32_t b = 0; b < 2; ++b) {
            bool root = false;
            for (std::uint32_t x = 0; x < 2; ++x) root |= (x * x + b * x + c) % 2 == 0;
            if (!root) irreducible.push_back({c, b, 1});
        }
    REQUIRE(irreducible.size() == 1);
    auto f4 = Field::make(2, 2);
    CHECK(f4.modulus() == irreducible.front());
    CHECK(f4.describe() == "F_4 = F_2[t]/(t^2+t+1)");
    auto f9 = Field::make(3, 2);
    CHECK(f9.modulus() == std::vector<std::uint32_t>{1, 0, 1});
}

TEST_CASE("reducible modulus is rejected") {
    try {
        Field::make(2, 2, std::vector<std::uint32_t>{1, 0, 1});  // t^2+1 = (t+1)^2
        FAIL("expected ReducibleModulus");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ReducibleModulus);
    }
}

TEST_CASE("multiplication in F_4 matches polynomial arithmetic mod t^2+t+1") {
    auto f = Field::make(2, 2);
    // t * t = t + 1 ; codes: t = 2, t+1 = 3
    CHECK(f.mul(2, 2) == 3);
    CHECK(f.mul(2, 3) == 1);
    CHECK(f.add(2, 3) == 1);
    CHECK(f.format(3) == "1+t");
}

TEST_CASE("field axioms on random triples") {
    std::mt19937_64 rng(7);
    for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}}) {
        auto f = Field::make(p, k);
        std::uniform_int_distribution<Elem> d(0, f.order() - 1);
        for (int t = 0; t < 300; ++t) {
            Elem a = d(rng), b = d(rng), c = d(rng);
            CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            CHECK(f.add(a, f.neg(a)) == 0);
            CHECK(f.mul(a, b) == f.mul(b, a));
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
        }
        for (Elem a = 0; a < f.order(); ++a) CHECK(f.pow(a, f.order()) == a);
    }
}

TEST_CASE("rref examples") {
    auto f3 = Field::make(3);
    auto id = rref(Matrix::identity(f3, 3));
    CHECK(id.rank == 3);
    CHECK(id.pivots == std::vector<std::size_t>{0, 1, 2});
    CHECK(id.reduced == Matrix::identity(f3, 3));
    auto z = rref(Matrix(f3, 2, 2));
    CHECK(z.rank == 0);
    CHECK(z.pivots.empty());
    auto f5 = Field::make(5);
    CHECK(rank(Matrix::from_ints(f5, {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("rref is idempotent and rank is transpose invariant") {
    std::mt19937_64 rng(11);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto f = Field::make(p);
        for (int t = 0; t < 200; ++t) {
            auto m = random_matrix(f, 1 + rng() % 6, 1 + rng() % 6, rng);
            if (rng() % 2) m.set(0, 0, 0);
            auto e = rref(m);
            CHECK(rref(e.reduced).reduced == e.reduced);
            CHECK(e.rank == rank(m.transpose()));
        }
    }
}

TEST_CASE("kernel examples") {
    auto f3 = Field::make(3);
    CHECK(kernel(Matrix::identity(f3, 4)).dim() == 0);
    CHECK(kernel(Matrix(f3, 4, 4)) == Subspace::full(f3, 4));
    // subdiagonal u on M(3,0): kernel is e_3
    auto u = Matrix::from_ints(f3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
    auto k = kernel(u);
    CHECK(k.dim() == 1);
    CHECK(k.basis() == Matrix::from_ints(f3, {{0, 0, 1}}));
}

TEST_CASE("kernel vectors are annihilated and dim = cols - rank") {
    std::mt19937_64 rng(3);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto f = Field::make(p);
        for (int t = 0; t < 200; ++t) {
            auto m = random_matrix(f, 1 + rng() % 5, 1 + rng() % 6, rng);
            auto k = kernel(m);
            CHECK(k.dim() == m.cols() - rank(m));
            for (std::size_t r = 0; r < k.dim(); ++r) {
                auto v = m.apply(k.basis().row(r));
                CHECK(std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; }));
            }
        }
    }
}

TEST_CASE("subspace examples") {
    auto f = Field::make(5);
    auto a = Subspace::span(Matrix::from_ints(f, {{1, 2, 0}, {0, 1, 1}}));
    CHECK(intersect(a, a) == a);
    CHECK(sum(a, a) == a);
    auto l1 = Subspace::span(Matrix::from_ints(f, {{1, 0}}));
    auto l2 = Subspace::span(Matrix::from_ints(f, {{1, 1}}));
    CHECK(intersect(l1, l2).dim() == 0);
    CHECK(sum(l1, l2).dim() == 2);
    CHECK_THROWS_AS(intersect(l1, a), Error);
    CHECK(contains(a, std::vector<Elem>{1, 3, 1}));
    CHECK_FALSE(contains(a, std::vector<Elem>{1, 0, 0}));
}

TEST_CASE("dimension formula and span size on random subspaces") {
    std::mt19937_64 rng(2024);
    int cases = 0;
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto f = Field::make(p);
        for (int t = 0; t < 400; ++t, ++cases) {
            const std::size_t n = 1 + rng() % 6;
            auto a = Subspace::span(random_matrix(f, rng() % (n + 1), n, rng));
            auto b = Subspace::span(random_matrix(f, rng() % (n + 1), n, rng));
            auto i = intersect(a, b);
            auto s = sum(a, b);
            CHECK(i.dim() + s.dim() == a.dim() + b.dim());
            CHECK(a.contains(i));
            CHECK(b.contains(i));
            CHECK(s.contains(a));
            CHECK(s.contains(b));
            if (p <= 3 && n <= 4 && a.dim() > 0) {
                std::size_t expected = 1;
                for (std::size_t d = 0; d < a.dim(); ++d) expected *= p;
                CHECK(count_vectors_in_span(a.basis()) == expected);
            }
        }
    }
    CHECK(cases >= 1000);
}

TEST_CASE("F_9 linear algebra") {
    auto f = Field::make(3, 2);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        auto m = random_matrix(f, 3, 4, rng);
        auto k = kernel(m);
        CHECK(k.dim() == 4 - rank(m));
        for (std::size_t r = 0; r < k.dim(); ++r) {
            auto v = m.apply(k.basis().row(r));
            CHECK(std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; }));
        }
    }
}

TEST_CASE("matrix products, kron and powers") {
    auto f = Field::make(3);
    auto a = Matrix::from_ints(f, {{1, 2}, {0, 1}});
    auto b = Matrix::from_ints(f, {{0, 1}, {1, 0}});
    CHECK(a * b == Matrix::from_ints(f, {{2, 1}, {1, 0}}));
    CHECK(a.pow(3) == Matrix::identity(f, 2));
    auto k = kron(a, b);
    CHECK(k.rows() == 4);
    CHECK(k(0, 1) == 1);
    CHECK(k(0, 3) == 2);
    CHECK(k(1, 3) == 0);
    CHECK(kron(Matrix::identity(f, 2), Matrix::identity(f, 3)) == Matrix::identity(f, 6));
}

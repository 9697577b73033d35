#include <doctest.h>

#include <random>

#include "kerovlab/linear_solve.hpp"

using namespace kerovlab;

namespace {

IntegerMatrix random_matrix(std::mt19937& rng, std::size_t n, int spread) {
    std::uniform_int_distribution<int> entry(-spread, spread);
    IntegerMatrix m(n, std::vector<Integer>(n));
    for (auto& row : m)
        for (auto& x : row) x = entry(rng);
    return m;
}

bool solves(const IntegerMatrix& m, const std::vector<Integer>& rhs, const std::vector<Rational>& x) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < x.size(); ++j) s += m[i][j] * x[j];
        if (s != rhs[i]) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("linear_solve") {
    TEST_CASE("default prime is 2^62 - 57 and prime") {
        const Integer p(std::to_string(ModularRankSelector::default_prime()));
        CHECK(p == (Integer(1) << 62) - 57);
        CHECK(mpz_probab_prime_p(p.get_mpz_t(), 40) > 0);
    }

    TEST_CASE("rank selector keeps only independent rows") {
        ModularRankSelector sel(3);
        const std::vector<Integer> a{1, 2, 3}, b{2, 4, 6}, c{0, 1, 1}, d{1, 3, 4}, e{5, 0, -1};
        CHECK(sel.try_add(a));
        CHECK_FALSE(sel.try_add(b));
        CHECK(sel.try_add(c));
        CHECK_FALSE(sel.try_add(d));
        CHECK(sel.try_add(e));
        CHECK(sel.rank() == 3);
    }

    TEST_CASE("Bareiss and multimodular agree on random systems") {
        std::mt19937 rng(11);
        for (std::size_t n : {1u, 2u, 5u, 12u, 30u}) {
            const IntegerMatrix m = random_matrix(rng, n, 1000);
            std::vector<Integer> rhs(n);
            std::uniform_int_distribution<int> entry(-10000, 10000);
            for (auto& x : rhs) x = entry(rng);
            const std::vector<Rational> exact = bareiss_solve(m, rhs);
            CHECK(solves(m, rhs, exact));
            const auto modular = multimodular_solve(m, rhs);
            REQUIRE(modular.has_value());
            CHECK(*modular == exact);
        }
    }

    TEST_CASE("singular systems are rejected") {
        IntegerMatrix m{{1, 2}, {2, 4}};
        CHECK_THROWS_AS(bareiss_solve(m, {1, 2}), Error);
        CHECK_FALSE(multimodular_solve(m, {1, 2}).has_value());
    }

    TEST_CASE("overdetermined analysis reports rank and residuals") {
        // x + y = 2, x - y = 0, 2x = 2 (consistent), then x = 5 (not).
        std::vector<std::vector<Rational>> m{{1, 1}, {1, -1}, {2, 0}, {1, 0}};
        std::vector<Rational> rhs{2, 0, 2, 5};
        const SystemAnalysis a = analyze_system(m, rhs, 2);
        CHECK(a.rank == 2);
        CHECK_FALSE(a.consistent);
        CHECK(a.residual_rows == std::vector<std::size_t>{3});
        rhs[3] = 1;
        const SystemAnalysis b = analyze_system(m, rhs, 2);
        CHECK(b.consistent);
        CHECK(b.solution == std::vector<Rational>{1, 1});
    }

    TEST_CASE("free variables are set to zero") {
        std::vector<std::vector<Rational>> m{{1, 1, 0}, {0, 0, 1}};
        const SystemAnalysis a = analyze_system(m, {3, Rational(1, 2)}, 3);
        CHECK(a.rank == 2);
        CHECK(a.consistent);
        CHECK(a.solution[0] + a.solution[1] == 3);
        CHECK(a.solution[2] == Rational(1, 2));
        CHECK((a.solution[0] == 0 || a.solution[1] == 0));
    }
}

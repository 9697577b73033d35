#include <doctest.h>

#include "kerovlab/cumulants.hpp"
#include "oracles.hpp"

using namespace kerovlab;

TEST_SUITE("cumulant_engine") {
    TEST_CASE("interlacing pairs of small diagrams") {
        const InterlacingPair one = diagram_to_interlacing({1});
        CHECK(one.x == std::vector<int>{-1, 1});
        CHECK(one.y == std::vector<int>{0});
        CHECK(one.center() == 0);
        const InterlacingPair hook = diagram_to_interlacing({2, 1});
        CHECK(hook.x == std::vector<int>{-2, 0, 2});
        CHECK(hook.y == std::vector<int>{-1, 1});
        const InterlacingPair three_one = diagram_to_interlacing({3, 1});
        CHECK(three_one.x == std::vector<int>{-2, 0, 3});
        CHECK(three_one.y == std::vector<int>{-1, 2});
        CHECK_THROWS_AS(diagram_to_interlacing(Partition()), Error);
    }

    TEST_CASE("interlacing agrees with cell-by-cell corners") {
        for (int n = 1; n <= 12; ++n)
            for (const auto& lambda : enumerate_partitions(n)) {
                std::vector<int> x, y;
                oracle::corners(lambda, x, y);
                const InterlacingPair pair = diagram_to_interlacing(lambda);
                CHECK(pair.x == x);
                CHECK(pair.y == y);
                CHECK(pair.is_interlacing());
                CHECK(pair.center() == 0);
                CHECK(pair.x.front() == -static_cast<int>(lambda.length()));
                CHECK(pair.x.back() == lambda.largest());
            }
    }

    TEST_CASE("resolvent expansions") {
        // G = u/(1-u^2) for the single box.
        CHECK(resolvent_series({{-1, 1}, {0}}, 4) == std::vector<Rational>{1, 0, 1, 0, 1});
        CHECK(resolvent_series(diagram_to_interlacing({2, 1}), 3) == std::vector<Rational>{1, 0, 3, 0});
        CHECK(resolvent_series({{-1, 2}, {1}}, 3) == std::vector<Rational>{1, 0, 2, 2});
    }

    TEST_CASE("resolvent coefficients are transition measure moments") {
        for (int n = 1; n <= 10; ++n)
            for (const auto& lambda : enumerate_partitions(n))
                CHECK(resolvent_series(diagram_to_interlacing(lambda), 9) == oracle::transition_moments(lambda, 9));
    }

    TEST_CASE("free cumulants of small diagrams") {
        const CumulantVector one = free_cumulants({1}, 4);
        CHECK(one[2] == 1);
        CHECK(one[3] == 0);
        CHECK(one[4] == -1);
        const CumulantVector two = free_cumulants({2}, 3);
        CHECK(two[2] == 2);
        CHECK(two[3] == 2);
        const CumulantVector hook = free_cumulants({2, 1}, 4);
        CHECK(hook[2] == 3);
        CHECK(hook[3] == 0);
        CHECK(hook[4] == -6);
        CHECK(hook[1] == 0);
        CHECK(hook[0] == 0);
    }

    TEST_CASE("series inversion agrees with the moment-cumulant recurrence") {
        for (int n = 1; n <= 10; ++n)
            for (const auto& lambda : enumerate_partitions(n)) {
                const std::vector<Rational> want = oracle::free_cumulants_from_moments(oracle::transition_moments(lambda, 10), 10);
                const CumulantVector got = free_cumulants(lambda, 10);
                for (int k = 2; k <= 10; ++k) CHECK(got[k] == want[static_cast<std::size_t>(k)]);
            }
    }

    TEST_CASE("R_2 is the size and conjugation flips odd cumulants") {
        for (int n = 1; n <= 12; ++n)
            for (const auto& lambda : enumerate_partitions(n)) {
                const CumulantVector a = free_cumulants(lambda, 10), b = free_cumulants(conjugate(lambda), 10);
                CHECK(a[2] == n);
                for (int k = 2; k <= 10; ++k) CHECK(b[k] == (k % 2 == 0 ? a[k] : -a[k]));
            }
    }

    TEST_CASE("C and Q values") {
        CHECK(c_values({1}, 2)[2] == 1);
        const auto c = c_values({2, 1}, 4);
        CHECK(c[4] == -9);
        CHECK(c[1] == 0);
        CHECK(c[0] == 1);
        const auto q = q_values({2}, 3);
        CHECK(q[2] == 2);
        CHECK(q[3] == 4);
        CHECK(q[1] == 0);
        CHECK(q_values({2, 1}, 4)[4] == Rational(-27, 2));
    }
}

#include <doctest.h>

#include <random>

#include "kerovlab/identities.hpp"
#include "kerovlab/sym_func.hpp"
#include "oracles.hpp"

using namespace kerovlab;

namespace {

constexpr Basis kBases[] = {Basis::m, Basis::p, Basis::e, Basis::h};

SymFunc random_symfunc(std::mt19937& rng, Basis basis, int max_degree) {
    std::uniform_int_distribution<int> coef(-9, 9), weight(0, max_degree);
    SymFunc f(basis);
    for (int t = 0; t < 5; ++t) {
        const auto parts = enumerate_partitions(weight(rng));
        std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
        f.add_term(parts[pick(rng)], coef(rng));
    }
    return f;
}

std::vector<int> random_vector(std::mt19937& rng, int max_weight) {
    std::uniform_int_distribution<int> len(1, 4), val(-3, 4);
    std::vector<int> v(static_cast<std::size_t>(len(rng)));
    for (int& x : v) x = val(rng);
    (void)max_weight;
    return v;
}

}  // namespace

TEST_SUITE("sym_func") {
    TEST_CASE("classical conversions") {
        const SymFunc e2 = convert(SymFunc::monomial(Basis::e, {2}), Basis::p);
        SymFunc want(Basis::p);
        want.add_term({1, 1}, Rational(1, 2));
        want.add_term({2}, Rational(-1, 2));
        CHECK(e2.terms() == want.terms());

        CHECK(convert(SymFunc::monomial(Basis::p, {2}), Basis::m).terms() == SymFunc::monomial(Basis::m, {2}).terms());

        SymFunc h2e(Basis::e);
        h2e.add_term({1, 1}, 1);
        h2e.add_term({2}, -1);
        CHECK(convert(SymFunc::monomial(Basis::h, {2}), Basis::e).terms() == h2e.terms());
    }

    TEST_CASE("products") {
        CHECK(multiply(SymFunc::monomial(Basis::p, {2}), SymFunc::monomial(Basis::p, {1})).terms() ==
              SymFunc::monomial(Basis::p, {2, 1}).terms());
        SymFunc square = convert(multiply(SymFunc::monomial(Basis::e, {1}), SymFunc::monomial(Basis::e, {1})), Basis::m);
        SymFunc want(Basis::m);
        want.add_term({2}, 1);
        want.add_term({1, 1}, 2);
        CHECK(square.terms() == want.terms());
        const SymFunc f = SymFunc::monomial(Basis::m, {3, 1}, Rational(2, 7));
        CHECK(multiply(SymFunc::constant(1, Basis::m), f) == f);
    }

    TEST_CASE("evaluation examples") {
        CHECK(evaluate_at_vector(SymFunc::monomial(Basis::m, {2, 1}), {3, 1}) == 12);
        CHECK(evaluate_at_vector(SymFunc::monomial(Basis::p, {2}), {2, 2}) == 8);
        CHECK(evaluate_at_vector(SymFunc::monomial(Basis::m, {1, 1, 1}), {2, 1}) == 0);
    }

    TEST_CASE("scalar specializations") {
        CHECK(p_scalar_specialize({2, 1}, 3) == 9);
        CHECK(p_scalar_specialize(Partition(), Rational(5, 3)) == 1);
        CHECK(p_scalar_specialize({5}, -2) == -2);
        CHECK(m_scalar_specialize({1, 1}, 3) == 3);
        CHECK(m_scalar_specialize({2}, Rational(7, 2)) == Rational(7, 2));
        CHECK(m_scalar_specialize({2, 1}, 2) == 2);
        // The alphabet 1 + 1 is the vector (1, 1).
        CHECK(evaluate_at_vector(SymFunc::monomial(Basis::m, {2, 1}), {1, 1}) == 2);
    }

    TEST_CASE("phi hat") {
        CHECK(phi_hat(1, 0, 0, 5).terms() == SymFunc::constant(Rational(1, 2)).terms());
        SymFunc want(Basis::p);
        want.add_term(Partition(), Rational(1, 3));
        want.add_term({2}, Rational(1, 12));
        CHECK(phi_hat(0, 0, 1, 2).terms() == want.terms());
        const Rational at2 = evaluate_at_vector(phi_hat(0, 0, 1, 2), {2});
        CHECK(at2 == Rational(2, 3));
        CHECK(6 * at2 == 4);
    }

    TEST_CASE("every basis element evaluates like its definition") {
        const std::vector<std::vector<int>> vectors = {{1}, {2, 1}, {3, -1, 2}, {1, 1, 1, 1}, {4, 0, -2, 1, 3}};
        for (Basis from : kBases)
            for (int n = 0; n <= 7; ++n)
                for (const auto& mu : enumerate_partitions(n))
                    for (Basis to : kBases) {
                        const SymFunc f = convert(SymFunc::monomial(from, mu), to);
                        for (const auto& v : vectors)
                            CHECK(oracle::symfunc_at(f, v) == oracle::basis_element_at(from, mu, v));
                    }
    }

    TEST_CASE("round trips through every basis") {
        for (const auto& check : check_basis_roundtrips(8)) {
            INFO(check.name << " n=" << check.n << " " << check.detail);
            CHECK(check.pass);
        }
    }

    TEST_CASE("evaluation is a ring homomorphism") {
        std::mt19937 rng(7);
        for (int trial = 0; trial < 40; ++trial) {
            const SymFunc f = random_symfunc(rng, kBases[trial % 4], 6);
            const SymFunc g = random_symfunc(rng, kBases[(trial / 4) % 4], 6);
            const std::vector<int> v = random_vector(rng, 12);
            Partition as_partition;
            std::vector<int> positive;
            for (int x : v)
                if (x > 0) positive.push_back(x);
            as_partition = Partition::from_unsorted(positive);
            CHECK(evaluate_at_vector(multiply(f, g), as_partition) ==
                  evaluate_at_vector(f, as_partition) * evaluate_at_vector(g, as_partition));
            CHECK(oracle::symfunc_at(multiply(f, g), v) == oracle::symfunc_at(f, v) * oracle::symfunc_at(g, v));
            CHECK(oracle::symfunc_at(f + g, v) == oracle::symfunc_at(f, v) + oracle::symfunc_at(g, v));
        }
    }

    TEST_CASE("equality ignores the basis") {
        const SymFunc f = SymFunc::monomial(Basis::h, {3, 1}, Rational(-2, 5));
        for (Basis b : kBases) CHECK(convert(f, b) == f);
        CHECK_FALSE(f == SymFunc::monomial(Basis::h, {3, 1}));
    }

    TEST_CASE("serialization round trip") {
        SymFunc f(Basis::m);
        f.add_term({4}, Rational(3, 5760));
        f.add_term({2, 1, 1}, -4);
        f.add_term(Partition(), Rational(1, 2));
        CHECK(SymFunc::from_json(f.to_json()).terms() == f.terms());
        CHECK(f.to_string() == "1/1920*m[4] - 4*m[2,1,1] + 1/2*m[]");
        CHECK(f.max_degree() == 4);
        CHECK(f.homogeneous_component(4).terms().size() == 2);
        CHECK(SymFunc(Basis::e).to_string() == "0");
    }

    TEST_CASE("triple sums over e agree with their p and h forms") {
        for (const auto& check : check_triple_identities(10)) {
            INFO(check.name << " n=" << check.n);
            CHECK(check.pass);
        }
    }
}

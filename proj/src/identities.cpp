#include "kerovlab/identities.hpp"

#include <random>

#include "kerovlab/kerov.hpp"

namespace kerovlab {

nlohmann::ordered_json identity_checks_json(const std::vector<IdentityCheck>& checks) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json item = {{"name", c.name}, {"n", c.n}, {"pass", c.pass}};
        if (!c.detail.empty()) item["detail"] = c.detail;
        out.push_back(std::move(item));
    }
    return out;
}

SymFunc triple_e_sum(int n, bool weighted) {
    SymFunc out(Basis::e);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) {
            const int k = n - i - j;
            out.add_term(Partition::from_unsorted({i, j, k}), weighted ? Rational(i * i) : Rational(1));
        }
    return out;
}

SymFunc triple_e_sum_power_form(int n, bool weighted) {
    SymFunc out(Basis::p);
    for (const Partition& mu : enumerate_partitions(n)) {
        const int len = static_cast<int>(mu.length());
        const int sign = (n - len) % 2 == 0 ? 1 : -1;
        Rational coef(sign);
        if (weighted) {
            Integer three_pow;
            mpz_ui_pow_ui(three_pow.get_mpz_t(), 3, static_cast<unsigned long>(len));
            coef *= Rational(three_pow * (n * n + 2 * power_sum_at(mu, 2))) / 9;
        } else {
            Integer three_pow;
            mpz_ui_pow_ui(three_pow.get_mpz_t(), 3, static_cast<unsigned long>(len));
            coef *= three_pow;
        }
        out.add_term(mu, coef / z_factor(mu));
    }
    return out;
}

SymFunc triple_e_sum_complete_form(int n, bool weighted) {
    SymFunc out(Basis::h);
    for (const Partition& mu : enumerate_partitions(n)) {
        const int len = static_cast<int>(mu.length());
        const int sign = (n - len) % 2 == 0 ? 1 : -1;
        Rational coef = Rational(sign * factorial(len + 2)) / multiplicity_factorial(mu);
        coef *= weighted ? Rational(n * n + power_sum_at(mu, 2)) / 12 : Rational(1, 2);
        out.add_term(mu, coef);
    }
    return out;
}

std::vector<IdentityCheck> check_triple_identities(int n_max) {
    std::vector<IdentityCheck> checks;
    for (int n = 1; n <= n_max; ++n)
        for (bool weighted : {false, true}) {
            const SymFunc lhs = triple_e_sum(n, weighted);
            const std::string suffix = weighted ? "-weighted" : "";
            checks.push_back({"duality" + suffix, n, lhs == triple_e_sum_power_form(n, weighted), ""});
            checks.push_back({"complete" + suffix, n, lhs == triple_e_sum_complete_form(n, weighted), ""});
        }
    return checks;
}

std::vector<IdentityCheck> check_weighted_triple_sums(int n_max, int draws, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> numer(-50, 50), denom(1, 12);
    std::vector<IdentityCheck> checks;
    for (int n = 0; n <= n_max; ++n)
        for (int d = 0; d < draws; ++d) {
            Rational a(numer(rng), denom(rng)), b(numer(rng), denom(rng)), c(numer(rng), denom(rng));
            a.canonicalize();
            b.canonicalize();
            c.canonicalize();
            const CumulantPolynomial direct = brute_triple_sum(a, b, c, n);
            const std::string params = "a=" + to_string(a) + " b=" + to_string(b) + " c=" + to_string(c);
            for (Family family : {Family::R, Family::Q}) {
                const bool ok = change_generators(direct, family) == weighted_triple_sum(a, b, c, n, family);
                checks.push_back({std::string("triple-sum-") + family_letter(family), n, ok, ok ? "" : params});
            }
        }
    return checks;
}

std::vector<IdentityCheck> check_basis_roundtrips(int n_max) {
    std::vector<IdentityCheck> checks;
    for (Basis from : {Basis::m, Basis::e, Basis::h, Basis::p})
        for (int n = 0; n <= n_max; ++n) {
            bool ok = true;
            std::string detail;
            for (const Partition& mu : enumerate_partitions(n)) {
                const SymFunc f = SymFunc::monomial(from, mu);
                for (Basis via : {Basis::m, Basis::e, Basis::h, Basis::p}) {
                    const SymFunc back = convert(convert(f, via), from);
                    if (back.terms() != f.terms()) {
                        ok = false;
                        detail = std::string(1, basis_letter(from)) + "[" + mu.to_string() + "] via " + basis_letter(via);
                    }
                }
            }
            checks.push_back({std::string("roundtrip-") + basis_letter(from), n, ok, detail});
        }
    return checks;
}

}  // namespace kerovlab

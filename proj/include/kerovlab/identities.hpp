#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "kerovlab/sym_func.hpp"

namespace kerovlab {

struct IdentityCheck {
    std::string name;
    int n = 0;
    bool pass = false;
    std::string detail;
};

nlohmann::ordered_json identity_checks_json(const std::vector<IdentityCheck>& checks);

/// sum over i+j+k = n of e_i e_j e_k, or of i^2 e_i e_j e_k when weighted.
SymFunc triple_e_sum(int n, bool weighted);
/// The same sums written over p_mu (duality form).
SymFunc triple_e_sum_power_form(int n, bool weighted);
/// The same sums written over h_mu.
SymFunc triple_e_sum_complete_form(int n, bool weighted);

/// Both triple-sum identities, plain and weighted, for 1 <= n <= n_max.
std::vector<IdentityCheck> check_triple_identities(int n_max);

/// Closed R- and Q-forms of sum (a + b i + c i^2) C_i C_j C_k against the
/// direct expansion, for `draws` random (a, b, c) per n <= n_max.
std::vector<IdentityCheck> check_weighted_triple_sums(int n_max, int draws, std::uint64_t seed = 20240607);

/// m/e/h/p round trips for every basis element of degree <= n_max.
std::vector<IdentityCheck> check_basis_roundtrips(int n_max);

}  // namespace kerovlab

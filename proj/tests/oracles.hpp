#pragma once
// Slow, direct reference computations used to cross-check the library.

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "kerovlab/partition.hpp"
#include "kerovlab/sym_func.hpp"

namespace oracle {

using kerovlab::Integer;
using kerovlab::Partition;
using kerovlab::Rational;

/// Number of partitions of n by Euler's pentagonal recurrence.
inline Integer partition_count(int n) {
    std::vector<Integer> p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = 1;
    for (int m = 1; m <= n; ++m) {
        for (int k = 1;; ++k) {
            const int g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
            if (g1 > m) break;
            const int sign = (k % 2 == 1) ? 1 : -1;
            p[m] += sign * p[m - g1];
            if (g2 <= m) p[m] += sign * p[m - g2];
        }
    }
    return p[n];
}

/// Partitions of n found by sorting and deduplicating all compositions.
inline std::vector<Partition> partitions_by_compositions(int n) {
    std::vector<std::vector<int>> found;
    const int total = n == 0 ? 1 : 1 << (n - 1);
    for (int mask = 0; mask < total && n > 0; ++mask) {
        std::vector<int> parts;
        int run = 1;
        for (int i = 0; i < n - 1; ++i) {
            if (mask & (1 << i)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        std::sort(parts.rbegin(), parts.rend());
        found.push_back(parts);
    }
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    std::vector<Partition> out;
    for (auto& f : found) out.emplace_back(f);
    if (n == 0) out.emplace_back();
    return out;
}

/// m_lambda(v): sum of v^alpha over distinct rearrangements alpha of lambda.
inline Integer monomial_at(const Partition& lambda, const std::vector<int>& v) {
    std::vector<int> exps(v.size(), 0);
    if (lambda.length() > v.size()) return 0;
    std::copy(lambda.parts().begin(), lambda.parts().end(), exps.begin());
    std::sort(exps.begin(), exps.end());
    Integer total = 0;
    do {
        Integer term = 1;
        for (std::size_t i = 0; i < v.size(); ++i) {
            Integer power;
            mpz_pow_ui(power.get_mpz_t(), Integer(v[i]).get_mpz_t(), static_cast<unsigned long>(exps[i]));
            term *= power;
        }
        total += term;
    } while (std::next_permutation(exps.begin(), exps.end()));
    return total;
}

/// e_k(v) and h_k(v) for k = 0..n from the generating products.
inline std::vector<Integer> elementary_at(const std::vector<int>& v, int n) {
    std::vector<Integer> e(static_cast<std::size_t>(n) + 1, 0);
    e[0] = 1;
    for (int x : v)
        for (int k = n; k >= 1; --k) e[k] += e[k - 1] * x;
    return e;
}

inline std::vector<Integer> complete_at(const std::vector<int>& v, int n) {
    std::vector<Integer> h(static_cast<std::size_t>(n) + 1, 0);
    h[0] = 1;
    for (int x : v)
        for (int k = 1; k <= n; ++k) h[k] += h[k - 1] * x;
    return h;
}

inline Integer power_at(const std::vector<int>& v, int k) {
    Integer s = 0;
    for (int x : v) {
        Integer power;
        mpz_pow_ui(power.get_mpz_t(), Integer(x).get_mpz_t(), static_cast<unsigned long>(k));
        s += power;
    }
    return s;
}

/// Direct value of a basis element at v.
inline Integer basis_element_at(kerovlab::Basis b, const Partition& mu, const std::vector<int>& v) {
    if (b == kerovlab::Basis::m) return monomial_at(mu, v);
    const int n = std::max(mu.largest(), 1);
    const std::vector<Integer> e = elementary_at(v, n), h = complete_at(v, n);
    Integer out = 1;
    for (int part : mu.parts()) {
        if (b == kerovlab::Basis::e) out *= e[part];
        else if (b == kerovlab::Basis::h) out *= h[part];
        else out *= power_at(v, part);
    }
    return out;
}

inline Rational symfunc_at(const kerovlab::SymFunc& f, const std::vector<int>& v) {
    Rational total = 0;
    for (const auto& [mu, c] : f.terms()) total += c * basis_element_at(f.basis(), mu, v);
    return total;
}

/// Contents of addable (x) and removable (y) cells, read off the diagram cell by cell.
inline void corners(const Partition& lambda, std::vector<int>& x, std::vector<int>& y) {
    x.clear();
    y.clear();
    const auto row = [&](int i) { return i < static_cast<int>(lambda.length()) ? lambda[static_cast<std::size_t>(i)] : 0; };
    for (int i = 0; i <= static_cast<int>(lambda.length()); ++i) {
        // addable cell at (i, row(i)) when the row above is longer
        if (i == 0 || row(i - 1) > row(i)) x.push_back(row(i) - i);
        // removable cell at (i, row(i)-1) when the row below is shorter
        if (i < static_cast<int>(lambda.length()) && row(i + 1) < row(i)) y.push_back(row(i) - 1 - i);
    }
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
}

/// Moments of the transition measure: weights prod(x_k - y_j) / prod_{i != k}(x_k - x_i) at atoms x_k.
inline std::vector<Rational> transition_moments(const Partition& lambda, int order) {
    std::vector<int> x, y;
    corners(lambda, x, y);
    std::vector<Rational> moments(static_cast<std::size_t>(order) + 1, 0);
    for (std::size_t k = 0; k < x.size(); ++k) {
        Rational w = 1;
        for (int yj : y) w *= x[k] - yj;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (i != k) w /= x[k] - x[i];
        Rational power = 1;
        for (int n = 0; n <= order; ++n) {
            moments[n] += w * power;
            power *= x[k];
        }
    }
    return moments;
}

/// Free cumulants from moments via m_n = sum_s R_s [t^{n-s}] M(t)^s.
inline std::vector<Rational> free_cumulants_from_moments(const std::vector<Rational>& m, int k_max) {
    const int n_max = k_max;
    std::vector<Rational> R(static_cast<std::size_t>(k_max) + 1, 0);
    for (int n = 1; n <= n_max; ++n) {
        // power[s][j] = [t^j] M(t)^s with M(t) = sum_i m_i t^i, m_0 = 1.
        Rational rest = 0;
        for (int s = 1; s < n; ++s) {
            std::vector<Rational> poly(static_cast<std::size_t>(n - s) + 1, 0);
            poly[0] = 1;
            for (int t = 0; t < s; ++t) {
                std::vector<Rational> next(poly.size(), 0);
                for (std::size_t a = 0; a < poly.size(); ++a)
                    for (std::size_t b = 0; a + b < poly.size(); ++b) next[a + b] += poly[a] * m[b];
                poly = next;
            }
            rest += R[s] * poly[static_cast<std::size_t>(n - s)];
        }
        R[n] = m[n] - rest;
    }
    return R;
}

/// chi^lambda(mu) as the coefficient of x^{lambda + delta} in a_delta * p_mu (Frobenius).
inline Integer frobenius_character(const Partition& lambda, const Partition& mu) {
    const std::size_t n = static_cast<std::size_t>(lambda.weight());
    const std::size_t vars = std::max<std::size_t>(lambda.length(), 1);
    using Poly = std::map<std::vector<int>, Integer>;
    Poly poly;
    // Vandermonde a_delta = sum over permutations sign * x^{sigma(delta)}.
    std::vector<int> perm(vars);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < vars; ++i)
            for (std::size_t j = i + 1; j < vars; ++j) inversions += perm[i] > perm[j];
        std::vector<int> e(vars);
        for (std::size_t i = 0; i < vars; ++i) e[i] = static_cast<int>(vars - 1) - perm[i];
        poly[e] += inversions % 2 == 0 ? 1 : -1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int part : mu.parts()) {
        Poly next;
        for (const auto& [e, c] : poly)
            for (std::size_t i = 0; i < vars; ++i) {
                std::vector<int> f = e;
                f[i] += part;
                next[f] += c;
            }
        poly = std::move(next);
    }
    std::vector<int> target(vars);
    for (std::size_t i = 0; i < vars; ++i) target[i] = (i < lambda.length() ? lambda[i] : 0) + static_cast<int>(vars - 1 - i);
    (void)n;
    auto it = poly.find(target);
    return it == poly.end() ? Integer(0) : it->second;
}

}  // namespace oracle

#include "kerovlab/linear_solve.hpp"

#include <algorithm>

namespace kerovlab {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 pow_mod(u64 base, u64 exp, u64 p) {
    u64 result = 1;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, p);
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    return result;
}

u64 inv_mod(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

u64 reduce(const Integer& z, u64 p) { return mpz_fdiv_ui(z.get_mpz_t(), p); }

u64 next_prime(u64 after) {
    Integer z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &after);
    mpz_nextprime(z.get_mpz_t(), z.get_mpz_t());
    u64 out = 0;
    mpz_export(&out, nullptr, 1, sizeof(u64), 0, 0, z.get_mpz_t());
    return out;
}

// Solves a square system mod p in place; false when singular.
bool solve_mod(std::vector<std::vector<u64>>& m, u64 p, std::vector<u64>& x) {
    const std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m[pivot][k] == 0) ++pivot;
        if (pivot == n) return false;
        std::swap(m[k], m[pivot]);
        const u64 inv = inv_mod(m[k][k], p);
        for (std::size_t j = k; j <= n; ++j) m[k][j] = mul_mod(m[k][j], inv, p);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m[i][k] == 0) continue;
            const u64 factor = m[i][k];
            for (std::size_t j = k; j <= n; ++j) {
                const u64 sub = mul_mod(factor, m[k][j], p);
                m[i][j] = m[i][j] >= sub ? m[i][j] - sub : m[i][j] + p - sub;
            }
        }
    }
    x.resize(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
    return true;
}

std::optional<Rational> rational_reconstruct(const Integer& residue, const Integer& modulus) {
    Integer bound;
    mpz_sqrt(bound.get_mpz_t(), Integer(modulus / 2).get_mpz_t());
    Integer r0 = modulus, r1 = residue, s0 = 0, s1 = 1;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        Integer s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
    }
    if (abs(s1) > bound || s1 == 0) return std::nullopt;
    Integer g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), s1.get_mpz_t());
    if (g != 1) return std::nullopt;
    Rational q(r1, s1);
    q.canonicalize();
    return q;
}

bool certify(const IntegerMatrix& matrix, const std::vector<Integer>& rhs, const std::vector<Rational>& x) {
    Integer common = 1;
    for (const Rational& v : x) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), v.get_den().get_mpz_t());
    std::vector<Integer> scaled(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) scaled[j] = x[j].get_num() * (common / x[j].get_den());
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        Integer acc = 0;
        for (std::size_t j = 0; j < x.size(); ++j) acc += matrix[i][j] * scaled[j];
        if (acc != rhs[i] * common) return false;
    }
    return true;
}

}  // namespace

std::uint64_t ModularRankSelector::default_prime() { return 4611686018427387847ull; }  // largest prime < 2^62

ModularRankSelector::ModularRankSelector(std::size_t columns, std::uint64_t prime)
    : columns_(columns), prime_(prime), pivot_rows_(columns) {}

bool ModularRankSelector::try_add(std::span<const Integer> row) {
    if (row.size() != columns_) throw Error("row width does not match the selector");
    std::vector<u64> v(columns_);
    for (std::size_t j = 0; j < columns_; ++j) v[j] = reduce(row[j], prime_);
    for (std::size_t c = 0; c < columns_; ++c) {
        if (v[c] == 0) continue;
        const auto& pivot = pivot_rows_[c];
        if (pivot.empty()) {
            const u64 inv = inv_mod(v[c], prime_);
            for (std::size_t j = c; j < columns_; ++j) v[j] = mul_mod(v[j], inv, prime_);
            pivot_rows_[c] = std::move(v);
            ++rank_;
            return true;
        }
        const u64 factor = v[c];
        for (std::size_t j = c; j < columns_; ++j) {
            const u64 sub = mul_mod(factor, pivot[j], prime_);
            v[j] = v[j] >= sub ? v[j] - sub : v[j] + prime_ - sub;
        }
    }
    return false;
}

std::vector<Rational> bareiss_solve(IntegerMatrix m, std::vector<Integer> rhs) {
    const std::size_t n = m.size();
    if (rhs.size() != n) throw Error("right-hand side size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw Error("bareiss_solve needs a square matrix");
        m[i].push_back(std::move(rhs[i]));
    }
    Integer previous = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m[pivot][k] == 0) ++pivot;
        if (pivot == n) throw Error("singular system in fraction-free elimination");
        std::swap(m[k], m[pivot]);
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j <= n; ++j) {
                Integer value = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), value.get_mpz_t(), previous.get_mpz_t());
            }
            m[i][k] = 0;
        }
        previous = m[k][k];
    }
    std::vector<Rational> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Rational acc(m[i][n]);
        for (std::size_t j = i + 1; j < n; ++j) acc -= m[i][j] * x[j];
        x[i] = acc / m[i][i];
    }
    return x;
}

std::optional<std::vector<Rational>> multimodular_solve(const IntegerMatrix& matrix, const std::vector<Integer>& rhs,
                                                        std::size_t max_primes) {
    const std::size_t n = matrix.size();
    std::vector<Integer> lifted(n, Integer(0));
    Integer modulus = 1;
    u64 prime = u64{1} << 62;
    std::size_t next_attempt = 1;
    for (std::size_t count = 1; count <= max_primes; ++count) {
        prime = next_prime(prime);
        std::vector<std::vector<u64>> reduced(n, std::vector<u64>(n + 1));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) reduced[i][j] = reduce(matrix[i][j], prime);
            reduced[i][n] = reduce(rhs[i], prime);
        }
        std::vector<u64> x;
        if (!solve_mod(reduced, prime, x)) {
            if (count == 1) return std::nullopt;
            continue;
        }
        const u64 m_inv = inv_mod(reduce(modulus, prime), prime);
        for (std::size_t j = 0; j < n; ++j) {
            const u64 current = reduce(lifted[j], prime);
            const u64 diff = x[j] >= current ? x[j] - current : x[j] + prime - current;
            const u64 step = mul_mod(diff, m_inv, prime);
            lifted[j] += modulus * Integer(static_cast<unsigned long>(step));
        }
        modulus *= Integer(static_cast<unsigned long>(prime));
        if (count < next_attempt) continue;
        next_attempt = count + std::max<std::size_t>(1, count / 4);
        std::vector<Rational> candidate;
        candidate.reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
            auto q = rational_reconstruct(lifted[j], modulus);
            if (!q) break;
            candidate.push_back(*q);
        }
        if (candidate.size() == n && certify(matrix, rhs, candidate)) return candidate;
    }
    return std::nullopt;
}

SystemAnalysis analyze_system(const std::vector<std::vector<Rational>>& matrix, const std::vector<Rational>& rhs,
                              std::size_t unknowns) {
    if (matrix.size() != rhs.size()) throw Error("right-hand side size mismatch");
    SystemAnalysis out;
    // Echelon rows (coefficients followed by rhs), indexed by pivot column.
    std::vector<std::vector<Rational>> pivots(unknowns);
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        if (matrix[i].size() != unknowns) throw Error("row width does not match unknown count");
        std::vector<Rational> v = matrix[i];
        v.push_back(rhs[i]);
        for (std::size_t c = 0; c < unknowns; ++c) {
            if (v[c] == 0) continue;
            if (pivots[c].empty()) {
                const Rational lead = v[c];
                for (std::size_t j = c; j <= unknowns; ++j) v[j] /= lead;
                pivots[c] = std::move(v);
                ++out.rank;
                break;
            }
            const Rational factor = v[c];
            for (std::size_t j = c; j <= unknowns; ++j) v[j] -= factor * pivots[c][j];
        }
    }
    out.solution.assign(unknowns, Rational(0));
    for (std::size_t c = unknowns; c-- > 0;) {
        if (pivots[c].empty()) continue;
        Rational acc = pivots[c][unknowns];
        for (std::size_t j = c + 1; j < unknowns; ++j) acc -= pivots[c][j] * out.solution[j];
        out.solution[c] = acc;
    }
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < unknowns; ++j) acc += matrix[i][j] * out.solution[j];
        if (acc != rhs[i]) out.residual_rows.push_back(i);
    }
    out.consistent = out.residual_rows.empty();
    return out;
}

}  // namespace kerovlab

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kerovlab/partition.hpp"

namespace kerovlab {

using IntegerMatrix = std::vector<std::vector<Integer>>;

/// Incremental row echelon form over Z/pZ. Used to pick a set of integer
/// rows that is linearly independent over Q: independence mod p implies
/// independence over Q.
class ModularRankSelector {
public:
    explicit ModularRankSelector(std::size_t columns, std::uint64_t prime = default_prime());

    /// Reduces `row` against the stored rows; keeps it and returns true when
    /// it raises the rank.
    bool try_add(std::span<const Integer> row);
    std::size_t rank() const noexcept { return rank_; }
    std::size_t columns() const noexcept { return columns_; }

    static std::uint64_t default_prime();

private:
    std::size_t columns_;
    std::uint64_t prime_;
    std::size_t rank_ = 0;
    std::vector<std::vector<std::uint64_t>> pivot_rows_;  // indexed by pivot column
};

/// Fraction-free (Bareiss) elimination of a square integer system followed
/// by exact back substitution. Throws Error if the matrix is singular.
std::vector<Rational> bareiss_solve(IntegerMatrix matrix, std::vector<Integer> rhs);

/// Solves a square integer system modulo a sequence of word-size primes,
/// lifts by Chinese remaindering and rational reconstruction, and certifies
/// the candidate by exact substitution. Returns nullopt if the system is
/// singular modulo the first prime or no certified solution appears within
/// `max_primes`.
std::optional<std::vector<Rational>> multimodular_solve(const IntegerMatrix& matrix, const std::vector<Integer>& rhs,
                                                        std::size_t max_primes = 4096);

/// Exact analysis of an arbitrary (possibly overdetermined) rational system.
struct SystemAnalysis {
    std::size_t rank = 0;
    bool consistent = true;
    /// A particular solution with free variables set to zero.
    std::vector<Rational> solution;
    /// Rows whose equation the particular solution violates.
    std::vector<std::size_t> residual_rows;
};

SystemAnalysis analyze_system(const std::vector<std::vector<Rational>>& matrix, const std::vector<Rational>& rhs,
                              std::size_t unknowns);

}  // namespace kerovlab

#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace kerovlab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised for violated preconditions and malformed input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Integer partition: a weakly decreasing sequence of positive parts.
///
/// Partitions are immutable values with structural equality. The built-in
/// ordering is lexicographic on the parts; use CanonicalOrder for the
/// weight-major ordering used by every sparse term map.
class Partition {
public:
    Partition() = default;

    /// Throws Error unless `parts` is weakly decreasing and positive.
    explicit Partition(std::vector<int> parts);
    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    /// Sorts the entries and drops zeros; negative entries are an error.
    static Partition from_unsorted(std::vector<int> entries);

    /// Parses "3,1" (empty string is the empty partition). Also accepts
    /// exponent notation such as "3,1^2".
    static Partition parse(std::string_view text);

    std::span<const int> parts() const noexcept { return parts_; }
    const std::vector<int>& vec() const noexcept { return parts_; }
    int operator[](std::size_t i) const { return parts_[i]; }
    std::size_t length() const noexcept { return parts_.size(); }
    bool empty() const noexcept { return parts_.empty(); }
    int weight() const noexcept { return weight_; }
    int largest() const noexcept { return parts_.empty() ? 0 : parts_.front(); }
    int smallest() const noexcept { return parts_.empty() ? 0 : parts_.back(); }

    /// m_i: number of parts equal to i.
    int multiplicity(int i) const noexcept;

    /// Distinct parts paired with their multiplicities, largest part first.
    std::vector<std::pair<int, int>> multiplicities() const;

    /// Concatenation of the parts of two partitions.
    Partition join(const Partition& other) const;

    /// Removes one occurrence of `part`; throws if absent.
    Partition without(int part) const;

    std::string to_string() const;

    friend bool operator==(const Partition&, const Partition&) = default;
    friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
        return a.parts_ <=> b.parts_;
    }

private:
    std::vector<int> parts_;
    int weight_ = 0;
};

/// Weight descending, then reverse lexicographic. This is the display and
/// serialization order of every term map in the library.
struct CanonicalOrder {
    bool operator()(const Partition& a, const Partition& b) const noexcept {
        if (a.weight() != b.weight()) return a.weight() > b.weight();
        return a > b;
    }
};

struct PartitionHash {
    std::size_t operator()(const Partition& p) const noexcept;
};

/// All partitions of n with every part >= min_part, reverse lexicographic.
std::vector<Partition> enumerate_partitions(int n, int min_part = 1);

/// All partitions with min_part <= parts and weight in [lo, hi], grouped by
/// weight descending.
std::vector<Partition> partitions_in_weight_range(int lo, int hi, int min_part = 1);

Integer z_factor(const Partition& mu);
int epsilon(const Partition& mu);
Integer u_factor(const Partition& mu);
/// Product of the factorials of the multiplicities.
Integer multiplicity_factorial(const Partition& mu);
Partition conjugate(const Partition& lambda);

Integer factorial(int n);
Integer binomial(int n, int k);
Rational falling_factorial(const Rational& t, int length);

/// "num/den", denominator omitted when 1.
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

}  // namespace kerovlab

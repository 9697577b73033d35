#pragma once

#include <vector>

#include "kerovlab/partition.hpp"

namespace kerovlab {

/// Contents of the outer corners (y) and of the addable cells (x) of a Young
/// diagram: x_1 < y_1 < x_2 < ... < y_{d-1} < x_d, centered at zero.
struct InterlacingPair {
    std::vector<int> x;
    std::vector<int> y;

    /// sum(x) - sum(y).
    long center() const;
    bool is_interlacing() const;
};

InterlacingPair diagram_to_interlacing(const Partition& lambda);

/// Coefficients m_0..m_order of G(z) = sum_j m_j z^{-j-1}.
std::vector<Rational> resolvent_series(const InterlacingPair& pair, int order);

/// Free cumulants R_2..R_{k_max} of a diagram.
class CumulantVector {
public:
    CumulantVector() = default;
    /// values[k] holds R_k for k = 0..max_order; entries 0 and 1 are ignored.
    explicit CumulantVector(std::vector<Rational> values);

    int max_order() const noexcept { return static_cast<int>(values_.size()) - 1; }
    /// R_k for 2 <= k <= max_order; R_0 and R_1 read as zero.
    const Rational& operator[](int k) const;

private:
    std::vector<Rational> values_;
};

CumulantVector free_cumulants(const Partition& lambda, int k_max);

/// Compositional inverse of 1/w * (1 + sum_{j>=1} m_j w^j)-type resolvent
/// coefficients: returns R_0..R_{k_max} (R_0 = 0) with R_1 = the center.
std::vector<Rational> invert_resolvent(const std::vector<Rational>& moments, int k_max);

/// Numeric C_0..C_{n_max} of a diagram (sum over |mu| = n of l(mu)! calR_mu).
std::vector<Rational> c_values(const Partition& lambda, int n_max);
/// Numeric Q_0..Q_{n_max} of a diagram (sum over |mu| = n of (l(mu)-1)! calR_mu).
std::vector<Rational> q_values(const Partition& lambda, int n_max);

/// calR_mu = prod_i ((i-1) R_i)^{m_i} / m_i! evaluated on a cumulant vector.
Rational scaled_cumulant_monomial(const CumulantVector& cumulants, const Partition& mu);

}  // namespace kerovlab

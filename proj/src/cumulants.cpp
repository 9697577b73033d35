#include "kerovlab/cumulants.hpp"

#include <numeric>

namespace kerovlab {

long InterlacingPair::center() const {
    long sx = std::accumulate(x.begin(), x.end(), 0L);
    long sy = std::accumulate(y.begin(), y.end(), 0L);
    return sx - sy;
}

bool InterlacingPair::is_interlacing() const {
    if (x.size() != y.size() + 1) return false;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (!(x[i] < y[i] && y[i] < x[i + 1])) return false;
    return true;
}

InterlacingPair diagram_to_interlacing(const Partition& lambda) {
    if (lambda.empty()) throw Error("the empty diagram has no corners");
    // Row i (1-based) of length lambda_i: the cell (i, j) has content j - i.
    InterlacingPair pair;
    const int rows = static_cast<int>(lambda.length());
    auto row_len = [&](int i) { return i <= rows ? lambda[static_cast<std::size_t>(i - 1)] : 0; };
    for (int i = rows + 1; i >= 1; --i) {
        // Addable cell at the end of row i when the row above is longer.
        if (i == 1 || row_len(i - 1) > row_len(i)) pair.x.push_back(row_len(i) + 1 - i);
        // Removable cell at the end of row i when the row below is shorter.
        if (i <= rows && row_len(i) > row_len(i + 1)) pair.y.push_back(row_len(i) - i);
    }
    if (!pair.is_interlacing() || pair.center() != 0)
        throw Error("corner extraction produced a non-interlacing pair for " + lambda.to_string());
    return pair;
}

std::vector<Rational> resolvent_series(const InterlacingPair& pair, int order) {
    if (order < 0) throw Error("resolvent order must be nonnegative");
    const auto n = static_cast<std::size_t>(order) + 1;
    // G(z) = u * prod(1 - y_i u) / prod(1 - x_i u) with u = 1/z, truncated.
    auto product = [n](const std::vector<int>& roots) {
        std::vector<Rational> poly(n, Rational(0));
        poly[0] = 1;
        for (int root : roots)
            for (std::size_t k = n - 1; k >= 1; --k) poly[k] -= root * poly[k - 1];
        return poly;
    };
    const std::vector<Rational> numerator = product(pair.y);
    const std::vector<Rational> denominator = product(pair.x);
    std::vector<Rational> m(n);
    for (std::size_t k = 0; k < n; ++k) {
        Rational acc = numerator[k];
        for (std::size_t i = 1; i <= k; ++i) acc -= denominator[i] * m[k - i];
        m[k] = acc;
    }
    return m;
}

std::vector<Rational> invert_resolvent(const std::vector<Rational>& moments, int k_max) {
    if (k_max < 1) throw Error("k_max must be positive");
    if (static_cast<int>(moments.size()) < k_max + 1) throw Error("not enough resolvent coefficients");
    if (moments[0] != 1) throw Error("resolvent must start with z^{-1}");
    const auto top = static_cast<std::size_t>(k_max) + 2;
    // t = 1/K(w) = w / (1 + R_1 w + R_2 w^2 + ...); powers[j][d] = [w^d] t^j.
    std::vector<Rational> cumulant(static_cast<std::size_t>(k_max) + 1, Rational(0));
    std::vector<std::vector<Rational>> powers(top, std::vector<Rational>(top, Rational(0)));
    std::vector<Rational>& t = powers[1];
    t[1] = 1;
    for (std::size_t n = 1; n <= static_cast<std::size_t>(k_max); ++n) {
        Rational partial = 0;
        for (std::size_t k = 1; k < n; ++k) partial -= cumulant[k] * t[n + 1 - k];
        for (std::size_t j = 2; j <= n + 1; ++j) {
            Rational acc = 0;
            for (std::size_t i = 1; i <= n; ++i) acc += t[i] * powers[j - 1][n + 1 - i];
            powers[j][n + 1] = acc;
        }
        // Coefficient of w^{n+1} in G(K(w)) must vanish; R_n enters as -R_n.
        Rational residual = moments[0] * partial;
        for (std::size_t j = 1; j <= n; ++j) residual += moments[j] * powers[j + 1][n + 1];
        cumulant[n] = residual;
        t[n + 1] = partial - cumulant[n];
    }
    return cumulant;
}

CumulantVector::CumulantVector(std::vector<Rational> values) : values_(std::move(values)) {}

const Rational& CumulantVector::operator[](int k) const {
    static const Rational zero(0);
    if (k < 2) return zero;
    if (k > max_order()) throw Error("free cumulant R_" + std::to_string(k) + " was not computed");
    return values_[static_cast<std::size_t>(k)];
}

CumulantVector free_cumulants(const Partition& lambda, int k_max) {
    if (k_max < 2) throw Error("k_max must be at least 2");
    InterlacingPair pair = diagram_to_interlacing(lambda);
    std::vector<Rational> cumulant = invert_resolvent(resolvent_series(pair, k_max), k_max);
    if (cumulant[1] != 0) throw Error("nonzero first free cumulant for " + lambda.to_string());
    return CumulantVector(std::move(cumulant));
}

Rational scaled_cumulant_monomial(const CumulantVector& cumulants, const Partition& mu) {
    Rational out = 1;
    for (int part : mu.parts()) out *= (part - 1) * cumulants[part];
    return out / multiplicity_factorial(mu);
}

namespace {

template <typename Weight>
std::vector<Rational> factorial_sums(const Partition& lambda, int n_max, Weight weight) {
    if (n_max < 0) throw Error("n_max must be nonnegative");
    CumulantVector cumulants = free_cumulants(lambda, std::max(n_max, 2));
    std::vector<Rational> out(static_cast<std::size_t>(n_max) + 1, Rational(0));
    out[0] = 1;
    for (int n = 2; n <= n_max; ++n) {
        Rational acc = 0;
        for (const Partition& mu : enumerate_partitions(n, 2))
            acc += weight(static_cast<int>(mu.length())) * scaled_cumulant_monomial(cumulants, mu);
        out[static_cast<std::size_t>(n)] = acc;
    }
    return out;
}

}  // namespace

std::vector<Rational> c_values(const Partition& lambda, int n_max) {
    return factorial_sums(lambda, n_max, [](int len) { return factorial(len); });
}

std::vector<Rational> q_values(const Partition& lambda, int n_max) {
    return factorial_sums(lambda, n_max, [](int len) { return factorial(len - 1); });
}

}  // namespace kerovlab

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kerovlab/cumulants.hpp"
#include "kerovlab/partition.hpp"
#include "kerovlab/sym_func.hpp"

namespace kerovlab {

/// Generator families: free cumulants R_i, and the C_i and Q_i families.
enum class Family { R, C, Q };

char family_letter(Family f) noexcept;
Family parse_family(std::string_view text);

/// Polynomial in one generator family. Keys are monomial indices with all
/// parts >= 2 (the degree-1 generators vanish identically); the weight of a
/// monomial is the weight of its index.
class CumulantPolynomial {
public:
    explicit CumulantPolynomial(Family family = Family::R) : family_(family) {}
    CumulantPolynomial(Family family, TermMap terms);

    Family family() const noexcept { return family_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Rational coefficient(const Partition& index) const;
    int max_weight() const noexcept { return terms_.empty() ? -1 : terms_.begin()->first.weight(); }

    /// Throws Error for an index with a part < 2.
    void add_term(const Partition& index, const Rational& coef);

    /// Weight-s part; zero polynomial when nothing has weight s.
    CumulantPolynomial graded(int s) const;

    /// Both operands must share the family.
    CumulantPolynomial& operator+=(const CumulantPolynomial& other);
    CumulantPolynomial& operator*=(const Rational& scalar);
    friend CumulantPolynomial operator+(CumulantPolynomial a, const CumulantPolynomial& b) { return a += b; }
    friend CumulantPolynomial operator*(CumulantPolynomial a, const Rational& s) { return a *= s; }
    friend bool operator==(const CumulantPolynomial&, const CumulantPolynomial&) = default;

    /// Value with generator i set to values[i] (values[0], values[1] unused).
    Rational evaluate(std::span<const Rational> values) const;

    /// "1*R[4] + 1*R[2]" in canonical term order; "0" when empty.
    std::string to_string() const;
    /// [{"partition": [...], "coef": "a/b"}, ...] in canonical term order.
    nlohmann::ordered_json terms_json() const;

private:
    Family family_;
    TermMap terms_;
};

/// K_r as an R-family polynomial together with reconstruction diagnostics.
struct KerovPolynomial {
    int r = 0;
    CumulantPolynomial poly{Family::R};

    std::size_t unknowns = 0;
    std::size_t rows_examined = 0;
    int max_sample_weight = 0;
    std::vector<Partition> held_out;

    /// Terms that break the nonnegative-integer property (empty when it holds).
    std::vector<std::pair<Partition, Rational>> non_integral;
    std::vector<std::pair<Partition, Rational>> negative;

    bool integral() const noexcept { return non_integral.empty(); }
    bool nonnegative() const noexcept { return negative.empty(); }
    /// Single top-weight monomial R_{r+1} with coefficient 1.
    bool monic_top() const;
    /// No term of weight s with s = r (mod 2).
    bool parity_vanishing() const;

    void refresh_findings();
};

enum class SolverKind { automatic, bareiss, multimodular };

struct InterpolationOptions {
    /// Largest |lambda| sampled before giving up; 0 means 2r + 8.
    int max_sample_weight = 0;
    std::size_t held_out = 10;
    SolverKind solver = SolverKind::automatic;
    /// Threshold on the unknown count above which `automatic` switches to
    /// the multimodular solver.
    std::size_t multimodular_threshold = 200;
    unsigned jobs = 0;
};

/// Monomial support of K_r: parts >= 2, |mu| <= r+1, |mu| = r+1 (mod 2).
std::vector<Partition> kerov_support(int r);

/// Reconstructs K_r by exact interpolation against normalized characters.
/// Throws Error if full rank is not reached within the sampling budget, or
/// if the result disagrees with the character oracle on held-out diagrams.
KerovPolynomial compute_kerov(int r, const InterpolationOptions& options = {});

CumulantPolynomial graded_component(const KerovPolynomial& k, int s);

/// Image in the classical bases under (i-1)R_i = -h_i, Q_i = -p_i/i,
/// C_i = (-1)^i e_i. R maps to h, C to e and Q to p.
SymFunc to_alphabet(const CumulantPolynomial& poly);
/// Inverse of to_alphabet modulo the degree-one generator.
CumulantPolynomial from_alphabet(const SymFunc& f, Family target);

CumulantPolynomial change_generators(const CumulantPolynomial& poly, Family target);

/// Numeric value of a polynomial at a diagram (uses R, C or Q values).
Rational evaluate_at_diagram(const CumulantPolynomial& poly, const Partition& lambda);

CumulantPolynomial krr1_closed_form(int r);
Rational krr3_a(int r);
Rational krr3_b(int r);
CumulantPolynomial krr3_closed_form(int r);

/// Right-hand side of the weighted triple sum identity, in R or Q form.
CumulantPolynomial weighted_triple_sum(const Rational& a, const Rational& b, const Rational& c, int n, Family family);
/// Direct sum over i+j+k = n of (a + b i + c i^2) C_i C_j C_k.
CumulantPolynomial brute_triple_sum(const Rational& a, const Rational& b, const Rational& c, int n);

}  // namespace kerovlab

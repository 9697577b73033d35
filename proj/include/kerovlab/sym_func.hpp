#pragma once

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "kerovlab/partition.hpp"

namespace kerovlab {

/// Monomial, power-sum, elementary and complete bases.
enum class Basis { m, p, e, h };

char basis_letter(Basis b) noexcept;
Basis parse_basis(std::string_view text);

using TermMap = std::map<Partition, Rational, CanonicalOrder>;

/// Adds `coef` to the entry for `key`, erasing it if the sum vanishes.
void accumulate(TermMap& terms, const Partition& key, const Rational& coef);

/// Exact, possibly inhomogeneous, symmetric function in one of the four
/// classical bases. The empty partition indexes the constant term; zero
/// coefficients are never stored. Equality is decided in the p basis.
class SymFunc {
public:
    explicit SymFunc(Basis basis = Basis::p) : basis_(basis) {}
    SymFunc(Basis basis, TermMap terms);

    static SymFunc constant(const Rational& c, Basis basis = Basis::p);
    static SymFunc monomial(Basis basis, const Partition& index, const Rational& coef = 1);

    Basis basis() const noexcept { return basis_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Rational coefficient(const Partition& index) const;
    /// Largest degree carrying a nonzero term; -1 for the zero function.
    int max_degree() const noexcept;
    SymFunc homogeneous_component(int degree) const;

    void add_term(const Partition& index, const Rational& coef) { accumulate(terms_, index, coef); }

    /// The right-hand side is converted to this basis first.
    SymFunc& operator+=(const SymFunc& other);
    SymFunc& operator-=(const SymFunc& other);
    SymFunc& operator*=(const Rational& scalar);
    friend SymFunc operator+(SymFunc a, const SymFunc& b) { return a += b; }
    friend SymFunc operator-(SymFunc a, const SymFunc& b) { return a -= b; }
    friend SymFunc operator*(SymFunc a, const Rational& s) { return a *= s; }
    friend SymFunc operator*(const Rational& s, SymFunc a) { return a *= s; }

    friend bool operator==(const SymFunc& a, const SymFunc& b);

    /// "coef*b[parts] + ..." in canonical term order; "0" when empty.
    std::string to_string() const;
    nlohmann::ordered_json to_json() const;
    static SymFunc from_json(const nlohmann::ordered_json& j);

private:
    Basis basis_;
    TermMap terms_;
};

SymFunc convert(const SymFunc& f, Basis target);
SymFunc multiply(const SymFunc& f, const SymFunc& g);

/// The single basis element b_mu expanded in the p basis, and p_mu expanded
/// in basis b. Both are memoized process-wide.
const TermMap& expand_to_p(Basis from, const Partition& index);
const TermMap& expand_from_p(Basis to, const Partition& index);

/// Specialization x_i = v_i (remaining variables zero), via the p basis.
Rational evaluate_at_vector(const SymFunc& f, const Partition& v);

/// Power sum p_k at the vector v.
Integer power_sum_at(const Partition& v, int k);

/// p_mu[t] = t^{l(mu)}.
Rational p_scalar_specialize(const Partition& mu, const Rational& t);
/// m_mu[t] = t(t-1)...(t-l(mu)+1) / prod m_i(mu)!.
Rational m_scalar_specialize(const Partition& mu, const Rational& t);

/// a/2 + b n/6 + c (n^2 + p_2)/12 in the p basis.
SymFunc phi_hat(const Rational& a, const Rational& b, const Rational& c, int n);

}  // namespace kerovlab

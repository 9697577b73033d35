#include "kerovlab/kerov.hpp"

#include <algorithm>
#include <set>

#include "kerovlab/characters.hpp"
#include "kerovlab/concurrency.hpp"
#include "kerovlab/linear_solve.hpp"

namespace kerovlab {

char family_letter(Family f) noexcept {
    switch (f) {
        case Family::R: return 'R';
        case Family::C: return 'C';
        case Family::Q: return 'Q';
    }
    return '?';
}

Family parse_family(std::string_view text) {
    if (text == "R") return Family::R;
    if (text == "C") return Family::C;
    if (text == "Q") return Family::Q;
    throw Error("unknown generator family '" + std::string(text) + "'");
}

CumulantPolynomial::CumulantPolynomial(Family family, TermMap terms) : family_(family) {
    for (const auto& [k, c] : terms) add_term(k, c);
}

Rational CumulantPolynomial::coefficient(const Partition& index) const {
    auto it = terms_.find(index);
    return it == terms_.end() ? Rational(0) : it->second;
}

void CumulantPolynomial::add_term(const Partition& index, const Rational& coef) {
    if (!index.empty() && index.smallest() < 2)
        throw Error(std::string("generator ") + family_letter(family_) + "_1 is identically zero");
    accumulate(terms_, index, coef);
}

CumulantPolynomial CumulantPolynomial::graded(int s) const {
    CumulantPolynomial out(family_);
    for (const auto& [k, c] : terms_)
        if (k.weight() == s) out.terms_.emplace(k, c);
    return out;
}

CumulantPolynomial& CumulantPolynomial::operator+=(const CumulantPolynomial& other) {
    if (other.family_ != family_) throw Error("cannot add polynomials in different generator families");
    for (const auto& [k, c] : other.terms_) accumulate(terms_, k, c);
    return *this;
}

CumulantPolynomial& CumulantPolynomial::operator*=(const Rational& scalar) {
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, c] : terms_) c *= scalar;
    return *this;
}

Rational CumulantPolynomial::evaluate(std::span<const Rational> values) const {
    Rational total = 0;
    for (const auto& [k, c] : terms_) {
        Rational prod = c;
        for (int part : k.parts()) {
            if (static_cast<std::size_t>(part) >= values.size()) throw Error("generator value missing");
            prod *= values[static_cast<std::size_t>(part)];
        }
        total += prod;
    }
    return total;
}

std::string CumulantPolynomial::to_string() const {
    SymFunc shown(Basis::p, terms_);
    std::string text = shown.to_string();
    // Re-letter the p[...] markers with the family name.
    std::string out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == 'p' && i + 1 < text.size() && text[i + 1] == '[')
            out += family_letter(family_);
        else
            out += text[i];
    }
    return out;
}

nlohmann::ordered_json CumulantPolynomial::terms_json() const {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& [k, c] : terms_) out.push_back({{"partition", k.vec()}, {"coef", kerovlab::to_string(c)}});
    return out;
}

bool KerovPolynomial::monic_top() const {
    if (poly.is_zero()) return false;
    const CumulantPolynomial top = poly.graded(poly.max_weight());
    return poly.max_weight() == r + 1 && top.terms().size() == 1 && top.coefficient(Partition{r + 1}) == 1;
}

bool KerovPolynomial::parity_vanishing() const {
    return std::none_of(poly.terms().begin(), poly.terms().end(),
                        [&](const auto& kv) { return (kv.first.weight() - r) % 2 == 0; });
}

void KerovPolynomial::refresh_findings() {
    non_integral.clear();
    negative.clear();
    for (const auto& [k, c] : poly.terms()) {
        if (c.get_den() != 1) non_integral.emplace_back(k, c);
        if (c < 0) negative.emplace_back(k, c);
    }
}

std::vector<Partition> kerov_support(int r) {
    std::vector<Partition> out;
    for (int w = r + 1; w >= 0; w -= 2) {
        auto level = enumerate_partitions(w, 2);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

namespace {

struct SampleRow {
    std::vector<Integer> coefficients;
    Integer rhs;
};

std::vector<Integer> integer_cumulants(const Partition& lambda, int k_max) {
    CumulantVector cumulants = free_cumulants(lambda, k_max);
    std::vector<Integer> out(static_cast<std::size_t>(k_max) + 1, Integer(0));
    for (int k = 2; k <= k_max; ++k) {
        const Rational& v = cumulants[k];
        if (v.get_den() != 1) throw Error("non-integral free cumulant for " + lambda.to_string());
        out[static_cast<std::size_t>(k)] = v.get_num();
    }
    return out;
}

SampleRow sample_row(const Partition& lambda, int r, const std::vector<Partition>& support) {
    const std::vector<Integer> cumulants = integer_cumulants(lambda, r + 1);
    SampleRow row;
    row.coefficients.reserve(support.size());
    for (const Partition& mu : support) {
        Integer prod = 1;
        for (int part : mu.parts()) prod *= cumulants[static_cast<std::size_t>(part)];
        row.coefficients.push_back(std::move(prod));
    }
    const Rational chi = normalized_character(lambda, r);
    if (chi.get_den() != 1) throw Error("non-integral normalized character at " + lambda.to_string());
    row.rhs = chi.get_num();
    return row;
}

std::vector<Rational> cumulant_values(const Partition& lambda, int k_max) {
    CumulantVector cumulants = free_cumulants(lambda, k_max);
    std::vector<Rational> values(static_cast<std::size_t>(k_max) + 1, Rational(0));
    for (int k = 2; k <= k_max; ++k) values[static_cast<std::size_t>(k)] = cumulants[k];
    return values;
}

}  // namespace

KerovPolynomial compute_kerov(int r, const InterpolationOptions& options) {
    if (r < 2) throw Error("Kerov polynomials are indexed by r >= 2");
    const std::vector<Partition> support = kerov_support(r);
    const int max_weight = options.max_sample_weight > 0 ? options.max_sample_weight : 2 * r + 8;
    const unsigned jobs = options.jobs ? options.jobs : default_jobs();

    KerovPolynomial result;
    result.r = r;
    result.unknowns = support.size();

    ModularRankSelector selector(support.size());
    IntegerMatrix matrix;
    std::vector<Integer> rhs;
    std::set<Partition> used;
    constexpr std::size_t kChunk = 256;

    for (int n = r; n <= max_weight && selector.rank() < support.size(); ++n) {
        const std::vector<Partition> level = enumerate_partitions(n);
        for (std::size_t start = 0; start < level.size() && selector.rank() < support.size(); start += kChunk) {
            const std::size_t count = std::min(kChunk, level.size() - start);
            std::vector<SampleRow> rows(count);
            parallel_for(count, [&](std::size_t i) { rows[i] = sample_row(level[start + i], r, support); }, jobs);
            for (std::size_t i = 0; i < count && selector.rank() < support.size(); ++i) {
                ++result.rows_examined;
                if (!selector.try_add(rows[i].coefficients)) continue;
                matrix.push_back(std::move(rows[i].coefficients));
                rhs.push_back(std::move(rows[i].rhs));
                used.insert(level[start + i]);
            }
        }
        result.max_sample_weight = n;
    }
    if (selector.rank() < support.size())
        throw Error("interpolation for K_" + std::to_string(r) + " reached rank " + std::to_string(selector.rank()) +
                    " of " + std::to_string(support.size()) + " within |lambda| <= " + std::to_string(max_weight));

    std::vector<Rational> solution;
    const bool use_modular = options.solver == SolverKind::multimodular ||
                             (options.solver == SolverKind::automatic && support.size() > options.multimodular_threshold);
    if (use_modular) {
        if (auto modular = multimodular_solve(matrix, rhs)) solution = std::move(*modular);
    }
    if (solution.empty()) solution = bareiss_solve(std::move(matrix), std::move(rhs));

    for (std::size_t j = 0; j < support.size(); ++j) result.poly.add_term(support[j], solution[j]);

    // Held-out diagrams, spread over the unused partitions with r <= |lambda| <= r + 6.
    std::vector<Partition> candidates;
    for (int n = r; n <= r + 6; ++n)
        for (Partition& lambda : enumerate_partitions(n))
            if (!used.contains(lambda)) candidates.push_back(std::move(lambda));
    const std::size_t want = std::min(options.held_out, candidates.size());
    for (std::size_t i = 0; i < want; ++i) result.held_out.push_back(candidates[i * candidates.size() / want]);
    for (const Partition& lambda : result.held_out) {
        const std::vector<Rational> values = cumulant_values(lambda, r + 1);
        if (result.poly.evaluate(values) != normalized_character(lambda, r))
            throw Error("K_" + std::to_string(r) + " disagrees with the character oracle at held-out diagram " +
                        lambda.to_string());
    }
    result.refresh_findings();
    return result;
}

CumulantPolynomial graded_component(const KerovPolynomial& k, int s) { return k.poly.graded(s); }

namespace {

Basis alphabet_basis(Family f) {
    switch (f) {
        case Family::R: return Basis::h;
        case Family::C: return Basis::e;
        case Family::Q: return Basis::p;
    }
    return Basis::p;
}

// Scalar s with X_mu = s * b_mu in the alphabet image.
Rational generator_to_basis_factor(Family f, const Partition& mu) {
    Rational factor = 1;
    switch (f) {
        case Family::R:
            for (int part : mu.parts()) factor /= -(part - 1);
            break;
        case Family::C:
            if (mu.weight() % 2) factor = -1;
            break;
        case Family::Q:
            for (int part : mu.parts()) factor /= -part;
            break;
    }
    return factor;
}

bool has_unit_part(const Partition& mu) { return !mu.empty() && mu.smallest() == 1; }

}  // namespace

SymFunc to_alphabet(const CumulantPolynomial& poly) {
    SymFunc out(alphabet_basis(poly.family()));
    for (const auto& [mu, c] : poly.terms()) out.add_term(mu, c * generator_to_basis_factor(poly.family(), mu));
    return out;
}

CumulantPolynomial from_alphabet(const SymFunc& f, Family target) {
    // The degree-one generator spans the same ideal in every multiplicative
    // basis, so terms with a unit part are dropped on the way through p.
    TermMap in_p;
    if (f.basis() == Basis::p) {
        in_p = f.terms();
    } else {
        for (const auto& [k, c] : f.terms())
            for (const auto& [nu, d] : expand_to_p(f.basis(), k))
                if (!has_unit_part(nu)) accumulate(in_p, nu, c * d);
    }
    std::erase_if(in_p, [](const auto& kv) { return has_unit_part(kv.first); });
    const Basis basis = alphabet_basis(target);
    TermMap in_target;
    if (basis == Basis::p) {
        in_target = std::move(in_p);
    } else {
        for (const auto& [k, c] : in_p)
            for (const auto& [nu, d] : expand_from_p(basis, k))
                if (!has_unit_part(nu)) accumulate(in_target, nu, c * d);
    }
    CumulantPolynomial out(target);
    for (const auto& [nu, c] : in_target) out.add_term(nu, c / generator_to_basis_factor(target, nu));
    return out;
}

CumulantPolynomial change_generators(const CumulantPolynomial& poly, Family target) {
    if (poly.family() == target) return poly;
    return from_alphabet(to_alphabet(poly), target);
}

Rational evaluate_at_diagram(const CumulantPolynomial& poly, const Partition& lambda) {
    const int top = std::max(poly.max_weight(), 2);
    switch (poly.family()) {
        case Family::R: return poly.evaluate(cumulant_values(lambda, top));
        case Family::C: return poly.evaluate(c_values(lambda, top));
        case Family::Q: return poly.evaluate(q_values(lambda, top));
    }
    return 0;
}

CumulantPolynomial krr1_closed_form(int r) {
    if (r < 2) throw Error("K_{r,r-1} needs r >= 2");
    CumulantPolynomial out(Family::R);
    const Rational scale = Rational(binomial(r + 1, 3)) / 4;
    for (const Partition& mu : enumerate_partitions(r - 1, 2)) {
        Rational coef = scale * factorial(static_cast<int>(mu.length()));
        for (int part : mu.parts()) coef *= part - 1;
        out.add_term(mu, coef / multiplicity_factorial(mu));
    }
    return out;
}

Rational krr3_a(int r) {
    Rational value(Integer(-(r - 1)) * (r - 3) * (r * r - 4 * r - 6), Integer(2880));
    value.canonicalize();
    return value;
}

Rational krr3_b(int r) {
    Rational value(Integer(2 * r * r - 3), Integer(480));
    value.canonicalize();
    return value;
}

namespace {

// sum over i+j+k = n of weight(i) C_i C_j C_k as a C-family polynomial.
template <typename Weight>
CumulantPolynomial triple_sum(int n, Weight weight) {
    CumulantPolynomial out(Family::C);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j) {
            const int k = n - i - j;
            if (i == 1 || j == 1 || k == 1) continue;
            out.add_term(Partition::from_unsorted({i, j, k}), weight(i));
        }
    return out;
}

}  // namespace

CumulantPolynomial krr3_closed_form(int r) {
    if (r < 5) throw Error("the K_{r,r-3} closed form needs r >= 5");
    const Rational a = krr3_a(r), b = krr3_b(r);
    CumulantPolynomial c_form = triple_sum(r - 3, [&](int i) { return Rational(a + b * i * i); });
    c_form *= Rational(binomial(r + 1, 3));
    return change_generators(c_form, Family::R);
}

CumulantPolynomial brute_triple_sum(const Rational& a, const Rational& b, const Rational& c, int n) {
    if (n < 0) throw Error("triple sum degree must be nonnegative");
    return triple_sum(n, [&](int i) { return Rational(a + b * i + c * i * i); });
}

CumulantPolynomial weighted_triple_sum(const Rational& a, const Rational& b, const Rational& c, int n, Family family) {
    if (n < 0) throw Error("triple sum degree must be nonnegative");
    CumulantPolynomial out(family);
    for (const Partition& mu : enumerate_partitions(n, 2)) {
        const int len = static_cast<int>(mu.length());
        const Integer p2 = power_sum_at(mu, 2);
        Rational coef;
        if (family == Family::R) {
            coef = Rational(factorial(len + 2)) / 2 * (a + b * n / 3 + c / 6 * (n * n + p2));
            for (int part : mu.parts()) coef *= part - 1;
        } else if (family == Family::Q) {
            Integer three_pow;
            mpz_ui_pow_ui(three_pow.get_mpz_t(), 3, static_cast<unsigned long>(len));
            coef = three_pow * (a + b * n / 3 + c / 9 * (n * n + 2 * p2));
        } else {
            throw Error("weighted_triple_sum is defined in the R and Q forms only");
        }
        out.add_term(mu, coef / multiplicity_factorial(mu));
    }
    return out;
}

}  // namespace kerovlab

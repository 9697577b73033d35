#include "kerovlab/sym_func.hpp"

#include <memory>

#include "kerovlab/concurrency.hpp"

namespace kerovlab {

char basis_letter(Basis b) noexcept {
    switch (b) {
        case Basis::m: return 'm';
        case Basis::p: return 'p';
        case Basis::e: return 'e';
        case Basis::h: return 'h';
    }
    return '?';
}

Basis parse_basis(std::string_view text) {
    if (text == "m") return Basis::m;
    if (text == "p") return Basis::p;
    if (text == "e") return Basis::e;
    if (text == "h") return Basis::h;
    throw Error("unknown basis '" + std::string(text) + "'");
}

void accumulate(TermMap& terms, const Partition& key, const Rational& coef) {
    if (coef == 0) return;
    auto [it, inserted] = terms.try_emplace(key, coef);
    if (inserted) {
        it->second.canonicalize();  // callers may pass unreduced fractions
        return;
    }
    it->second += coef;
    if (it->second == 0) terms.erase(it);
}

namespace {

// Product in a basis where b_mu * b_nu = b_{mu joined nu}.
TermMap concat_product(const TermMap& a, const TermMap& b) {
    TermMap out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) accumulate(out, ka.join(kb), ca * cb);
    return out;
}

void add_scaled(TermMap& into, const TermMap& from, const Rational& scale) {
    for (const auto& [k, c] : from) accumulate(into, k, c * scale);
}

// m_lambda * p_k: add k to one part of lambda (or to a new zero part); the
// coefficient is the multiplicity of the enlarged part in the result.
TermMap monomial_times_power_sum(const TermMap& f, int k) {
    TermMap out;
    for (const auto& [lambda, coef] : f) {
        std::vector<int> values;
        for (auto [part, mult] : lambda.multiplicities()) values.push_back(part);
        values.push_back(0);
        for (int v : values) {
            std::vector<int> parts = lambda.vec();
            if (v == 0)
                parts.push_back(k);
            else
                *std::find(parts.begin(), parts.end(), v) += k;
            Partition nu = Partition::from_unsorted(std::move(parts));
            accumulate(out, nu, coef * nu.multiplicity(v + k));
        }
    }
    return out;
}

using SharedTerms = std::shared_ptr<const TermMap>;

struct TransitionCaches {
    MemoTable<Partition, SharedTerms, PartitionHash> to_p[4];
    MemoTable<Partition, SharedTerms, PartitionHash> from_p[4];
};

TransitionCaches& caches() {
    static TransitionCaches instance;
    return instance;
}

int index_of(Basis b) { return static_cast<int>(b); }

TermMap single_generator_to_p(Basis from, int n) {
    TermMap out;
    for (const Partition& nu : enumerate_partitions(n)) {
        Rational coef(1, 1);
        coef /= z_factor(nu);
        if (from == Basis::e) coef *= epsilon(nu);
        accumulate(out, nu, coef);
    }
    return out;
}

// p_n = n sum eps u e_nu / l(nu)  and  p_n = -n sum (-1)^l u h_nu / l(nu).
TermMap power_sum_in_multiplicative(Basis to, int n) {
    TermMap out;
    for (const Partition& nu : enumerate_partitions(n)) {
        int len = static_cast<int>(nu.length());
        Rational coef(u_factor(nu) * n, len);
        coef.canonicalize();
        if (to == Basis::e)
            coef *= epsilon(nu);
        else
            coef *= (len % 2 == 0) ? -1 : 1;
        accumulate(out, nu, coef);
    }
    return out;
}

TermMap compute_to_p(Basis from, const Partition& index) {
    if (from == Basis::p || index.empty()) return TermMap{{index, Rational(1)}};
    if (from == Basis::m) {
        // p_lambda = prod m_i! m_lambda + (strictly shorter monomials).
        const TermMap& p_in_m = expand_from_p(Basis::m, index);
        TermMap out{{index, Rational(1)}};
        for (const auto& [nu, c] : p_in_m) {
            if (nu == index) continue;
            add_scaled(out, expand_to_p(Basis::m, nu), -c);
        }
        Rational lead = p_in_m.at(index);
        for (auto& [nu, c] : out) c /= lead;
        return out;
    }
    if (index.length() == 1) return single_generator_to_p(from, index[0]);
    return concat_product(expand_to_p(from, Partition{index[0]}), expand_to_p(from, index.without(index[0])));
}

TermMap compute_from_p(Basis to, const Partition& index) {
    if (to == Basis::p || index.empty()) return TermMap{{index, Rational(1)}};
    if (to == Basis::m) {
        int last = index.smallest();
        return monomial_times_power_sum(expand_from_p(Basis::m, index.without(last)), last);
    }
    if (index.length() == 1) return power_sum_in_multiplicative(to, index[0]);
    return concat_product(expand_from_p(to, Partition{index[0]}), expand_from_p(to, index.without(index[0])));
}

}  // namespace

const TermMap& expand_to_p(Basis from, const Partition& index) {
    return *caches().to_p[index_of(from)].get_or_compute(
        index, [&] { return std::make_shared<const TermMap>(compute_to_p(from, index)); });
}

const TermMap& expand_from_p(Basis to, const Partition& index) {
    return *caches().from_p[index_of(to)].get_or_compute(
        index, [&] { return std::make_shared<const TermMap>(compute_from_p(to, index)); });
}

SymFunc::SymFunc(Basis basis, TermMap terms) : basis_(basis), terms_(std::move(terms)) {
    std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
}

SymFunc SymFunc::constant(const Rational& c, Basis basis) {
    SymFunc f(basis);
    f.add_term(Partition(), c);
    return f;
}

SymFunc SymFunc::monomial(Basis basis, const Partition& index, const Rational& coef) {
    SymFunc f(basis);
    f.add_term(index, coef);
    return f;
}

Rational SymFunc::coefficient(const Partition& index) const {
    auto it = terms_.find(index);
    return it == terms_.end() ? Rational(0) : it->second;
}

int SymFunc::max_degree() const noexcept { return terms_.empty() ? -1 : terms_.begin()->first.weight(); }

SymFunc SymFunc::homogeneous_component(int degree) const {
    SymFunc out(basis_);
    for (const auto& [k, c] : terms_)
        if (k.weight() == degree) out.terms_.emplace(k, c);
    return out;
}

SymFunc& SymFunc::operator+=(const SymFunc& other) {
    const SymFunc& rhs = other.basis_ == basis_ ? other : convert(other, basis_);
    for (const auto& [k, c] : rhs.terms_) accumulate(terms_, k, c);
    return *this;
}

SymFunc& SymFunc::operator-=(const SymFunc& other) {
    return *this += other * Rational(-1);
}

SymFunc& SymFunc::operator*=(const Rational& scalar) {
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, c] : terms_) c *= scalar;
    return *this;
}

bool operator==(const SymFunc& a, const SymFunc& b) {
    if (a.basis_ == b.basis_) return a.terms_ == b.terms_;
    return convert(a, Basis::p).terms_ == convert(b, Basis::p).terms_;
}

std::string SymFunc::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        Rational shown = c;
        if (first) {
            if (c < 0) {
                out += "-";
                shown = -c;
            }
        } else {
            out += c < 0 ? " - " : " + ";
            if (c < 0) shown = -c;
        }
        out += kerovlab::to_string(shown) + "*" + basis_letter(basis_) + "[" + k.to_string() + "]";
        first = false;
    }
    return out;
}

nlohmann::ordered_json SymFunc::to_json() const {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const auto& [k, c] : terms_) terms.push_back({{"partition", k.vec()}, {"coef", kerovlab::to_string(c)}});
    return {{"basis", std::string(1, basis_letter(basis_))}, {"terms", std::move(terms)}};
}

SymFunc SymFunc::from_json(const nlohmann::ordered_json& j) {
    SymFunc f(parse_basis(j.at("basis").get<std::string>()));
    for (const auto& term : j.at("terms"))
        f.add_term(Partition::from_unsorted(term.at("partition").get<std::vector<int>>()),
                   parse_rational(term.at("coef").get<std::string>()));
    return f;
}

SymFunc convert(const SymFunc& f, Basis target) {
    if (f.basis() == target) return f;
    TermMap in_p;
    if (f.basis() == Basis::p)
        in_p = f.terms();
    else
        for (const auto& [k, c] : f.terms()) add_scaled(in_p, expand_to_p(f.basis(), k), c);
    if (target == Basis::p) return SymFunc(Basis::p, std::move(in_p));
    TermMap out;
    for (const auto& [k, c] : in_p) add_scaled(out, expand_from_p(target, k), c);
    return SymFunc(target, std::move(out));
}

SymFunc multiply(const SymFunc& f, const SymFunc& g) {
    SymFunc product(Basis::p, concat_product(convert(f, Basis::p).terms(), convert(g, Basis::p).terms()));
    return convert(product, f.basis());
}

Integer power_sum_at(const Partition& v, int k) {
    Integer sum = 0;
    for (int x : v.parts()) {
        Integer term;
        mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(x), static_cast<unsigned long>(k));
        sum += term;
    }
    return sum;
}

Rational evaluate_at_vector(const SymFunc& f, const Partition& v) {
    const SymFunc in_p = convert(f, Basis::p);
    std::map<int, Integer> power_sums;
    Rational total = 0;
    for (const auto& [mu, c] : in_p.terms()) {
        Integer prod = 1;
        for (int part : mu.parts()) {
            auto it = power_sums.find(part);
            if (it == power_sums.end()) it = power_sums.emplace(part, power_sum_at(v, part)).first;
            prod *= it->second;
        }
        total += c * prod;
    }
    return total;
}

Rational p_scalar_specialize(const Partition& mu, const Rational& t) {
    Rational out = 1;
    for (std::size_t i = 0; i < mu.length(); ++i) out *= t;
    return out;
}

Rational m_scalar_specialize(const Partition& mu, const Rational& t) {
    return falling_factorial(t, static_cast<int>(mu.length())) / multiplicity_factorial(mu);
}

SymFunc phi_hat(const Rational& a, const Rational& b, const Rational& c, int n) {
    SymFunc f(Basis::p);
    Rational constant = a / 2 + b * n / 6 + c * n * n / 12;
    f.add_term(Partition(), constant);
    f.add_term(Partition{2}, c / 12);
    return f;
}

}  // namespace kerovlab

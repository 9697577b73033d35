#include "kerovlab/conjectures.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include "kerovlab/concurrency.hpp"
#include "kerovlab/linear_solve.hpp"

#ifndef KEROVLAB_DATA_DIR
#define KEROVLAB_DATA_DIR "tables"
#endif

namespace kerovlab {

namespace fs = std::filesystem;

std::string_view table_name(TableKind kind) noexcept {
    switch (kind) {
        case TableKind::f2: return "f2";
        case TableKind::g2: return "g2";
        case TableKind::F2: return "F2";
        case TableKind::c3: return "c3";
        case TableKind::c4: return "c4";
        case TableKind::a3: return "a3";
    }
    return "?";
}

TableKind parse_table_kind(std::string_view text) {
    for (TableKind k : {TableKind::f2, TableKind::g2, TableKind::F2, TableKind::c3, TableKind::c4, TableKind::a3})
        if (table_name(k) == text) return k;
    throw Error("unknown table '" + std::string(text) + "'");
}

SymFunc CoefficientTable::as_symfunc() const {
    SymFunc f(Basis::m);
    for (const auto& [rho, value] : entries) f.add_term(rho, Rational(value) / scale);
    return f;
}

int CoefficientTable::k() const noexcept {
    switch (kind) {
        case TableKind::c3:
        case TableKind::a3: return 3;
        case TableKind::c4: return 4;
        default: return 2;
    }
}

Family CoefficientTable::family() const noexcept {
    switch (kind) {
        case TableKind::g2:
        case TableKind::a3: return Family::Q;
        case TableKind::F2: return Family::C;
        default: return Family::R;
    }
}

fs::path default_data_dir() {
    if (const char* env = std::getenv("KEROVLAB_DATA"); env != nullptr && *env != '\0') return fs::path(env);
    return fs::path(KEROVLAB_DATA_DIR);
}

std::string sha256_hex(const fs::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("cannot read " + file.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw Error("sha256 unavailable");
    std::array<char, 8192> buffer{};
    while (in) {
        in.read(buffer.data(), buffer.size());
        EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

bool ChecksumReport::ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.ok; });
}

nlohmann::ordered_json ChecksumReport::to_json() const {
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const auto& e : entries)
        files.push_back({{"file", e.file}, {"expected", e.expected}, {"actual", e.actual}, {"ok", e.ok}});
    return {{"ok", ok()}, {"files", std::move(files)}};
}

namespace {

nlohmann::ordered_json read_json(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw Error("cannot read " + file.string());
    try {
        return nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::ordered_json::exception& e) {
        throw Error("malformed JSON in " + file.string() + ": " + e.what());
    }
}

std::string file_for(TableKind kind) {
    switch (kind) {
        case TableKind::c3: return "c3.csv";
        case TableKind::c4: return "c4.csv";
        case TableKind::a3: return "a3.csv";
        default: return "closed_forms.json";
    }
}

void require_checksum(const fs::path& data_dir, const std::string& file) {
    const nlohmann::ordered_json sums = read_json(data_dir / "checksums.json");
    const auto& files = sums.at("files");
    if (!files.contains(file)) throw ChecksumError("no recorded checksum for " + file);
    const std::string expected = files.at(file).get<std::string>();
    const std::string actual = sha256_hex(data_dir / file);
    if (expected != actual) throw ChecksumError("checksum mismatch for " + file + ": expected " + expected + ", got " + actual);
}

Integer table_scale(TableKind kind) {
    switch (kind) {
        case TableKind::f2: return 5760;
        case TableKind::g2: return 8640;
        case TableKind::F2: return 2880;
        case TableKind::c3: return 2 * factorial(6) * factorial(8);
        case TableKind::c4: return 2 * factorial(8) * factorial(12);
        case TableKind::a3: return 500 * factorial(5) * factorial(7);
    }
    return 1;
}

}  // namespace

ChecksumReport verify_checksums(const fs::path& data_dir) {
    ChecksumReport report;
    const nlohmann::ordered_json sums = read_json(data_dir / "checksums.json");
    for (const auto& [file, expected] : sums.at("files").items()) {
        ChecksumReport::Entry entry{file, expected.get<std::string>(), "", false};
        try {
            entry.actual = sha256_hex(data_dir / file);
        } catch (const Error&) {
            entry.actual = "unreadable";
        }
        entry.ok = entry.actual == entry.expected;
        report.entries.push_back(std::move(entry));
    }
    return report;
}

CoefficientTable load_table(TableKind kind, const fs::path& data_dir) {
    const std::string file = file_for(kind);
    require_checksum(data_dir, file);
    CoefficientTable table{kind, table_scale(kind), {}};
    if (file == "closed_forms.json") {
        const nlohmann::ordered_json forms = read_json(data_dir / file);
        const auto& entry = forms.at(std::string(table_name(kind)));
        if (Integer(entry.at("scale").get<long>()) != table.scale) throw Error("scale mismatch for " + file);
        for (const auto& row : entry.at("m_form"))
            table.entries.emplace_back(Partition::parse(row.at(0).get<std::string>()), Integer(row.at(1).get<long>()));
        return table;
    }
    std::ifstream in(data_dir / file);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto split = line.find(';');
        if (split == std::string::npos) throw Error(file + ":" + std::to_string(line_no) + ": expected 'partition;integer'");
        Integer value;
        if (value.set_str(line.substr(split + 1), 10) != 0)
            throw Error(file + ":" + std::to_string(line_no) + ": malformed integer");
        table.entries.emplace_back(Partition::parse(line.substr(0, split)), value);
    }
    return table;
}

SymFunc closed_form_p(TableKind kind, const fs::path& data_dir) {
    require_checksum(data_dir, "closed_forms.json");
    const nlohmann::ordered_json forms = read_json(data_dir / "closed_forms.json");
    const auto& entry = forms.at(std::string(table_name(kind)));
    const Rational scale(entry.at("scale").get<long>());
    SymFunc f(Basis::p);
    for (const auto& row : entry.at("p_form"))
        f.add_term(Partition::parse(row.at(0).get<std::string>()), Rational(row.at(1).get<long>()) / scale);
    return f;
}

Rational structural_factor_f(int k, int r, const Partition& mu) {
    Rational factor(binomial(r + 1, 3) * factorial(static_cast<int>(mu.length()) + 2 * k - 2));
    for (int part : mu.parts()) factor *= part - 1;
    return factor / multiplicity_factorial(mu);
}

Rational structural_factor_g(int k, int r, const Partition& mu) {
    Integer power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(2 * k - 1), mu.length());
    return Rational(binomial(r + 1, 3) * power) / multiplicity_factorial(mu);
}

Rational structural_factor_F(int k, int r, const Partition& mu) {
    const int slots = 2 * k - 1;
    const int len = static_cast<int>(mu.length());
    if (len > slots) return 0;
    // Distinct arrangements of mu padded with zeros into the slots.
    Integer arrangements = factorial(slots) / (factorial(slots - len) * multiplicity_factorial(mu));
    return Rational(binomial(r + 1, 3) * arrangements);
}

namespace {

int component_weight(int k, int r) {
    if (k < 1) throw Error("k must be at least 1");
    const int n = r - 2 * k + 1;
    if (n < 0) throw Error("component K_{r,r-2k+1} needs r - 2k + 1 >= 0");
    return n;
}

template <typename Factor>
CumulantPolynomial predicted_by_factor(Family family, int k, int r, const SymFunc& fn, Factor factor) {
    const int n = component_weight(k, r);
    const SymFunc in_p = convert(fn, Basis::p);
    CumulantPolynomial out(family);
    for (const Partition& mu : enumerate_partitions(n, 2)) out.add_term(mu, factor(k, r, mu) * evaluate_at_vector(in_p, mu));
    return out;
}

void compositions(int total, int slots, std::vector<int>& prefix, const std::function<void(const std::vector<int>&)>& visit) {
    if (slots == 1) {
        prefix.push_back(total);
        visit(prefix);
        prefix.pop_back();
        return;
    }
    for (int first = 0; first <= total; ++first) {
        prefix.push_back(first);
        compositions(total - first, slots - 1, prefix, visit);
        prefix.pop_back();
    }
}

}  // namespace

CumulantPolynomial predicted_component_f(int k, int r, const SymFunc& f_k) {
    return predicted_by_factor(Family::R, k, r, f_k, structural_factor_f);
}

CumulantPolynomial predicted_component_g(int k, int r, const SymFunc& g_k) {
    return predicted_by_factor(Family::Q, k, r, g_k, structural_factor_g);
}

CumulantPolynomial predicted_component_F(int k, int r, const SymFunc& F_k) {
    const int n = component_weight(k, r);
    const SymFunc in_p = convert(F_k, Basis::p);
    const Rational scale(binomial(r + 1, 3));
    CumulantPolynomial out(Family::C);
    std::vector<int> prefix;
    compositions(n, 2 * k - 1, prefix, [&](const std::vector<int>& nu) {
        if (std::find(nu.begin(), nu.end(), 1) != nu.end()) return;  // C_1 = 0
        const Partition index = Partition::from_unsorted(nu);
        out.add_term(index, scale * evaluate_at_vector(in_p, index));
    });
    return out;
}

nlohmann::ordered_json ExtractionReport::to_json() const {
    nlohmann::ordered_json residuals = nlohmann::ordered_json::array();
    for (const auto& [r, mu] : residual_rows) residuals.push_back({{"r", r}, {"partition", mu.vec()}});
    return {{"target", std::string(1, target)},
            {"k", k},
            {"r_min", r_min},
            {"r_max", r_max},
            {"unknown_count", unknown_count},
            {"equation_count", equation_count},
            {"system_rank", system_rank},
            {"consistent", consistent},
            {"unique", unique()},
            {"residual_rows", std::move(residuals)},
            {"solution", solution.to_json()},
            {"solution_text", solution.to_string()}};
}

ExtractionReport extract_symfunc(char target, int k, int r_min, int r_max, KerovProvider& provider) {
    if (target != 'f' && target != 'g' && target != 'F') throw Error("extraction target must be f, g or F");
    if (k < 1) throw Error("k must be at least 1");
    r_min = std::max(r_min, 2 * k - 1 + 2);
    if (r_min > r_max) throw Error("empty r range for extraction");

    ExtractionReport report;
    report.target = target;
    report.k = k;
    report.r_min = r_min;
    report.r_max = r_max;

    const std::vector<Partition> unknowns = partitions_in_weight_range(0, 4 * (k - 1));
    report.unknown_count = unknowns.size();

    std::vector<int> rs;
    for (int r = r_min; r <= r_max; ++r) rs.push_back(r);
    provider.prefetch(rs);

    const Family family = target == 'f' ? Family::R : target == 'g' ? Family::Q : Family::C;
    std::vector<std::vector<Rational>> matrix;
    std::vector<Rational> rhs;
    std::vector<std::pair<int, Partition>> row_labels;
    std::vector<std::pair<int, Partition>> structural_violations;
    for (int r : rs) {
        const int n = r - 2 * k + 1;
        const CumulantPolynomial component = change_generators(graded_component(provider.get(r), n), family);
        for (const Partition& mu : enumerate_partitions(n, 2)) {
            const Rational coef = component.coefficient(mu);
            const Rational factor = target == 'f'   ? structural_factor_f(k, r, mu)
                                    : target == 'g' ? structural_factor_g(k, r, mu)
                                                    : structural_factor_F(k, r, mu);
            if (factor == 0) {
                if (coef != 0) structural_violations.emplace_back(r, mu);
                continue;
            }
            std::vector<Rational> row;
            row.reserve(unknowns.size());
            for (const Partition& rho : unknowns) row.push_back(evaluate_at_vector(SymFunc::monomial(Basis::m, rho), mu));
            matrix.push_back(std::move(row));
            rhs.push_back(coef / factor);
            row_labels.emplace_back(r, mu);
        }
    }
    report.equation_count = matrix.size();
    const SystemAnalysis analysis = analyze_system(matrix, rhs, unknowns.size());
    report.system_rank = analysis.rank;
    for (std::size_t i : analysis.residual_rows) report.residual_rows.push_back(row_labels[i]);
    report.residual_rows.insert(report.residual_rows.end(), structural_violations.begin(), structural_violations.end());
    report.consistent = report.residual_rows.empty();
    for (std::size_t j = 0; j < unknowns.size(); ++j) report.solution.add_term(unknowns[j], analysis.solution[j]);
    return report;
}

bool TableVerification::pass() const {
    return std::all_of(results.begin(), results.end(), [](const PerR& p) { return p.pass; });
}

nlohmann::ordered_json TableVerification::to_json() const {
    nlohmann::ordered_json per_r = nlohmann::ordered_json::array();
    for (const auto& p : results) {
        nlohmann::ordered_json item = {{"r", p.r}, {"pass", p.pass}, {"terms_compared", p.terms_compared}};
        if (p.first_mismatch) {
            const auto& [mu, values] = *p.first_mismatch;
            item["first_mismatch"] = {{"partition", mu.vec()},
                                      {"predicted", to_string(values.first)},
                                      {"computed", to_string(values.second)}};
        }
        per_r.push_back(std::move(item));
    }
    return {{"table", std::string(table_name(kind))}, {"pass", pass()}, {"results", std::move(per_r)}};
}

TableVerification verify_table(const CoefficientTable& table, int r_min, int r_max, KerovProvider& provider) {
    TableVerification out{table.kind, {}};
    const int k = table.k();
    const SymFunc fn = table.as_symfunc();
    std::vector<int> rs;
    for (int r = std::max(r_min, 2 * k - 1); r <= r_max; ++r) rs.push_back(r);
    provider.prefetch(rs);
    out.results.resize(rs.size());
    parallel_for(rs.size(), [&](std::size_t i) {
        const int r = rs[i];
        const int n = r - 2 * k + 1;
        const CumulantPolynomial computed = change_generators(graded_component(provider.get(r), n), table.family());
        CumulantPolynomial predicted(table.family());
        switch (table.family()) {
            case Family::R: predicted = predicted_component_f(k, r, fn); break;
            case Family::Q: predicted = predicted_component_g(k, r, fn); break;
            case Family::C: predicted = predicted_component_F(k, r, fn); break;
        }
        std::set<Partition, CanonicalOrder> keys;
        for (const auto& [mu, c] : computed.terms()) keys.insert(mu);
        for (const auto& [mu, c] : predicted.terms()) keys.insert(mu);
        TableVerification::PerR result{r, true, std::nullopt, keys.size()};
        for (const Partition& mu : keys) {
            const Rational want = predicted.coefficient(mu), got = computed.coefficient(mu);
            if (want != got) {
                result.pass = false;
                result.first_mismatch = std::make_pair(mu, std::make_pair(want, got));
                break;
            }
        }
        out.results[i] = std::move(result);
    });
    return out;
}

nlohmann::ordered_json PositivityReport::to_json() const {
    nlohmann::ordered_json neg = nlohmann::ordered_json::array();
    for (const auto& [mu, c] : negative) neg.push_back({{"partition", mu.vec()}, {"coef", to_string(c)}});
    nlohmann::ordered_json out = {{"positive", positive},
                          {"zero", zero},
                          {"negative_count", negative_count},
                          {"negative", std::move(neg)},
                          {"all_nonnegative", all_nonnegative()}};
    if (constant) out["constant"] = to_string(*constant);
    return out;
}

PositivityReport positivity_report(const SymFunc& f) {
    PositivityReport report;
    report.constant = f.coefficient(Partition());
    for (const Partition& rho : partitions_in_weight_range(1, std::max(f.max_degree(), 0))) {
        const Rational c = f.coefficient(rho);
        if (c > 0) {
            ++report.positive;
        } else if (c == 0) {
            ++report.zero;
        } else {
            ++report.negative_count;
            report.negative.emplace_back(rho, c);
        }
    }
    return report;
}

PositivityReport positivity_report(const CumulantPolynomial& poly) {
    PositivityReport report;
    for (const auto& [mu, c] : poly.terms()) {
        if (c > 0) {
            ++report.positive;
        } else {
            ++report.negative_count;
            report.negative.emplace_back(mu, c);
        }
    }
    return report;
}

}  // namespace kerovlab

#include "kerovlab/cli.hpp"

#include <algorithm>
#include <atomic>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kerovlab/characters.hpp"
#include "kerovlab/concurrency.hpp"
#include "kerovlab/conjectures.hpp"
#include "kerovlab/cumulants.hpp"
#include "kerovlab/identities.hpp"
#include "kerovlab/kerov.hpp"
#include "kerovlab/kerov_cache.hpp"

namespace kerovlab::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

const std::vector<std::string> kSuites = {"conj3",        "conj4",        "conj8",        "closed-forms", "positivity-R",
                                          "positivity-C", "positivity-Q", "kerov-theorem", "lemmas"};

Json integer_json(const Integer& value) {
    if (value.fits_slong_p()) return value.get_si();
    return value.get_str();
}

struct SuiteResult {
    Json report;
    bool pass = true;
    std::string summary;
};

SymFunc truncate_length(const SymFunc& f, std::size_t max_length) {
    SymFunc out(f.basis());
    for (const auto& [mu, c] : f.terms())
        if (mu.length() <= max_length) out.add_term(mu, c);
    return out;
}

std::string range_text(int lo, int hi) { return std::to_string(lo) + ".." + std::to_string(hi); }

SuiteResult table_suite(TableKind kind, int r_min, int r_max, const fs::path& data_dir, KerovProvider& provider) {
    const CoefficientTable table = load_table(kind, data_dir);
    const TableVerification v = verify_table(table, r_min, r_max, provider);
    SuiteResult out{v.to_json(), v.pass(), ""};
    out.report["entries"] = table.entries.size();
    std::ostringstream s;
    s << table_name(kind) << " table (" << table.entries.size() << " entries), r " << range_text(r_min, r_max) << ": ";
    if (v.pass()) {
        s << "all components match";
    } else {
        for (const auto& p : v.results)
            if (!p.pass && p.first_mismatch) {
                s << "mismatch at r=" << p.r << " index " << p.first_mismatch->first.to_string();
                break;
            }
    }
    out.summary = s.str();
    return out;
}

SuiteResult closed_forms_suite(int r_max, const fs::path& data_dir, KerovProvider& provider) {
    SuiteResult out;
    Json checks = Json::array();
    auto record = [&](const std::string& name, int r, bool ok) {
        checks.push_back({{"check", name}, {"r", r}, {"pass", ok}});
        out.pass = out.pass && ok;
    };
    std::vector<int> rs;
    for (int r = 3; r <= r_max; ++r) rs.push_back(r);
    provider.prefetch(rs);
    for (int r = 3; r <= r_max; ++r) {
        const KerovPolynomial& k = provider.get(r);
        record("krr1", r, graded_component(k, r - 1) == krr1_closed_form(r));
        if (r >= 5) record("krr3", r, graded_component(k, r - 3) == krr3_closed_form(r));
    }
    Json tables = Json::array();
    for (TableKind kind : {TableKind::f2, TableKind::g2, TableKind::F2}) {
        const CoefficientTable table = load_table(kind, data_dir);
        // F_k is only evaluated on 2k-1 variables, so its two forms need only agree there.
        const std::size_t variables = kind == TableKind::F2 ? 3 : std::numeric_limits<std::size_t>::max();
        const bool forms_agree = truncate_length(convert(closed_form_p(kind, data_dir), Basis::m), variables).terms() ==
                                 truncate_length(table.as_symfunc(), variables).terms();
        record(std::string(table_name(kind)) + "-p-form", 0, forms_agree);
        if (r_max >= 5) {
            const TableVerification v = verify_table(table, 5, r_max, provider);
            tables.push_back(v.to_json());
            out.pass = out.pass && v.pass();
        }
    }
    const PositivityReport f2_sign = positivity_report(load_table(TableKind::F2, data_dir).as_symfunc());
    out.report = {{"suite", "closed-forms"},
                  {"r_max", r_max},
                  {"checks", std::move(checks)},
                  {"tables", std::move(tables)},
                  {"F2_m_positivity", f2_sign.to_json()}};
    out.summary = std::string("closed forms through r=") + std::to_string(r_max) + (out.pass ? ": all agree" : ": disagreement found") +
                  "; F2 has " + std::to_string(f2_sign.negative_count) + " negative m-coefficients (expected, reported only)";
    return out;
}

SuiteResult positivity_suite(Family family, int r_max, KerovProvider& provider) {
    SuiteResult out;
    std::vector<int> rs;
    for (int r = 2; r <= r_max; ++r) rs.push_back(r);
    provider.prefetch(rs);
    Json per_r = Json::array();
    std::string first_offender;
    for (int r : rs) {
        const KerovPolynomial& k = provider.get(r);
        Json item = {{"r", r}};
        Json offenders = Json::array();
        auto flag = [&](const Partition& mu, const Rational& c, const std::string& why) {
            offenders.push_back({{"partition", mu.vec()}, {"coef", to_string(c)}, {"reason", why}});
            if (first_offender.empty())
                first_offender = "r=" + std::to_string(r) + " " + family_letter(family) + "[" + mu.to_string() + "] = " + to_string(c);
        };
        if (family == Family::R) {
            for (const auto& [mu, c] : k.non_integral) flag(mu, c, "non-integral");
            for (const auto& [mu, c] : k.negative) flag(mu, c, "negative");
            item["terms"] = k.poly.terms().size();
        } else {
            std::size_t terms = 0;
            for (int kk = 1; r - 2 * kk + 1 >= 0; ++kk) {
                const CumulantPolynomial comp = change_generators(graded_component(k, r - 2 * kk + 1), family);
                terms += comp.terms().size();
                for (const auto& [mu, c] : comp.terms())
                    if (c < 0) flag(mu, c, "negative");
            }
            item["terms"] = terms;
        }
        item["pass"] = offenders.empty();
        item["offenders"] = std::move(offenders);
        out.pass = out.pass && item["pass"].get<bool>();
        per_r.push_back(std::move(item));
    }
    const std::string name = std::string("positivity-") + family_letter(family);
    out.report = {{"suite", name}, {"pass", out.pass}, {"results", std::move(per_r)}};
    out.summary = name + " for 2 <= r <= " + std::to_string(r_max) + (out.pass ? ": no violations" : ": violation " + first_offender);
    return out;
}

SuiteResult kerov_theorem_suite(int r_max, int lambda_max, KerovProvider& provider) {
    SuiteResult out;
    std::vector<int> rs;
    for (int r = 2; r <= r_max; ++r) rs.push_back(r);
    provider.prefetch(rs);
    const std::vector<Partition> diagrams = partitions_in_weight_range(1, lambda_max);
    Json per_r = Json::array();
    std::string first_failure;
    for (int r : rs) {
        const KerovPolynomial& k = provider.get(r);
        std::vector<char> ok(diagrams.size(), 1);
        std::atomic<std::size_t> checked{0};
        parallel_for(diagrams.size(), [&](std::size_t i) {
            const Partition& lambda = diagrams[i];
            if (lambda.weight() < r) return;
            ++checked;
            ok[i] = evaluate_at_diagram(k.poly, lambda) == normalized_character(lambda, r);
        });
        Json failures = Json::array();
        for (std::size_t i = 0; i < diagrams.size(); ++i)
            if (!ok[i]) {
                failures.push_back(diagrams[i].to_string());
                if (first_failure.empty()) first_failure = "r=" + std::to_string(r) + " lambda=" + diagrams[i].to_string();
            }
        out.pass = out.pass && failures.empty();
        per_r.push_back({{"r", r}, {"diagrams", checked.load()}, {"pass", failures.empty()}, {"failures", std::move(failures)}});
    }
    out.report = {{"suite", "kerov-theorem"}, {"lambda_max", lambda_max}, {"pass", out.pass}, {"results", std::move(per_r)}};
    out.summary = "K_r(free cumulants) against characters, r <= " + std::to_string(r_max) + ", |lambda| <= " +
                  std::to_string(lambda_max) + (out.pass ? ": exact agreement" : ": disagreement at " + first_failure);
    return out;
}

SuiteResult identity_suite(int n_max, int draws) {
    SuiteResult out;
    std::vector<IdentityCheck> checks = check_triple_identities(n_max);
    const std::vector<IdentityCheck> sums = check_weighted_triple_sums(n_max, draws);
    checks.insert(checks.end(), sums.begin(), sums.end());
    const std::vector<IdentityCheck> trips = check_basis_roundtrips(std::min(n_max, 8));
    checks.insert(checks.end(), trips.begin(), trips.end());
    std::size_t failed = 0;
    for (const auto& c : checks) failed += c.pass ? 0 : 1;
    out.pass = failed == 0;
    out.report = {{"suite", "lemmas"}, {"n_max", n_max}, {"pass", out.pass}, {"checks", identity_checks_json(checks)}};
    out.summary = "identity suite through n=" + std::to_string(n_max) + ": " + std::to_string(checks.size() - failed) + "/" +
                  std::to_string(checks.size()) + " checks hold";
    return out;
}

KerovProvider make_provider(const RunConfig& config) {
    KerovProvider::Options options;
    options.cache_dir = config.cache_dir ? config.cache_dir : KerovProvider::cache_dir_from_env();
    options.interpolation.max_sample_weight = config.budget;
    options.interpolation.jobs = config.jobs;
    return KerovProvider(options);
}

fs::path data_dir_of(const RunConfig& config) { return config.data_dir ? *config.data_dir : default_data_dir(); }

void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

int run_kerov(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.r < 2) throw CLI::ValidationError("--r", "r must be at least 2");
    if (config.out_format != "json" && config.out_format != "csv" && config.out_format != "text")
        throw CLI::ValidationError("--out", "expected json, csv or text");
    KerovProvider provider = make_provider(config);
    const KerovPolynomial& k = provider.get(config.r);
    const Family family = parse_family(config.basis);
    CumulantPolynomial poly = config.component ? graded_component(k, *config.component) : k.poly;
    poly = change_generators(poly, family);
    if (config.out_format == "json") {
        Json j = {{"r", config.r}};
        if (family != Family::R) j["basis"] = std::string(1, family_letter(family));
        if (config.component) j["component"] = *config.component;
        j["terms"] = poly.terms_json();
        emit(out, j);
    } else if (config.out_format == "csv") {
        out << "partition;coef\n";
        for (const auto& [mu, c] : poly.terms()) out << mu.to_string() << ';' << to_string(c) << '\n';
    } else {
        out << poly.to_string() << '\n';
    }
    err << "K_" << config.r << ": " << poly.terms().size() << " terms in the " << family_letter(family) << " family ("
        << k.unknowns << " unknowns, " << k.rows_examined << " diagrams examined up to size " << k.max_sample_weight << ")\n";
    return ExitCode::pass;
}

int run_cumulants(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.max_k < 2) throw CLI::ValidationError("--max-k", "max-k must be at least 2");
    const Partition lambda = Partition::parse(config.lambda);
    const CumulantVector cumulants = free_cumulants(lambda, config.max_k);
    Json values = Json::object();
    for (int k = 2; k <= config.max_k; ++k) values[std::to_string(k)] = to_string(cumulants[k]);
    emit(out, {{"lambda", lambda.to_string()}, {"R", std::move(values)}});
    err << "free cumulants R_2..R_" << config.max_k << " of (" << lambda.to_string() << ")\n";
    return ExitCode::pass;
}

int run_character(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const Partition lambda = Partition::parse(config.lambda);
    if (config.r < 1 || config.r > lambda.weight())
        throw CLI::ValidationError("--r", "need 1 <= r <= |lambda|");
    std::vector<int> cycle(static_cast<std::size_t>(lambda.weight() - config.r), 1);
    cycle.insert(cycle.begin(), config.r);
    const Integer raw = mn_character(lambda, Partition::from_unsorted(cycle));
    const Rational normalized = normalized_character(lambda, config.r);
    emit(out, {{"lambda", lambda.to_string()},
               {"r", config.r},
               {"normalized", to_string(normalized)},
               {"dim", integer_json(dimension(lambda))},
               {"raw", integer_json(raw)}});
    err << "normalized character of (" << lambda.to_string() << ") on an " << config.r << "-cycle: " << to_string(normalized) << '\n';
    return ExitCode::pass;
}

int run_extract(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.family.size() != 1 || std::string("fgF").find(config.family) == std::string::npos)
        throw CLI::ValidationError("--family", "expected f, g or F");
    if (config.k < 1) throw CLI::ValidationError("--k", "k must be at least 1");
    const int r_min = config.r_min.value_or(2 * config.k + 1);
    const int r_max = config.r_max.value_or(r_min + 7);
    if (r_min > r_max) throw CLI::ValidationError("--r-min", "empty r range");
    KerovProvider provider = make_provider(config);
    const ExtractionReport report = extract_symfunc(config.family[0], config.k, r_min, r_max, provider);
    emit(out, report.to_json());
    err << config.family << "_" << config.k << " from r " << range_text(report.r_min, report.r_max) << ": rank "
        << report.system_rank << " of " << report.unknown_count << " unknowns, " << report.equation_count << " equations, "
        << (report.consistent ? "consistent" : "INCONSISTENT") << (report.unique() ? ", unique" : ", not unique") << '\n';
    if (report.consistent) err << "  " << report.solution.to_string() << '\n';
    return report.consistent ? ExitCode::pass : ExitCode::finding;
}

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (std::find(kSuites.begin(), kSuites.end(), config.suite) == kSuites.end())
        throw CLI::ValidationError("--suite", "unknown suite " + config.suite);
    KerovProvider provider = make_provider(config);
    const fs::path data = data_dir_of(config);
    auto bound = [&](int fallback) { return config.r_max.value_or(fallback); };
    SuiteResult result;
    const std::string& s = config.suite;
    if (s == "conj3") {
        result = table_suite(TableKind::c3, config.r_min.value_or(7), bound(13), data, provider);
    } else if (s == "conj8") {
        result = table_suite(TableKind::a3, config.r_min.value_or(7), bound(13), data, provider);
    } else if (s == "conj4") {
        result = table_suite(TableKind::c4, config.r_min.value_or(9), bound(12), data, provider);
    } else if (s == "closed-forms") {
        result = closed_forms_suite(bound(12), data, provider);
    } else if (s == "positivity-R") {
        result = positivity_suite(Family::R, bound(12), provider);
    } else if (s == "positivity-C") {
        result = positivity_suite(Family::C, bound(12), provider);
    } else if (s == "positivity-Q") {
        result = positivity_suite(Family::Q, bound(12), provider);
    } else if (s == "kerov-theorem") {
        result = kerov_theorem_suite(bound(8), config.lambda_max, provider);
    } else {
        result = identity_suite(bound(10), config.draws);
    }
    emit(out, result.report);
    err << (result.pass ? "PASS " : "FAIL ") << result.summary << '\n';
    return result.pass ? ExitCode::pass : ExitCode::finding;
}

int run_selftest(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const fs::path data = data_dir_of(config);
    const ChecksumReport sums = verify_checksums(data);
    if (!sums.ok()) {
        emit(out, {{"selftest", "checksums"}, {"pass", false}, {"checksums", sums.to_json()}});
        for (const auto& e : sums.entries)
            if (!e.ok) err << "checksum mismatch: " << (data / e.file).string() << '\n';
        return ExitCode::failure;
    }
    KerovProvider provider = make_provider(config);
    std::vector<SuiteResult> parts;
    parts.push_back(identity_suite(6, 3));
    parts.push_back(kerov_theorem_suite(6, 8, provider));
    parts.push_back(closed_forms_suite(8, data, provider));
    parts.push_back(positivity_suite(Family::R, 8, provider));
    parts.push_back(positivity_suite(Family::C, 8, provider));
    parts.push_back(positivity_suite(Family::Q, 8, provider));

    // Cumulant symmetries on small diagrams.
    bool cumulants_ok = true;
    for (const Partition& lambda : partitions_in_weight_range(1, 7)) {
        const CumulantVector a = free_cumulants(lambda, 8), b = free_cumulants(conjugate(lambda), 8);
        cumulants_ok = cumulants_ok && a[2] == lambda.weight();
        for (int k = 2; k <= 8; ++k) cumulants_ok = cumulants_ok && b[k] == (k % 2 == 0 ? a[k] : -a[k]);
    }
    parts.push_back({Json{{"suite", "cumulant-symmetry"}, {"pass", cumulants_ok}}, cumulants_ok,
                     "R_2 = |lambda| and conjugation symmetry for |lambda| <= 7"});

    bool pass = true;
    Json reports = Json::array();
    for (const auto& p : parts) {
        pass = pass && p.pass;
        reports.push_back(p.report);
        err << (p.pass ? "PASS " : "FAIL ") << p.summary << '\n';
    }
    emit(out, {{"selftest", "full"}, {"pass", pass}, {"checksums", sums.to_json()}, {"suites", std::move(reports)}});
    return pass ? ExitCode::pass : ExitCode::finding;
}

}  // namespace

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                                    int& exit_code) {
    RunConfig config;
    CLI::App app{"Exact computations with Kerov character polynomials", "kerovlab"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::string cache_dir, data_dir;
    auto add_globals = [&](CLI::App* sub) {
        sub->add_option("--cache-dir", cache_dir, "Directory for cached K_r (default: $KEROVLAB_CACHE)");
        sub->add_option("--data-dir", data_dir, "Directory holding the coefficient tables");
        sub->add_option("--jobs", config.jobs, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
        sub->add_option("--budget", config.budget, "Largest diagram size sampled when interpolating K_r (0 = 2r+8)")
            ->check(CLI::NonNegativeNumber);
    };

    int component = -1, r_min = -1, r_max = -1;

    CLI::App* kerov = app.add_subcommand("kerov", "Print K_r in the R, C or Q family");
    kerov->add_option("--r", config.r, "Index r >= 2")->required();
    kerov->add_option("--basis", config.basis, "Generator family")->check(CLI::IsMember({"R", "C", "Q"}));
    kerov->add_option("--component", component, "Only the weight-S part")->check(CLI::NonNegativeNumber);
    kerov->add_option("--out", config.out_format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    add_globals(kerov);

    CLI::App* cumulants = app.add_subcommand("cumulants", "Free cumulants of a diagram");
    cumulants->add_option("--lambda", config.lambda, "Partition, e.g. \"3,1\"")->required();
    cumulants->add_option("--max-k", config.max_k, "Highest cumulant");
    add_globals(cumulants);

    CLI::App* character = app.add_subcommand("character", "Normalized character on an r-cycle");
    character->add_option("--lambda", config.lambda, "Partition, e.g. \"3,1\"")->required();
    character->add_option("--r", config.r, "Cycle length")->required();
    add_globals(character);

    CLI::App* extract = app.add_subcommand("extract", "Solve for f_k, g_k or F_k from computed components");
    extract->add_option("--family", config.family, "f, g or F")->check(CLI::IsMember({"f", "g", "F"}));
    extract->add_option("--k", config.k, "Index k >= 1")->check(CLI::PositiveNumber);
    extract->add_option("--r-min", r_min, "Smallest r used");
    extract->add_option("--r-max", r_max, "Largest r used");
    add_globals(extract);

    CLI::App* verify = app.add_subcommand("verify", "Run one verification suite");
    verify->add_option("--suite", config.suite, "Suite name")->required()->check(CLI::IsMember(kSuites));
    verify->add_option("--r-min", r_min, "Smallest r (table suites)");
    verify->add_option("--r-max", r_max, "Largest r, or largest n for the identity suite");
    verify->add_option("--lambda-max", config.lambda_max, "Largest diagram size (kerov-theorem)");
    verify->add_option("--draws", config.draws, "Random parameter draws per n (lemmas)");
    add_globals(verify);

    CLI::App* selftest = app.add_subcommand("selftest", "Checksums plus the invariant suites at small scale");
    add_globals(selftest);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        exit_code = app.exit(e, out, err);
        if (exit_code != 0) {
            exit_code = ExitCode::failure;
            err << app.help();
        }
        return std::nullopt;
    }
    config.subcommand = app.get_subcommands().front()->get_name();
    if (component >= 0) config.component = component;
    if (r_min >= 0) config.r_min = r_min;
    if (r_max >= 0) config.r_max = r_max;
    if (!cache_dir.empty()) config.cache_dir = fs::path(cache_dir);
    if (!data_dir.empty()) config.data_dir = fs::path(data_dir);
    exit_code = ExitCode::pass;
    return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        if (config.jobs != 0) set_default_jobs(config.jobs);
        if (config.subcommand == "kerov") return run_kerov(config, out, err);
        if (config.subcommand == "cumulants") return run_cumulants(config, out, err);
        if (config.subcommand == "character") return run_character(config, out, err);
        if (config.subcommand == "extract") return run_extract(config, out, err);
        if (config.subcommand == "verify") return run_verify(config, out, err);
        if (config.subcommand == "selftest") return run_selftest(config, out, err);
        err << "unknown subcommand '" << config.subcommand << "'\n";
    } catch (const CLI::ValidationError& e) {
        err << "usage error: " << e.what() << '\n';
    } catch (const ChecksumError& e) {
        const fs::path data = data_dir_of(config);
        try {
            emit(out, {{"error", "checksum"}, {"message", e.what()}, {"checksums", verify_checksums(data).to_json()}});
        } catch (const std::exception&) {
            emit(out, {{"error", "checksum"}, {"message", e.what()}});
        }
        err << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return ExitCode::failure;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    int exit_code = ExitCode::pass;
    const std::optional<RunConfig> config = parse_args(args, out, err, exit_code);
    if (!config) return exit_code;
    return run(*config, out, err);
}

}  // namespace kerovlab::cli

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kerovlab/kerov.hpp"
#include "kerovlab/kerov_cache.hpp"
#include "kerovlab/sym_func.hpp"

namespace kerovlab {

enum class TableKind { f2, g2, F2, c3, c4, a3 };

std::string_view table_name(TableKind kind) noexcept;
TableKind parse_table_kind(std::string_view text);

/// Printed coefficient table: the symmetric function is sum(entry * m_rho) / scale.
struct CoefficientTable {
    TableKind kind;
    Integer scale;
    std::vector<std::pair<Partition, Integer>> entries;

    SymFunc as_symfunc() const;
    /// Index k of the conjectural function the table describes.
    int k() const noexcept;
    /// Family in which the table's function predicts K_{r,r-2k+1}.
    Family family() const noexcept;
};

/// Directory containing c3.csv, c4.csv, a3.csv, closed_forms.json and
/// checksums.json. Defaults to KEROVLAB_DATA or the build-time location.
std::filesystem::path default_data_dir();

/// Raised when a table file does not match its recorded checksum.
class ChecksumError : public Error {
public:
    using Error::Error;
};

struct ChecksumReport {
    struct Entry {
        std::string file;
        std::string expected;
        std::string actual;
        bool ok;
    };
    std::vector<Entry> entries;
    bool ok() const;
    nlohmann::ordered_json to_json() const;
};

std::string sha256_hex(const std::filesystem::path& file);
ChecksumReport verify_checksums(const std::filesystem::path& data_dir);

/// Loads one table after checking its checksum; throws ChecksumError on a
/// mismatch and Error on malformed content.
CoefficientTable load_table(TableKind kind, const std::filesystem::path& data_dir = default_data_dir());

/// The p-basis closed forms of f_2, g_2, F_2 recorded next to the m-forms.
SymFunc closed_form_p(TableKind kind, const std::filesystem::path& data_dir = default_data_dir());

/// Structural factor extracted from the coefficient of the plain monomial
/// indexed by mu in K_{r,r-2k+1}; zero when mu cannot occur.
Rational structural_factor_f(int k, int r, const Partition& mu);
Rational structural_factor_g(int k, int r, const Partition& mu);
Rational structural_factor_F(int k, int r, const Partition& mu);

CumulantPolynomial predicted_component_f(int k, int r, const SymFunc& f_k);
CumulantPolynomial predicted_component_g(int k, int r, const SymFunc& g_k);
CumulantPolynomial predicted_component_F(int k, int r, const SymFunc& F_k);

struct ExtractionReport {
    char target = 'f';
    int k = 0;
    int r_min = 0;
    int r_max = 0;
    SymFunc solution{Basis::m};
    std::size_t system_rank = 0;
    std::size_t unknown_count = 0;
    std::size_t equation_count = 0;
    bool consistent = true;
    std::vector<std::pair<int, Partition>> residual_rows;

    bool unique() const noexcept { return consistent && system_rank == unknown_count; }
    nlohmann::ordered_json to_json() const;
};

/// Solves for the coefficients c_rho (|rho| <= 4(k-1), constant included) of
/// f_k, g_k or F_k from the computed components K_{r,r-2k+1}.
ExtractionReport extract_symfunc(char target, int k, int r_min, int r_max, KerovProvider& provider);

struct TableVerification {
    TableKind kind;
    struct PerR {
        int r;
        bool pass;
        std::optional<std::pair<Partition, std::pair<Rational, Rational>>> first_mismatch;  // (index, (predicted, computed))
        std::size_t terms_compared;
    };
    std::vector<PerR> results;
    bool pass() const;
    nlohmann::ordered_json to_json() const;
};

/// Forward check: the table's function plugged into its conjectured formula
/// against the computed components, for every r in [r_min, r_max].
TableVerification verify_table(const CoefficientTable& table, int r_min, int r_max, KerovProvider& provider);

struct PositivityReport {
    std::size_t positive = 0;
    std::size_t zero = 0;
    std::size_t negative_count = 0;
    std::vector<std::pair<Partition, Rational>> negative;
    std::optional<Rational> constant;
    bool all_nonnegative() const noexcept { return negative.empty(); }
    nlohmann::ordered_json to_json() const;
};

/// Counts over every m_rho with 1 <= |rho| <= max degree (absent entries
/// count as zero); the constant term is reported separately.
PositivityReport positivity_report(const SymFunc& f);
/// Counts over the stored terms of a polynomial.
PositivityReport positivity_report(const CumulantPolynomial& poly);

}  // namespace kerovlab

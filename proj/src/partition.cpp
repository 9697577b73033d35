#include "kerovlab/partition.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace kerovlab {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 1) throw Error("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw Error("partition parts must be weakly decreasing");
    }
    weight_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::from_unsorted(std::vector<int> entries) {
    if (std::any_of(entries.begin(), entries.end(), [](int v) { return v < 0; }))
        throw Error("negative entry in partition");
    std::erase(entries, 0);
    std::sort(entries.begin(), entries.end(), std::greater<>());
    return Partition(std::move(entries));
}

namespace {

int parse_int(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw Error("malformed integer '" + std::string(s) + "'");
    return value;
}

}  // namespace

Partition Partition::parse(std::string_view text) {
    std::vector<int> parts;
    if (text.find_first_not_of(' ') == std::string_view::npos) return Partition();
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        std::string_view item = text.substr(start, comma - start);
        std::size_t caret = item.find('^');
        if (caret == std::string_view::npos) {
            parts.push_back(parse_int(item));
        } else {
            int part = parse_int(item.substr(0, caret));
            int count = parse_int(item.substr(caret + 1));
            if (count < 0) throw Error("negative exponent in partition");
            parts.insert(parts.end(), static_cast<std::size_t>(count), part);
        }
        start = comma + 1;
    }
    return Partition(std::move(parts));
}

int Partition::multiplicity(int i) const noexcept {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), i));
}

std::vector<std::pair<int, int>> Partition::multiplicities() const {
    std::vector<std::pair<int, int>> out;
    for (int p : parts_) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

Partition Partition::join(const Partition& other) const {
    std::vector<int> merged;
    merged.reserve(parts_.size() + other.parts_.size());
    std::merge(parts_.begin(), parts_.end(), other.parts_.begin(), other.parts_.end(),
               std::back_inserter(merged), std::greater<>());
    return Partition(std::move(merged));
}

Partition Partition::without(int part) const {
    auto it = std::find(parts_.begin(), parts_.end(), part);
    if (it == parts_.end()) throw Error("part not present in partition");
    std::vector<int> rest(parts_.begin(), it);
    rest.insert(rest.end(), std::next(it), parts_.end());
    return Partition(std::move(rest));
}

std::string Partition::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(parts_[i]);
    }
    return out;
}

std::size_t PartitionHash::operator()(const Partition& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int v : p.parts()) {
        h ^= static_cast<std::size_t>(v);
        h *= 0x100000001b3ull;
    }
    return h;
}

namespace {

void enumerate_into(int n, int max_part, int min_part, std::vector<int>& prefix,
                    std::vector<Partition>& out) {
    if (n == 0) {
        out.emplace_back(prefix);
        return;
    }
    for (int first = std::min(n, max_part); first >= min_part; --first) {
        prefix.push_back(first);
        enumerate_into(n - first, first, min_part, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int n, int min_part) {
    if (n < 0) throw Error("cannot enumerate partitions of a negative integer");
    if (min_part < 1) throw Error("min_part must be positive");
    std::vector<Partition> out;
    std::vector<int> prefix;
    enumerate_into(n, n, min_part, prefix, out);
    return out;
}

std::vector<Partition> partitions_in_weight_range(int lo, int hi, int min_part) {
    std::vector<Partition> out;
    for (int w = hi; w >= std::max(lo, 0); --w) {
        auto level = enumerate_partitions(w, min_part);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

Integer factorial(int n) {
    if (n < 0) throw Error("factorial of a negative integer");
    Integer out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

Integer binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

Integer multiplicity_factorial(const Partition& mu) {
    Integer out = 1;
    for (auto [part, mult] : mu.multiplicities()) out *= factorial(mult);
    return out;
}

Integer z_factor(const Partition& mu) {
    Integer out = 1;
    for (auto [part, mult] : mu.multiplicities()) {
        Integer power;
        mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(part), static_cast<unsigned long>(mult));
        out *= power * factorial(mult);
    }
    return out;
}

int epsilon(const Partition& mu) {
    return ((mu.weight() - static_cast<int>(mu.length())) % 2 == 0) ? 1 : -1;
}

Integer u_factor(const Partition& mu) {
    return factorial(static_cast<int>(mu.length())) / multiplicity_factorial(mu);
}

Partition conjugate(const Partition& lambda) {
    std::vector<int> out(static_cast<std::size_t>(lambda.largest()), 0);
    for (int part : lambda.parts())
        for (int j = 0; j < part; ++j) ++out[static_cast<std::size_t>(j)];
    return Partition(std::move(out));
}

Rational falling_factorial(const Rational& t, int length) {
    Rational out = 1;
    for (int i = 0; i < length; ++i) out *= t - i;
    return out;
}

std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    std::erase(s, ' ');
    if (s.empty()) throw Error("empty rational");
    if (s.front() == '+') s.erase(0, 1);
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw Error("malformed rational '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

}  // namespace kerovlab

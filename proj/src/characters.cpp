#include "kerovlab/characters.hpp"

#include <algorithm>

#include "kerovlab/concurrency.hpp"

namespace kerovlab {

Integer dimension(const Partition& lambda) {
    if (lambda.empty()) throw Error("dimension of the empty partition is undefined");
    const Partition columns = conjugate(lambda);
    Integer hooks = 1;
    for (std::size_t i = 0; i < lambda.length(); ++i)
        for (int j = 0; j < lambda[i]; ++j)
            hooks *= (lambda[i] - j - 1) + (columns[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1) + 1;
    const Integer total = factorial(lambda.weight());
    if (total % hooks != 0) throw Error("hook product does not divide n! for " + lambda.to_string());
    return total / hooks;
}

namespace {

struct QueryHash {
    std::size_t operator()(const std::pair<Partition, Partition>& q) const noexcept {
        PartitionHash h;
        return h(q.first) * 31 + h(q.second);
    }
};

MemoTable<std::pair<Partition, Partition>, Integer, QueryHash>& character_memo() {
    static MemoTable<std::pair<Partition, Partition>, Integer, QueryHash> memo;
    return memo;
}

Integer mn_recursive(const Partition& lambda, const Partition& mu) {
    if (mu.empty()) return 1;
    if (mu.largest() == 1) return dimension(lambda);
    return character_memo().get_or_compute({lambda, mu}, [&]() -> Integer {
        const int k = mu.largest();
        const Partition rest = mu.without(k);
        // Beta numbers: a k-rim hook removal moves one bead down by k.
        const int len = static_cast<int>(lambda.length());
        std::vector<int> beta(lambda.length());
        for (int i = 0; i < len; ++i) beta[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] + (len - 1 - i);
        Integer total = 0;
        for (std::size_t i = 0; i < beta.size(); ++i) {
            const int target = beta[i] - k;
            if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
            int height = 0;
            for (int b : beta)
                if (b > target && b < beta[i]) ++height;
            std::vector<int> moved = beta;
            moved[i] = target;
            std::sort(moved.begin(), moved.end(), std::greater<>());
            std::vector<int> parts;
            for (int j = 0; j < len; ++j) {
                int part = moved[static_cast<std::size_t>(j)] - (len - 1 - j);
                if (part > 0) parts.push_back(part);
            }
            Integer sub = mn_recursive(Partition(std::move(parts)), rest);
            total += (height % 2 == 0) ? sub : Integer(-sub);
        }
        return total;
    });
}

}  // namespace

Integer mn_character(const Partition& lambda, const Partition& mu) {
    if (lambda.weight() != mu.weight())
        throw Error("character needs |lambda| = |mu| (" + std::to_string(lambda.weight()) + " vs " +
                    std::to_string(mu.weight()) + ")");
    if (lambda.empty()) return 1;
    return mn_recursive(lambda, mu);
}

Rational normalized_character(const Partition& lambda, int r) {
    const int n = lambda.weight();
    if (r < 1) throw Error("cycle length must be positive");
    if (n < r) throw Error("character of an r-cycle needs n >= r");
    std::vector<int> cycle(static_cast<std::size_t>(n - r + 1), 1);
    cycle[0] = r;
    const Integer raw = mn_character(lambda, Partition(std::move(cycle)));
    Rational out(falling_factorial(Rational(n), r) * raw);
    return out / dimension(lambda);
}

}  // namespace kerovlab

#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace kbrank::adaptive {

/// How the per-stored-query similarity values of one side are combined.
struct Aggregator {
    enum class Kind { sum, average, sum_top_k };

    Kind kind = Kind::sum_top_k;
    std::size_t k = 5;

    static Aggregator sum() { return {Kind::sum, 0}; }
    static Aggregator average() { return {Kind::average, 0}; }
    /// Throws ValidationError if k == 0.
    static Aggregator sum_top_k(std::size_t k);

    std::string name() const;
    bool operator==(const Aggregator&) const = default;
};

/// Empty input gives 0. sum_top_k sums the min(k, n) largest values.
double aggregate(std::span<const double> values, const Aggregator& aggregator);

}  // namespace kbrank::adaptive

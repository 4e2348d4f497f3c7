#include "kbrank/adaptive/aggregator.hpp"

#include "kbrank/core/errors.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace kbrank::adaptive {

Aggregator Aggregator::sum_top_k(std::size_t k) {
    if (k == 0) throw ValidationError("sum_top_k needs k >= 1");
    return {Kind::sum_top_k, k};
}

std::string Aggregator::name() const {
    switch (kind) {
        case Kind::sum:
            return "sum";
        case Kind::average:
            return "average";
        case Kind::sum_top_k:
            return "sum_top_k(" + std::to_string(k) + ")";
    }
    return "?";
}

double aggregate(std::span<const double> values, const Aggregator& aggregator) {
    if (values.empty()) return 0.0;
    switch (aggregator.kind) {
        case Aggregator::Kind::sum: {
            double s = 0.0;
            for (double v : values) s += v;
            return s;
        }
        case Aggregator::Kind::average: {
            double s = 0.0;
            for (double v : values) s += v;
            return s / static_cast<double>(values.size());
        }
        case Aggregator::Kind::sum_top_k: {
            std::vector<double> sorted(values.begin(), values.end());
            const std::size_t n = std::min(aggregator.k, sorted.size());
            std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(n), sorted.end(),
                              std::greater<>());
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += sorted[i];
            return s;
        }
    }
    return 0.0;
}

}  // namespace kbrank::adaptive

#pragma once

#include "kbrank/adaptive/aggregator.hpp"
#include "kbrank/core/types.hpp"

#include <algorithm>
#include <functional>
#include <string_view>
#include <vector>

namespace kbrank::adaptive {

/// Query-similarity kernel s_qsim(query, stored_query); expected to lie in [0, 1].
using QueryKernel = std::function<double(std::string_view query, const WeightedQuery& stored)>;

/// One stored query's contribution w * kernel(q, q').
struct ScoredQuery {
    const WeightedQuery* stored = nullptr;
    double value = 0.0;
};

/// Deterministic order: higher value, then higher weight, then more recent, then query text.
bool ranks_before(const ScoredQuery& a, const ScoredQuery& b);

/// Aggregated contribution of one side (Q+ or Q-) of a feedback model.
template <typename Kernel>
double side_score(std::string_view query, const std::vector<WeightedQuery>& side, const Kernel& kernel,
                  const Aggregator& aggregator) {
    if (side.empty()) return 0.0;
    std::vector<ScoredQuery> scored;
    scored.reserve(side.size());
    for (const auto& wq : side) scored.push_back({&wq, wq.weight * kernel(query, wq)});
    if (aggregator.kind == Aggregator::Kind::sum_top_k) {
        const std::size_t n = std::min(aggregator.k, scored.size());
        std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(n), scored.end(), ranks_before);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += scored[i].value;
        return s;
    }
    std::vector<double> values;
    values.reserve(scored.size());
    for (const auto& s : scored) values.push_back(s.value);
    return aggregate(values, aggregator);
}

/// beta * g({w(q') k(q, q')}_{Q+}) - gamma * g({w(q'') k(q, q'')}_{Q-}).
template <typename Kernel>
double adaptive_score(std::string_view query, const FeedbackModel& model, const Hyperparams& hp, const Kernel& kernel,
                      const Aggregator& aggregator) {
    double pos = model.positives.empty() ? 0.0 : side_score(query, model.positives, kernel, aggregator);
    double neg = model.negatives.empty() ? 0.0 : side_score(query, model.negatives, kernel, aggregator);
    return hp.beta * pos - hp.gamma * neg;
}

/// Uses g = sum_top_k(hp.k).
double adaptive_score(std::string_view query, const FeedbackModel& model, const Hyperparams& hp,
                      const QueryKernel& kernel);

/// Up to k stored queries of a side in top-k order, for explanations.
std::vector<ScoredQuery> top_matches(std::string_view query, const std::vector<WeightedQuery>& side,
                                     const QueryKernel& kernel, std::size_t k);

}  // namespace kbrank::adaptive

#include "kbrank/adaptive/adaptive_score.hpp"

namespace kbrank::adaptive {

bool ranks_before(const ScoredQuery& a, const ScoredQuery& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.stored->weight != b.stored->weight) return a.stored->weight > b.stored->weight;
    if (a.stored->last_updated != b.stored->last_updated) return a.stored->last_updated > b.stored->last_updated;
    return a.stored->query_text < b.stored->query_text;
}

double adaptive_score(std::string_view query, const FeedbackModel& model, const Hyperparams& hp,
                      const QueryKernel& kernel) {
    return adaptive_score(query, model, hp, kernel, Aggregator::sum_top_k(hp.k));
}

std::vector<ScoredQuery> top_matches(std::string_view query, const std::vector<WeightedQuery>& side,
                                     const QueryKernel& kernel, std::size_t k) {
    std::vector<ScoredQuery> scored;
    scored.reserve(side.size());
    for (const auto& wq : side) scored.push_back({&wq, wq.weight * kernel(query, wq)});
    std::sort(scored.begin(), scored.end(), ranks_before);
    if (scored.size() > k) scored.resize(k);
    return scored;
}

}  // namespace kbrank::adaptive

#include "kbrank/search/candidate_scoring.hpp"

#include "kbrank/adaptive/adaptive_score.hpp"
#include "kbrank/core/errors.hpp"

#include <algorithm>

namespace kbrank::search {

std::string_view to_string(RankerKind kind) {
    switch (kind) {
        case RankerKind::bm25_only:
            return "bm25";
        case RankerKind::static_only:
            return "static";
        case RankerKind::static_plus_adaptive:
            return "adaptive";
    }
    return "?";
}

RankerKind parse_ranker_kind(std::string_view text) {
    if (text == "bm25" || text == "bm25_only") return RankerKind::bm25_only;
    if (text == "static" || text == "static_only") return RankerKind::static_only;
    if (text == "adaptive" || text == "static_plus_adaptive") return RankerKind::static_plus_adaptive;
    throw ValidationError("unknown ranker kind: " + std::string(text));
}

CandidateScore score_candidate(const ScoringInputs& in, const Candidate& candidate) {
    CandidateScore out;
    out.id = candidate.article->id;
    if (in.model) {
        auto features = text::extract_pairwise_features(*in.query, *candidate.article, *in.resources, *in.idf);
        out.static_part = ranking::score_static(features, *in.model);
    }
    if (in.use_adaptive && candidate.model && !candidate.model->empty()) {
        auto kernel = [&in](std::string_view, const WeightedQuery& stored) {
            auto it = in.stored_vectors->find(stored.query_text);
            if (it == in.stored_vectors->end()) return 0.0;
            return text::cosine_sim(*in.query_vector, it->second);
        };
        out.adaptive_part = adaptive::adaptive_score(std::string_view{}, *candidate.model, *in.hp, kernel,
                                                     adaptive::Aggregator::sum_top_k(in.hp->k));
    }
    out.total = out.static_part + out.adaptive_part;
    return out;
}

std::vector<CandidateScore> score_candidates_serial(const ScoringInputs& in, std::span<const Candidate> candidates) {
    std::vector<CandidateScore> out;
    out.reserve(candidates.size());
    for (const auto& c : candidates) out.push_back(score_candidate(in, c));
    return out;
}

std::vector<CandidateScore> score_candidates_parallel(const ScoringInputs& in, std::span<const Candidate> candidates) {
    std::vector<CandidateScore> out(candidates.size());
    const auto n = static_cast<std::ptrdiff_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 4) if (n >= 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = score_candidate(in, candidates[i]);
    return out;
}

void sort_ranked(std::vector<CandidateScore>& ranked) {
    std::sort(ranked.begin(), ranked.end(), [](const CandidateScore& a, const CandidateScore& b) {
        if (a.total != b.total) return a.total > b.total;
        return a.id < b.id;
    });
}

}  // namespace kbrank::search

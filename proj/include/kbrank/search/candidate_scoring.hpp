#pragma once

#include "kbrank/adaptive/aggregator.hpp"
#include "kbrank/ranking/linear_model.hpp"
#include "kbrank/text/features.hpp"
#include "kbrank/text/sparse_vector.hpp"

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace kbrank::search {

/// Which parts of the combined score a search uses.
enum class RankerKind { bm25_only, static_only, static_plus_adaptive };

std::string_view to_string(RankerKind kind);
RankerKind parse_ranker_kind(std::string_view text);

struct CandidateScore {
    ArticleId id;
    double total = 0.0;
    double static_part = 0.0;
    double adaptive_part = 0.0;

    bool operator==(const CandidateScore&) const = default;
};

struct Candidate {
    const text::AnalyzedArticle* article = nullptr;
    const FeedbackModel* model = nullptr;  // may be null
};

/// Tf-idf vectors of stored feedback queries, keyed by query text.
using StoredQueryVectors = std::unordered_map<std::string, text::SparseVector>;

/// Everything one query's reranking pass reads. All pointers must outlive the call.
struct ScoringInputs {
    const text::AnalyzedText* query = nullptr;
    const text::SparseVector* query_vector = nullptr;
    const text::IdfTable* idf = nullptr;
    const text::ResourceBundle* resources = nullptr;
    const ranking::LinearRankModel* model = nullptr;
    const StoredQueryVectors* stored_vectors = nullptr;
    const Hyperparams* hp = nullptr;
    bool use_adaptive = true;
};

/// s_static + s_adapt for one candidate.
CandidateScore score_candidate(const ScoringInputs& in, const Candidate& candidate);

/// Reference implementation: one candidate after another.
std::vector<CandidateScore> score_candidates_serial(const ScoringInputs& in, std::span<const Candidate> candidates);

/// OpenMP over candidates. Each slot is written by exactly one iteration, so the output is
/// bitwise identical to the serial version.
std::vector<CandidateScore> score_candidates_parallel(const ScoringInputs& in, std::span<const Candidate> candidates);

/// Sorts by total descending, lower article id first on ties.
void sort_ranked(std::vector<CandidateScore>& ranked);

}  // namespace kbrank::search

#pragma once

#include "kbrank/core/serialization.hpp"
#include "kbrank/core/types.hpp"

#include <optional>
#include <vector>

namespace kbrank::eval {

/// Outcome of one query event during replay.
struct TraceEntry {
    std::size_t event_index = 0;
    std::optional<ArticleId> returned;
    ArticleId ground_truth;
    bool correct = false;
    std::size_t rank = 0;  // 1-based rank of the ground truth among ranked candidates; 0 if absent

    bool operator==(const TraceEntry&) const = default;
};

struct EvalReport {
    double precision_at_1 = 0.0;
    double recall_at_1 = 0.0;
    double f1_at_1 = 0.0;
    double mrr = 0.0;
    std::size_t answered = 0;
    std::size_t correct = 0;
    std::size_t answerable = 0;
    // Set when the metric's denominator was zero and it was reported as 0.
    bool precision_undefined = false;
    bool recall_undefined = false;
    std::vector<TraceEntry> per_event_trace;

    json to_json(bool include_trace = true) const;
    bool operator==(const EvalReport&) const = default;
};

/// P@1 = correct / answered, R@1 = correct / answerable, F1 their harmonic mean, MRR the mean
/// reciprocal rank of the ground truth over answerable queries.
EvalReport compute_metrics(const std::vector<TraceEntry>& trace);

}  // namespace kbrank::eval

#pragma once

#include "kbrank/eval/replay.hpp"

#include <string>
#include <vector>

namespace kbrank::eval {

struct NamedStream {
    std::string name;
    std::vector<FeedbackEvent> events;
};

struct ComparisonRow {
    std::string stream;
    std::vector<EvalReport> reports;  // one per ranker, in config order
};

struct ComparisonTable {
    std::vector<std::string> rankers;
    std::vector<ComparisonRow> rows;
    std::vector<double> macro_f1;   // unweighted mean over streams, per ranker
    std::vector<double> macro_mrr;

    /// Plain-text table: F1@1 and MRR per ranker, plus the relative F1 change of the last ranker
    /// over the one before it.
    std::string to_text() const;
    json to_json() const;
};

/// Replays every stream with every ranker. Streams run in parallel (each replay itself is
/// single-threaded), so the table equals compare_rankers_serial's.
ComparisonTable compare_rankers(const std::vector<NamedStream>& streams, const std::vector<ReplayOptions>& rankers,
                                const std::vector<std::string>& names);
ComparisonTable compare_rankers_serial(const std::vector<NamedStream>& streams,
                                       const std::vector<ReplayOptions>& rankers, const std::vector<std::string>& names);

/// Splits a multi-org stream into one stream per org (in first-seen order).
std::vector<NamedStream> split_by_org(const std::vector<FeedbackEvent>& events);

}  // namespace kbrank::eval

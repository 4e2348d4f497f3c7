#include "kbrank/eval/metrics.hpp"

namespace kbrank::eval {

json EvalReport::to_json(bool include_trace) const {
    json j{{"precision_at_1", precision_at_1},
           {"recall_at_1", recall_at_1},
           {"f1_at_1", f1_at_1},
           {"mrr", mrr},
           {"answered", answered},
           {"correct", correct},
           {"answerable", answerable},
           {"precision_undefined", precision_undefined},
           {"recall_undefined", recall_undefined}};
    if (include_trace) {
        json trace = json::array();
        for (const auto& t : per_event_trace)
            trace.push_back(json{{"event", t.event_index},
                                 {"returned", t.returned ? json(*t.returned) : json(nullptr)},
                                 {"ground_truth", t.ground_truth},
                                 {"correct", t.correct},
                                 {"rank", t.rank}});
        j["per_event_trace"] = std::move(trace);
    }
    return j;
}

EvalReport compute_metrics(const std::vector<TraceEntry>& trace) {
    EvalReport r;
    r.per_event_trace = trace;
    r.answerable = trace.size();
    double rr_sum = 0.0;
    for (const auto& t : trace) {
        if (t.returned) ++r.answered;
        if (t.correct) ++r.correct;
        if (t.rank > 0) rr_sum += 1.0 / static_cast<double>(t.rank);
    }
    const double correct = static_cast<double>(r.correct);
    if (r.answered > 0) {
        r.precision_at_1 = correct / static_cast<double>(r.answered);
    } else {
        r.precision_undefined = true;
    }
    if (r.answerable > 0) {
        r.recall_at_1 = correct / static_cast<double>(r.answerable);
        r.mrr = rr_sum / static_cast<double>(r.answerable);
    } else {
        r.recall_undefined = true;
    }
    const double pr = r.precision_at_1 + r.recall_at_1;
    r.f1_at_1 = pr > 0.0 ? 2.0 * r.precision_at_1 * r.recall_at_1 / pr : 0.0;
    return r;
}

}  // namespace kbrank::eval

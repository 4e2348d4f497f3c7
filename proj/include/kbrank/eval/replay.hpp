#pragma once

#include "kbrank/eval/metrics.hpp"
#include "kbrank/eval/ranker_config.hpp"
#include "kbrank/search/engine.hpp"

#include <memory>
#include <vector>

namespace kbrank::eval {

struct ReplayOptions {
    search::RankerKind kind = search::RankerKind::static_plus_adaptive;
    Hyperparams hp;
    std::optional<adaptive::DeltaPolicy> policy;
    std::shared_ptr<const ranking::LinearRankModel> model;
    std::shared_ptr<const text::ResourceBundle> resources;
};

ReplayOptions make_replay_options(const RankerConfig& config, std::shared_ptr<const text::ResourceBundle> resources);

/// Replays a ground-truth-labelled stream in timestamp order. Every query event is searched; an
/// answer draws a simulated user +/- from the ground truth, and an expert event the system got
/// wrong reveals the ground-truth article as expert feedback. Feedback only updates the models
/// when the ranker is adaptive. Single-threaded, so the report is a pure function of its inputs.
/// Throws OrderingError on a non-monotone stream and ValidationError on a query without ground truth.
EvalReport replay(const std::vector<FeedbackEvent>& stream, const ReplayOptions& options);

}  // namespace kbrank::eval

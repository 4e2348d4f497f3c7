#include "kbrank/eval/replay.hpp"

#include "kbrank/core/errors.hpp"

namespace kbrank::eval {

ReplayOptions make_replay_options(const RankerConfig& config, std::shared_ptr<const text::ResourceBundle> resources) {
    config.validate();
    ReplayOptions o;
    o.kind = config.kind;
    o.hp = config.hyperparams;
    if (!config.delta_overrides.is_null()) {
        auto policy = adaptive::DeltaPolicy::from_hyperparams(o.hp);
        policy.apply_overrides(config.delta_overrides);
        o.policy = policy;
    }
    if (config.model_path)
        o.model = std::make_shared<const ranking::LinearRankModel>(ranking::LinearRankModel::load(*config.model_path));
    o.resources = std::move(resources);
    return o;
}

EvalReport replay(const std::vector<FeedbackEvent>& stream, const ReplayOptions& options) {
    check_stream_order(stream);

    search::EngineConfig cfg;
    cfg.hp = options.hp;
    cfg.policy = options.policy;
    cfg.model = options.model;
    cfg.resources = options.resources ? options.resources : std::make_shared<const text::ResourceBundle>();
    cfg.parallel_scoring = false;
    cfg.auto_create_orgs = true;
    search::SearchEngine engine(std::move(cfg));

    const bool learn = options.kind == search::RankerKind::static_plus_adaptive;
    std::vector<TraceEntry> trace;

    for (std::size_t i = 0; i < stream.size(); ++i) {
        const auto& e = stream[i];
        if (!e.is_query()) {
            try {
                engine.handle_event(e);
            } catch (const NotFound&) {
                // deleting an article that never existed: nothing to replay
            }
            continue;
        }
        if (!e.ground_truth) throw ValidationError("query event " + std::to_string(i) + " has no ground truth");
        if (!engine.has_org(e.org)) engine.add_org(e.org);

        const std::string& q = e.query_text();
        const ArticleId& truth = *e.ground_truth;
        auto result = engine.search(e.org, q, options.hp, options.kind);

        TraceEntry t;
        t.event_index = i;
        t.ground_truth = truth;
        t.rank = result.rank_of(truth);
        if (result.answer) {
            t.returned = result.answer->first;
            t.correct = result.answer->first == truth;
        }
        trace.push_back(t);

        if (!learn) continue;
        if (t.returned) {
            FeedbackEvent fb;
            fb.ts = e.ts;
            fb.org = e.org;
            fb.kind = EventKind::search_feedback;
            fb.payload = SearchFeedback{q, *t.returned, Role::user, t.correct ? Label::positive : Label::negative};
            engine.handle_event(fb);
        }
        if (e.kind == EventKind::expert_answer && !t.correct) {
            FeedbackEvent fb;
            fb.ts = e.ts;
            fb.org = e.org;
            fb.kind = EventKind::expert_answer;
            fb.payload = ExpertAnswer{q, truth};
            engine.handle_event(fb);
        }
    }
    return compute_metrics(trace);
}

}  // namespace kbrank::eval

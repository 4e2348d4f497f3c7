#include "kbrank/search/engine.hpp"

#include "kbrank/adaptive/feedback_update.hpp"
#include "kbrank/core/errors.hpp"
#include "kbrank/text/idf.hpp"

#include <fstream>
#include <set>

namespace kbrank::search {

struct SearchEngine::OrgState {
    OrgState(OrgId id, std::size_t capacity) : store(std::move(id), capacity) {}

    OrgStore store;
    InvertedIndex index;
    text::IdfTable idf;
    StoredQueryVectors stored_vectors;
    std::map<std::string, QueueItem> queue;
    std::optional<Timestamp> last_ts;
    mutable std::shared_mutex mu;

    // Query vectors depend on idf, so every article change rebuilds them.
    void refresh_idf() {
        idf = index.idf_table();
        stored_vectors.clear();
        for (const auto& [id, model] : store.models()) {
            for (const auto* side : {&model.positives, &model.negatives})
                for (const auto& wq : *side) ensure_vector(wq.query_text);
        }
    }

    void ensure_vector(const std::string& query) {
        if (!stored_vectors.count(query)) stored_vectors.emplace(query, text::tfidf_vector(query, idf));
    }

    json queue_json() const {
        json out = json::array();
        for (const auto& [q, item] : queue) {
            json j = item.to_json();
            j["org"] = store.org().str();
            out.push_back(std::move(j));
        }
        return out;
    }
};

std::size_t SearchResult::rank_of(const ArticleId& id) const {
    for (std::size_t i = 0; i < ranked_candidates.size(); ++i)
        if (ranked_candidates[i].id == id) return i + 1;
    return 0;
}

json SearchResult::to_json() const {
    json cands = json::array();
    for (const auto& c : ranked_candidates)
        cands.push_back(json{{"article_id", c.id},
                             {"total", c.total},
                             {"static", c.static_part},
                             {"adaptive", c.adaptive_part}});
    json ans = answer ? json{{"article_id", answer->first}, {"score", answer->second}} : json(nullptr);
    return json{{"answer", std::move(ans)}, {"ranked_candidates", std::move(cands)}};
}

json QueueItem::to_json() const {
    return json{{"query", query},
                {"ts", ts},
                {"reason", reason},
                {"answered_article", answered_article ? json(*answered_article) : json(nullptr)}};
}

QueueItem QueueItem::from_json(const json& j) {
    QueueItem item;
    item.query = j.at("query").get<std::string>();
    item.ts = j.at("ts").get<Timestamp>();
    item.reason = j.at("reason").get<std::string>();
    if (auto it = j.find("answered_article"); it != j.end() && !it->is_null())
        item.answered_article = it->get<std::string>();
    return item;
}

SearchEngine::SearchEngine(EngineConfig config, EventLog* log)
    : config_(std::move(config)),
      policy_(config_.policy ? *config_.policy : adaptive::DeltaPolicy::from_hyperparams(config_.hp)),
      log_(log) {
    validate(config_.hp);
    if (!config_.resources) config_.resources = std::make_shared<text::ResourceBundle>();
    if (config_.model) config_.model->check_schema();
}

SearchEngine::~SearchEngine() = default;

void SearchEngine::add_org(const OrgId& org) {
    if (org.empty()) throw ValidationError("org id must be non-empty");
    std::unique_lock lock(orgs_mu_);
    if (!orgs_.count(org)) orgs_.emplace(org, std::make_shared<OrgState>(org, config_.hp.m));
}

bool SearchEngine::has_org(const OrgId& org) const {
    std::shared_lock lock(orgs_mu_);
    return orgs_.count(org) != 0;
}

std::vector<OrgId> SearchEngine::orgs() const {
    std::shared_lock lock(orgs_mu_);
    std::vector<OrgId> out;
    for (const auto& [id, s] : orgs_) out.push_back(id);
    return out;
}

std::shared_ptr<SearchEngine::OrgState> SearchEngine::find_org(const OrgId& org) const {
    std::shared_lock lock(orgs_mu_);
    auto it = orgs_.find(org);
    return it == orgs_.end() ? nullptr : it->second;
}

std::shared_ptr<SearchEngine::OrgState> SearchEngine::require_org(const OrgId& org) const {
    auto state = find_org(org);
    if (!state) throw OrgNotFound(org.str());
    return state;
}

std::shared_ptr<SearchEngine::OrgState> SearchEngine::org_for_event(const OrgId& org) {
    if (auto state = find_org(org)) return state;
    if (!config_.auto_create_orgs) throw OrgNotFound(org.str());
    add_org(org);
    return require_org(org);
}

void SearchEngine::warn(std::string message) {
    std::lock_guard lock(misc_mu_);
    warnings_.push_back(std::move(message));
}

EventOutcome SearchEngine::handle_event(const FeedbackEvent& event) {
    validate(event);
    auto org = org_for_event(event.org);
    std::unique_lock lock(org->mu);
    if (org->last_ts && event.ts < *org->last_ts)
        throw OrderingError("timestamp regression for org " + event.org.str() + ": " + std::to_string(event.ts) +
                            " < " + std::to_string(*org->last_ts));
    if (log_) log_->check_order(event);

    const auto& hp = config_.hp;
    auto skip = [&](const std::string& article) {
        warn("event at ts " + std::to_string(event.ts) + " for org " + event.org.str() +
             " references missing article " + article + "; skipped");
        return EventOutcome::skipped;
    };

    switch (event.kind) {
        case EventKind::article_created:
        case EventKind::article_updated: {
            const auto& article = std::get<ArticleUpsert>(event.payload).article;
            auto result = org->store.create_or_update_article(article);
            org->index.add(*org->store.find_article(result.id));
            org->refresh_idf();
            break;
        }
        case EventKind::article_deleted: {
            const auto& id = std::get<ArticleDeletion>(event.payload).id;
            org->store.delete_article(id);
            org->index.remove(id);
            org->refresh_idf();
            break;
        }
        case EventKind::search_feedback: {
            const auto& sf = std::get<SearchFeedback>(event.payload);
            if (sf.article) {
                FeedbackModel* model = org->store.find_model(*sf.article);
                if (!model) return skip(*sf.article);
                if (adaptive::apply_feedback(*model, sf.query, sf.role, sf.label, hp, policy_, event.ts))
                    org->ensure_vector(sf.query);
                if (sf.role == Role::user && sf.label == Label::negative)
                    org->queue[sf.query] = QueueItem{sf.query, event.ts, "user_negative", sf.article};
                else if (sf.role == Role::expert && sf.label == Label::positive)
                    org->queue.erase(sf.query);
            } else if (sf.role == Role::user) {
                org->queue[sf.query] = QueueItem{sf.query, event.ts, "no_answer", std::nullopt};
            } else {
                org->queue.erase(sf.query);  // expert dismissed the item
            }
            break;
        }
        case EventKind::expert_answer: {
            const auto& ea = std::get<ExpertAnswer>(event.payload);
            FeedbackModel* model = org->store.find_model(ea.article);
            if (!model) return skip(ea.article);
            if (adaptive::apply_feedback(*model, ea.query, Role::expert, Label::positive, hp, policy_, event.ts))
                org->ensure_vector(ea.query);
            org->queue.erase(ea.query);
            break;
        }
    }

    org->last_ts = event.ts;
    if (log_) log_->append(event);
    std::lock_guard misc(misc_mu_);
    ++event_count_;
    return EventOutcome::applied;
}

ArticleId SearchEngine::create_or_update_article(const OrgId& org, KbArticle article, Timestamp ts) {
    auto state = require_org(org);
    bool exists;
    {
        std::shared_lock lock(state->mu);
        exists = state->store.find_article(article.id) != nullptr;
        if (exists) article.created_at = state->store.find_article(article.id)->created_at;
    }
    if (!exists) article.created_at = ts;
    article.updated_at = ts;
    article.org = org;
    FeedbackEvent e;
    e.ts = ts;
    e.org = org;
    e.kind = exists ? EventKind::article_updated : EventKind::article_created;
    ArticleId id = article.id;
    e.payload = ArticleUpsert{std::move(article)};
    handle_event(e);
    return id;
}

void SearchEngine::delete_article(const OrgId& org, const ArticleId& id, Timestamp ts) {
    require_org(org);
    FeedbackEvent e;
    e.ts = ts;
    e.org = org;
    e.kind = EventKind::article_deleted;
    e.payload = ArticleDeletion{id};
    handle_event(e);
}

std::vector<ArticleId> SearchEngine::retrieve_candidates(const OrgId& org, std::string_view query,
                                                         std::size_t n) const {
    auto state = require_org(org);
    std::shared_lock lock(state->mu);
    std::vector<ArticleId> out;
    for (auto& [id, score] : state->index.top_n(text::analyze(query), n)) out.push_back(id);
    return out;
}

SearchResult SearchEngine::search(const OrgId& org, std::string_view query) const {
    return search(org, query, config_.hp, RankerKind::static_plus_adaptive);
}

SearchResult SearchEngine::search(const OrgId& org, std::string_view query, const Hyperparams& hp,
                                  RankerKind kind) const {
    auto state = require_org(org);
    std::shared_lock lock(state->mu);
    SearchResult result;
    const auto q = text::analyze(query);
    auto first_stage = state->index.top_n(q, hp.candidate_n);

    if (kind == RankerKind::bm25_only) {
        for (auto& [id, score] : first_stage) result.ranked_candidates.push_back({id, score, score, 0.0});
    } else {
        const bool use_adaptive = kind == RankerKind::static_plus_adaptive;
        const auto qv = text::tfidf_vector(q.tokens, state->idf);
        std::set<ArticleId> ids;
        for (auto& [id, score] : first_stage) ids.insert(id);
        if (use_adaptive && !qv.empty()) {
            for (const auto& [id, model] : state->store.models()) {
                if (model.empty() || ids.count(id)) continue;
                bool matched = false;
                for (const auto* side : {&model.positives, &model.negatives}) {
                    for (const auto& wq : *side) {
                        auto it = state->stored_vectors.find(wq.query_text);
                        if (it != state->stored_vectors.end() && text::cosine_sim(qv, it->second) > 0.0) {
                            matched = true;
                            break;
                        }
                    }
                    if (matched) break;
                }
                if (matched) ids.insert(id);
            }
        }

        std::vector<Candidate> candidates;
        candidates.reserve(ids.size());
        for (const auto& id : ids) candidates.push_back({state->index.analyzed(id), state->store.find_model(id)});

        ScoringInputs in;
        in.query = &q;
        in.query_vector = &qv;
        in.idf = &state->idf;
        in.resources = config_.resources.get();
        in.model = config_.model.get();
        in.stored_vectors = &state->stored_vectors;
        in.hp = &hp;
        in.use_adaptive = use_adaptive;
        result.ranked_candidates = config_.parallel_scoring ? score_candidates_parallel(in, candidates)
                                                            : score_candidates_serial(in, candidates);
    }
    sort_ranked(result.ranked_candidates);
    if (!result.ranked_candidates.empty() && result.ranked_candidates.front().total > hp.tau)
        result.answer = std::make_pair(result.ranked_candidates.front().id, result.ranked_candidates.front().total);
    return result;
}

std::optional<KbArticle> SearchEngine::article(const OrgId& org, const ArticleId& id) const {
    auto state = require_org(org);
    std::shared_lock lock(state->mu);
    const auto* a = state->store.find_article(id);
    return a ? std::optional<KbArticle>(*a) : std::nullopt;
}

std::optional<FeedbackModel> SearchEngine::feedback_model(const OrgId& org, const ArticleId& id) const {
    auto state = require_org(org);
    std::shared_lock lock(state->mu);
    const auto* m = state->store.find_model(id);
    return m ? std::optional<FeedbackModel>(*m) : std::nullopt;
}

std::vector<FeedbackModel> SearchEngine::feedback_models(const OrgId& org) const {
    auto state = require_org(org);
    std::shared_lock lock(state->mu);
    std::vector<FeedbackModel> out;
    for (const auto& [id, m] : state->store.models()) out.push_back(m);
    return out;
}

std::vector<QueueItem> SearchEngine::expert_queue(const OrgId& org) const {
    auto state = require_org(org);
    std::shared_lock lock(state->mu);
    std::vector<QueueItem> out;
    for (const auto& [q, item] : state->queue) out.push_back(item);
    std::stable_sort(out.begin(), out.end(), [](const QueueItem& a, const QueueItem& b) { return a.ts < b.ts; });
    return out;
}

std::size_t SearchEngine::article_count(const OrgId& org) const {
    auto state = require_org(org);
    std::shared_lock lock(state->mu);
    return state->store.articles().size();
}

std::optional<Timestamp> SearchEngine::last_timestamp(const OrgId& org) const {
    auto state = require_org(org);
    std::shared_lock lock(state->mu);
    return state->last_ts;
}

json SearchEngine::snapshot() const {
    json orgs = json::array(), articles = json::array(), models = json::array(), queue = json::array();
    json last_ts = json::object();
    std::shared_lock lock(orgs_mu_);
    for (const auto& [id, state] : orgs_) {
        std::shared_lock org_lock(state->mu);
        orgs.push_back(id.str());
        for (auto& a : state->store.articles_json()) articles.push_back(std::move(a));
        for (auto& m : state->store.models_json()) models.push_back(std::move(m));
        for (auto& q : state->queue_json()) queue.push_back(std::move(q));
        if (state->last_ts) last_ts[id.str()] = *state->last_ts;
    }
    return json{{"orgs", std::move(orgs)},
                {"articles", std::move(articles)},
                {"feedback_models", std::move(models)},
                {"expert_queue", std::move(queue)},
                {"last_ts", std::move(last_ts)},
                {"event_count", event_count()}};
}

json SearchEngine::org_state(const OrgId& org) const {
    auto state = require_org(org);
    std::shared_lock lock(state->mu);
    return json{{"articles", state->store.articles_json()},
                {"feedback_models", state->store.models_json()},
                {"expert_queue", state->queue_json()}};
}

std::string SearchEngine::canonical_state() const {
    json snap = snapshot();
    return json{{"articles", snap["articles"]},
                {"feedback_models", snap["feedback_models"]},
                {"expert_queue", snap["expert_queue"]}}
        .dump();
}

void SearchEngine::load_snapshot(const json& snap) {
    std::map<OrgId, std::shared_ptr<OrgState>> fresh;
    auto state_for = [&](const std::string& org) -> OrgState& {
        OrgId id(org);
        auto it = fresh.find(id);
        if (it == fresh.end()) it = fresh.emplace(id, std::make_shared<OrgState>(id, config_.hp.m)).first;
        return *it->second;
    };
    try {
        for (const auto& o : snap.value("orgs", json::array())) state_for(o.get<std::string>());
        std::map<std::string, json> articles, models;
        for (const auto& a : snap.at("articles")) articles[a.at("org").get<std::string>()].push_back(a);
        for (const auto& m : snap.at("feedback_models")) models[m.at("org").get<std::string>()].push_back(m);
        for (const auto& [org, list] : articles) state_for(org);
        for (const auto& [org, list] : models) state_for(org);
        for (auto& [id, state] : fresh) {
            auto a = articles.count(id.str()) ? articles[id.str()] : json::array();
            auto m = models.count(id.str()) ? models[id.str()] : json::array();
            state->store.load(a, m);
            for (const auto& [aid, article] : state->store.articles()) state->index.add(article);
            state->refresh_idf();
        }
        for (const auto& q : snap.value("expert_queue", json::array())) {
            auto item = QueueItem::from_json(q);
            state_for(q.at("org").get<std::string>()).queue[item.query] = item;
        }
        const json last_ts = snap.value("last_ts", json::object());
        for (const auto& [org, ts] : last_ts.items()) state_for(org).last_ts = ts.get<Timestamp>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad snapshot: ") + e.what());
    }
    std::unique_lock lock(orgs_mu_);
    orgs_ = std::move(fresh);
    std::lock_guard misc(misc_mu_);
    event_count_ = snap.value("event_count", std::size_t{0});
}

void SearchEngine::save_snapshot(const std::filesystem::path& path) const {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("cannot write snapshot: " + tmp.string());
        out << snapshot().dump() << '\n';
    }
    std::filesystem::rename(tmp, path);
}

std::size_t SearchEngine::event_count() const {
    std::lock_guard lock(misc_mu_);
    return event_count_;
}

std::vector<std::string> SearchEngine::warnings() const {
    std::lock_guard lock(misc_mu_);
    return warnings_;
}

}  // namespace kbrank::search

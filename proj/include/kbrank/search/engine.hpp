#pragma once

#include "kbrank/adaptive/feedback_update.hpp"
#include "kbrank/core/event_log.hpp"
#include "kbrank/core/org_store.hpp"
#include "kbrank/ranking/linear_model.hpp"
#include "kbrank/search/candidate_scoring.hpp"
#include "kbrank/search/inverted_index.hpp"
#include "kbrank/text/resources.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace kbrank::search {

struct SearchResult {
    std::optional<std::pair<ArticleId, double>> answer;
    std::vector<CandidateScore> ranked_candidates;

    /// 1-based rank of the article among the candidates, or 0 when absent.
    std::size_t rank_of(const ArticleId& id) const;
    json to_json() const;
    bool operator==(const SearchResult&) const = default;
};

/// A query waiting for an expert: the system gave no answer or a user rejected the answer.
struct QueueItem {
    std::string query;
    Timestamp ts = 0;
    std::string reason;  // "no_answer" or "user_negative"
    std::optional<ArticleId> answered_article;

    json to_json() const;
    static QueueItem from_json(const json& j);
    bool operator==(const QueueItem&) const = default;
};

struct EngineConfig {
    Hyperparams hp;
    std::optional<adaptive::DeltaPolicy> policy;  // defaults to DeltaPolicy::from_hyperparams(hp)
    std::shared_ptr<const ranking::LinearRankModel> model;
    std::shared_ptr<const text::ResourceBundle> resources;
    bool parallel_scoring = true;
    // Events for an unseen org register it (needed when reconstructing state from a log).
    bool auto_create_orgs = true;
};

enum class EventOutcome { applied, skipped };

/// Multi-tenant search engine: one isolated store, index and set of feedback models per org.
/// Mutations of one org are serialized by that org's writer lock; searches take a shared lock and
/// never observe a half-applied event. Different orgs share no mutable state.
class SearchEngine {
public:
    explicit SearchEngine(EngineConfig config, EventLog* log = nullptr);
    ~SearchEngine();

    SearchEngine(const SearchEngine&) = delete;
    SearchEngine& operator=(const SearchEngine&) = delete;

    const EngineConfig& config() const { return config_; }
    const Hyperparams& hyperparams() const { return config_.hp; }
    const adaptive::DeltaPolicy& policy() const { return policy_; }

    /// Events handled from now on are appended to log (used after rebuilding state from it).
    void attach_log(EventLog* log) { log_ = log; }

    void add_org(const OrgId& org);
    bool has_org(const OrgId& org) const;
    std::vector<OrgId> orgs() const;

    /// Validates, applies and logs one event. Feedback for an article that does not exist is
    /// skipped with a warning. Throws OrderingError on timestamp regression, OrgNotFound for an
    /// unknown org when auto-creation is off, NotFound when deleting a missing article.
    EventOutcome handle_event(const FeedbackEvent& event);

    /// Builds and handles an article_created / article_updated event. Throws OrgNotFound.
    ArticleId create_or_update_article(const OrgId& org, KbArticle article, Timestamp ts);
    void delete_article(const OrgId& org, const ArticleId& id, Timestamp ts);

    std::vector<ArticleId> retrieve_candidates(const OrgId& org, std::string_view query, std::size_t n) const;

    SearchResult search(const OrgId& org, std::string_view query) const;
    SearchResult search(const OrgId& org, std::string_view query, const Hyperparams& hp, RankerKind kind) const;

    std::optional<KbArticle> article(const OrgId& org, const ArticleId& id) const;
    std::optional<FeedbackModel> feedback_model(const OrgId& org, const ArticleId& id) const;
    std::vector<FeedbackModel> feedback_models(const OrgId& org) const;
    std::vector<QueueItem> expert_queue(const OrgId& org) const;
    std::size_t article_count(const OrgId& org) const;
    std::optional<Timestamp> last_timestamp(const OrgId& org) const;

    /// {orgs, articles, feedback_models, expert_queue, last_ts, event_count}.
    json snapshot() const;
    /// Articles, feedback models and queue of one org, in canonical order.
    json org_state(const OrgId& org) const;
    /// Canonical serialization of all content state (excludes bookkeeping such as event_count).
    std::string canonical_state() const;
    void load_snapshot(const json& snapshot);
    void save_snapshot(const std::filesystem::path& path) const;

    std::size_t event_count() const;
    std::vector<std::string> warnings() const;

private:
    struct OrgState;

    std::shared_ptr<OrgState> find_org(const OrgId& org) const;
    std::shared_ptr<OrgState> require_org(const OrgId& org) const;
    std::shared_ptr<OrgState> org_for_event(const OrgId& org);
    void warn(std::string message);

    EngineConfig config_;
    adaptive::DeltaPolicy policy_;
    EventLog* log_ = nullptr;

    mutable std::shared_mutex orgs_mu_;
    std::map<OrgId, std::shared_ptr<OrgState>> orgs_;

    mutable std::mutex misc_mu_;
    std::vector<std::string> warnings_;
    std::size_t event_count_ = 0;
};

}  // namespace kbrank::search

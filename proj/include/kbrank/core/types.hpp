#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace kbrank {

using Timestamp = std::int64_t;  // ms since epoch

class OrgId {
public:
    OrgId() = default;
    explicit OrgId(std::string value);

    const std::string& str() const { return value_; }
    bool empty() const { return value_.empty(); }

    friend auto operator<=>(const OrgId&, const OrgId&) = default;

private:
    std::string value_;
};

using ArticleId = std::string;

struct KbArticle {
    ArticleId id;
    OrgId org;
    std::string title;
    std::string body;
    std::vector<std::string> keywords;
    std::optional<std::string> link;
    Timestamp created_at = 0;
    Timestamp updated_at = 0;

    bool operator==(const KbArticle&) const = default;
};

/// Throws ValidationError if the article breaks its invariants.
void validate(const KbArticle& article);

struct WeightedQuery {
    std::string query_text;
    double weight = 0.0;
    Timestamp last_updated = 0;
    // Insertion/update sequence number; breaks last_updated ties.
    std::uint64_t seq = 0;

    bool operator==(const WeightedQuery&) const = default;
};

enum class Role { user, expert };
enum class Label { positive, negative };

std::string_view to_string(Role role);
std::string_view to_string(Label label);
Role parse_role(std::string_view text);
Label parse_label(std::string_view text);

/// Dual-form state of one article: the stored positive and negative feedback queries.
struct FeedbackModel {
    ArticleId article_id;
    std::vector<WeightedQuery> positives;
    std::vector<WeightedQuery> negatives;
    std::size_t capacity = 100;
    std::uint64_t next_seq = 0;

    bool empty() const { return positives.empty() && negatives.empty(); }
    const std::vector<WeightedQuery>& side(Label label) const {
        return label == Label::positive ? positives : negatives;
    }
    std::vector<WeightedQuery>& side(Label label) {
        return label == Label::positive ? positives : negatives;
    }

    bool operator==(const FeedbackModel&) const = default;
};

struct Hyperparams {
    std::size_t k = 5;
    double beta = 1.0;
    double gamma = 1.0;
    double delta_expert = 1.0;
    double delta_user = 0.5;
    double tau = 0.0;
    std::size_t m = 100;
    std::size_t candidate_n = 50;
    // 0 disables the per-query weight cap.
    double weight_cap = 0.0;

    bool operator==(const Hyperparams&) const = default;
};

void validate(const Hyperparams& hp);

// --- events ---------------------------------------------------------------

struct ArticleUpsert {
    KbArticle article;
    bool operator==(const ArticleUpsert&) const = default;
};

struct ArticleDeletion {
    ArticleId id;
    bool operator==(const ArticleDeletion&) const = default;
};

struct SearchFeedback {
    std::string query;
    std::optional<ArticleId> article;  // empty when the system gave no answer
    Role role = Role::user;
    Label label = Label::negative;
    bool operator==(const SearchFeedback&) const = default;
};

struct ExpertAnswer {
    std::string query;
    ArticleId article;
    bool operator==(const ExpertAnswer&) const = default;
};

enum class EventKind { article_created, article_updated, article_deleted, search_feedback, expert_answer };

std::string_view to_string(EventKind kind);
EventKind parse_event_kind(std::string_view text);

struct FeedbackEvent {
    Timestamp ts = 0;
    OrgId org;
    EventKind kind = EventKind::search_feedback;
    std::variant<ArticleUpsert, ArticleDeletion, SearchFeedback, ExpertAnswer> payload;
    // Only present in evaluation streams.
    std::optional<ArticleId> ground_truth;

    bool operator==(const FeedbackEvent&) const = default;

    bool is_query() const {
        return kind == EventKind::search_feedback || kind == EventKind::expert_answer;
    }
    const std::string& query_text() const;
};

/// Throws ValidationError when kind and payload disagree or the payload is malformed.
void validate(const FeedbackEvent& event);

}  // namespace kbrank

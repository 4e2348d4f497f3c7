#include "kbrank/core/types.hpp"

#include "kbrank/core/errors.hpp"

#include <cmath>

namespace kbrank {

OrgId::OrgId(std::string value) : value_(std::move(value)) {
    if (value_.empty()) throw ValidationError("org id must be non-empty");
}

void validate(const KbArticle& article) {
    if (article.id.empty()) throw ValidationError("article id must be non-empty");
    if (article.title.empty()) throw ValidationError("article title must be non-empty");
    if (article.updated_at < article.created_at)
        throw ValidationError("article updated_at precedes created_at");
}

std::string_view to_string(Role role) { return role == Role::user ? "user" : "expert"; }
std::string_view to_string(Label label) { return label == Label::positive ? "+" : "-"; }

Role parse_role(std::string_view text) {
    if (text == "user") return Role::user;
    if (text == "expert") return Role::expert;
    throw ValidationError("unknown role: " + std::string(text));
}

Label parse_label(std::string_view text) {
    if (text == "+" || text == "positive") return Label::positive;
    if (text == "-" || text == "negative") return Label::negative;
    throw ValidationError("unknown label: " + std::string(text));
}

void validate(const Hyperparams& hp) {
    if (hp.k == 0) throw ValidationError("k must be positive");
    if (hp.m == 0) throw ValidationError("m must be positive");
    if (hp.k > hp.m) throw ValidationError("k must not exceed m");
    if (hp.candidate_n == 0) throw ValidationError("candidate_n must be positive");
    if (!(hp.beta >= 0.0) || !(hp.gamma >= 0.0)) throw ValidationError("beta and gamma must be >= 0");
    if (!(hp.delta_user > 0.0) || !(hp.delta_expert > hp.delta_user))
        throw ValidationError("need delta_expert > delta_user > 0");
    if (std::isnan(hp.tau)) throw ValidationError("tau must not be NaN");
    if (!(hp.weight_cap >= 0.0)) throw ValidationError("weight_cap must be >= 0");
}

namespace {
constexpr std::string_view kKindNames[] = {"article_created", "article_updated", "article_deleted",
                                           "search_feedback", "expert_answer"};
}

std::string_view to_string(EventKind kind) { return kKindNames[static_cast<int>(kind)]; }

EventKind parse_event_kind(std::string_view text) {
    for (int i = 0; i < 5; ++i)
        if (kKindNames[i] == text) return static_cast<EventKind>(i);
    throw ValidationError("unknown event kind: " + std::string(text));
}

const std::string& FeedbackEvent::query_text() const {
    if (const auto* sf = std::get_if<SearchFeedback>(&payload)) return sf->query;
    if (const auto* ea = std::get_if<ExpertAnswer>(&payload)) return ea->query;
    throw ValidationError("event carries no query");
}

void validate(const FeedbackEvent& event) {
    if (event.org.empty()) throw ValidationError("event org must be non-empty");
    switch (event.kind) {
        case EventKind::article_created:
        case EventKind::article_updated: {
            const auto* up = std::get_if<ArticleUpsert>(&event.payload);
            if (!up) throw ValidationError("article event without article payload");
            validate(up->article);
            break;
        }
        case EventKind::article_deleted:
            if (!std::holds_alternative<ArticleDeletion>(event.payload))
                throw ValidationError("article_deleted without id payload");
            break;
        case EventKind::search_feedback: {
            const auto* sf = std::get_if<SearchFeedback>(&event.payload);
            if (!sf) throw ValidationError("search_feedback without feedback payload");
            if (!sf->article && sf->label == Label::positive)
                throw ValidationError("positive feedback must reference an article");
            break;
        }
        case EventKind::expert_answer: {
            const auto* ea = std::get_if<ExpertAnswer>(&event.payload);
            if (!ea || ea->article.empty()) throw ValidationError("expert_answer must reference an article");
            break;
        }
    }
}

}  // namespace kbrank

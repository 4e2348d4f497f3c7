#include "kbrank/core/org_store.hpp"

#include "kbrank/core/errors.hpp"

namespace kbrank {

OrgStore::OrgStore(OrgId org, std::size_t capacity) : org_(std::move(org)), capacity_(capacity) {
    if (org_.empty()) throw ValidationError("org id must be non-empty");
    if (capacity_ == 0) throw ValidationError("feedback capacity must be positive");
}

OrgStore::UpsertResult OrgStore::create_or_update_article(KbArticle article) {
    article.org = org_;
    validate(article);
    auto it = articles_.find(article.id);
    if (it == articles_.end()) {
        ArticleId id = article.id;
        FeedbackModel model;
        model.article_id = id;
        model.capacity = capacity_;
        models_.emplace(id, std::move(model));
        articles_.emplace(id, std::move(article));
        return {id, true};
    }
    article.created_at = it->second.created_at;
    if (article.updated_at < article.created_at) article.updated_at = article.created_at;
    it->second = std::move(article);
    return {it->first, false};
}

void OrgStore::delete_article(const ArticleId& id) {
    if (articles_.erase(id) == 0) throw NotFound("article not found: " + id);
    models_.erase(id);
}

const KbArticle* OrgStore::find_article(const ArticleId& id) const {
    auto it = articles_.find(id);
    return it == articles_.end() ? nullptr : &it->second;
}

const FeedbackModel* OrgStore::find_model(const ArticleId& id) const {
    auto it = models_.find(id);
    return it == models_.end() ? nullptr : &it->second;
}

FeedbackModel* OrgStore::find_model(const ArticleId& id) {
    auto it = models_.find(id);
    return it == models_.end() ? nullptr : &it->second;
}

json OrgStore::articles_json() const {
    json out = json::array();
    for (const auto& [id, a] : articles_) {
        json j = to_json(a);
        j["org"] = org_.str();
        out.push_back(std::move(j));
    }
    return out;
}

json OrgStore::models_json() const {
    json out = json::array();
    for (const auto& [id, m] : models_) {
        json j = to_json(m);
        j["org"] = org_.str();
        out.push_back(std::move(j));
    }
    return out;
}

void OrgStore::load(const json& articles, const json& models) {
    articles_.clear();
    models_.clear();
    for (const auto& j : articles) {
        KbArticle a = article_from_json(j, org_);
        validate(a);
        articles_.emplace(a.id, std::move(a));
    }
    for (const auto& j : models) {
        FeedbackModel m = feedback_model_from_json(j, capacity_);
        if (!articles_.count(m.article_id)) throw ParseError("feedback model for unknown article: " + m.article_id);
        models_[m.article_id] = std::move(m);
    }
    for (const auto& [id, a] : articles_) {
        if (!models_.count(id)) {
            FeedbackModel m;
            m.article_id = id;
            m.capacity = capacity_;
            models_.emplace(id, std::move(m));
        }
    }
}

}  // namespace kbrank

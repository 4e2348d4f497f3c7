#pragma once

#include "kbrank/core/serialization.hpp"
#include "kbrank/core/types.hpp"

#include <map>

namespace kbrank {

/// Articles and feedback models of a single organization.
class OrgStore {
public:
    struct UpsertResult {
        ArticleId id;
        bool created = false;
    };

    OrgStore(OrgId org, std::size_t capacity);

    const OrgId& org() const { return org_; }
    std::size_t capacity() const { return capacity_; }

    /// Creates the article with an empty feedback model, or replaces its content keeping the model.
    UpsertResult create_or_update_article(KbArticle article);
    /// Removes the article and its feedback model. Throws NotFound.
    void delete_article(const ArticleId& id);

    const KbArticle* find_article(const ArticleId& id) const;
    const FeedbackModel* find_model(const ArticleId& id) const;
    FeedbackModel* find_model(const ArticleId& id);

    const std::map<ArticleId, KbArticle>& articles() const { return articles_; }
    const std::map<ArticleId, FeedbackModel>& models() const { return models_; }

    json articles_json() const;
    json models_json() const;
    void load(const json& articles, const json& models);

    bool operator==(const OrgStore&) const = default;

private:
    OrgId org_;
    std::size_t capacity_;
    std::map<ArticleId, KbArticle> articles_;
    std::map<ArticleId, FeedbackModel> models_;
};

}  // namespace kbrank

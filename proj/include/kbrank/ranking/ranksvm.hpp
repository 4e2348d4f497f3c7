#pragma once

#include "kbrank/core/serialization.hpp"
#include "kbrank/core/types.hpp"
#include "kbrank/ranking/linear_model.hpp"
#include "kbrank/text/resources.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

namespace kbrank::ranking {

struct LabeledRankingExample {
    std::string query;
    ArticleId positive_article;
    std::vector<ArticleId> candidate_articles;  // negatives

    bool operator==(const LabeledRankingExample&) const = default;
};

void validate(const LabeledRankingExample& example);

json to_json(const LabeledRankingExample& example);
LabeledRankingExample example_from_json(const json& j);
/// JSON-lines {query, positive_id, negative_ids[]}.
std::vector<LabeledRankingExample> read_examples(const std::filesystem::path& path);
void write_examples(const std::filesystem::path& path, const std::vector<LabeledRankingExample>& examples);

struct TrainConfig {
    double lambda = 1e-3;       // L2 regularization
    std::size_t epochs = 300;
    double initial_step = 1.0;  // step at epoch t is initial_step / sqrt(t + 1), halved until the objective drops
    std::uint64_t seed = 13;
    double init_scale = 0.01;   // weights start at seeded N(0, init_scale^2)

    static TrainConfig from_json(const json& j);
    json to_json() const;
};

/// One query's feature vectors: the relevant article and its negatives.
struct RankingGroup {
    std::vector<double> positive;
    std::vector<std::vector<double>> negatives;
};

struct TrainResult {
    LinearRankModel model;
    std::vector<double> objective_trace;  // objective after each epoch, starting with the initial point
    std::size_t pair_count = 0;
};

/// Minimizes lambda/2 |w|^2 + mean over pairs of max(0, 1 - w.(x+ - x-)) by full-batch
/// subgradient descent with diminishing, backtracked steps. Throws TrainingError on empty input.
TrainResult train_pairwise(const std::vector<RankingGroup>& groups, std::size_t dim, const TrainConfig& config,
                           std::string schema_version);

/// Builds groups from articles (features over the corpus idf) and trains a model for the current schema.
TrainResult train_ranksvm(const std::vector<LabeledRankingExample>& examples,
                          const std::map<ArticleId, KbArticle>& corpus, const text::ResourceBundle& resources,
                          const TrainConfig& config);

/// Number of (positive, negative) pairs the model orders incorrectly or ties.
std::size_t count_pairwise_violations(const std::vector<RankingGroup>& groups, const LinearRankModel& model);

}  // namespace kbrank::ranking

#pragma once

#include "kbrank/core/serialization.hpp"
#include "kbrank/text/features.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kbrank::ranking {

/// Linear scorer over the pairwise match features: s_static = w . x + bias.
struct LinearRankModel {
    std::vector<double> weights;
    double bias = 0.0;
    std::string schema_version;
    std::optional<double> final_loss;

    bool operator==(const LinearRankModel&) const = default;

    json to_json() const;
    static LinearRankModel from_json(const json& j);
    void save(const std::filesystem::path& path) const;
    static LinearRankModel load(const std::filesystem::path& path);

    /// Throws SchemaMismatch unless the model matches the current feature extractor.
    void check_schema() const;
};

/// Throws SchemaMismatch when the lengths differ.
double score_static(std::span<const double> features, const LinearRankModel& model);
double score_static(const text::PairwiseFeatureVector& features, const LinearRankModel& model);

}  // namespace kbrank::ranking

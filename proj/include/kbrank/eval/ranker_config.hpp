#pragma once

#include "kbrank/core/serialization.hpp"
#include "kbrank/ranking/linear_model.hpp"
#include "kbrank/search/candidate_scoring.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace kbrank::eval {

Hyperparams hyperparams_from_json(const json& j, Hyperparams base = {});
json to_json(const Hyperparams& hp);

struct RankerConfig {
    std::string name;
    search::RankerKind kind = search::RankerKind::static_plus_adaptive;
    Hyperparams hyperparams;
    std::optional<std::filesystem::path> model_path;
    json delta_overrides;  // optional {"expert+": .., "user-": ..}

    /// Relative model paths are resolved against base_dir.
    static RankerConfig from_json(const json& j, const std::filesystem::path& base_dir = {});
    static RankerConfig load(const std::filesystem::path& path);
    json to_json() const;

    /// Throws ValidationError if a static kind has no model.
    void validate() const;
};

}  // namespace kbrank::eval

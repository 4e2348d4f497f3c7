#include "kbrank/ranking/linear_model.hpp"

#include "kbrank/core/errors.hpp"

#include <cmath>
#include <fstream>

namespace kbrank::ranking {

json LinearRankModel::to_json() const {
    json j{{"schema_version", schema_version}, {"bias", bias}, {"weights", weights}};
    if (final_loss) j["final_loss"] = *final_loss;
    return j;
}

LinearRankModel LinearRankModel::from_json(const json& j) {
    LinearRankModel m;
    try {
        m.schema_version = j.at("schema_version").get<std::string>();
        m.bias = j.at("bias").get<double>();
        m.weights = j.at("weights").get<std::vector<double>>();
        if (auto it = j.find("final_loss"); it != j.end() && !it->is_null()) m.final_loss = it->get<double>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad model file: ") + e.what());
    }
    for (double w : m.weights)
        if (!std::isfinite(w)) throw ParseError("model weights must be finite");
    if (!std::isfinite(m.bias)) throw ParseError("model bias must be finite");
    return m;
}

void LinearRankModel::save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw Error("cannot write model file: " + path.string());
    out << to_json().dump(2) << '\n';
}

LinearRankModel LinearRankModel::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return from_json(j);
}

void LinearRankModel::check_schema() const {
    if (schema_version != text::kFeatureSchemaVersion || weights.size() != text::kFeatureCount)
        throw SchemaMismatch("model schema '" + schema_version + "' (" + std::to_string(weights.size()) +
                             " weights) does not match extractor schema '" + std::string(text::kFeatureSchemaVersion) +
                             "'");
}

double score_static(std::span<const double> features, const LinearRankModel& model) {
    if (features.size() != model.weights.size())
        throw SchemaMismatch("feature vector has " + std::to_string(features.size()) + " values, model expects " +
                             std::to_string(model.weights.size()));
    double s = model.bias;
    for (std::size_t i = 0; i < features.size(); ++i) s += model.weights[i] * features[i];
    return s;
}

double score_static(const text::PairwiseFeatureVector& features, const LinearRankModel& model) {
    return score_static(std::span<const double>(features.values), model);
}

}  // namespace kbrank::ranking

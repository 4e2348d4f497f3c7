#include "kbrank/eval/ranker_config.hpp"

#include "kbrank/core/errors.hpp"

#include <cmath>
#include <fstream>
#include <limits>

namespace kbrank::eval {

namespace {

double read_tau(const json& v) {
    if (v.is_string()) {
        auto s = v.get<std::string>();
        if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw ValidationError("bad tau: " + s);
    }
    return v.get<double>();
}

json write_tau(double tau) {
    if (std::isinf(tau)) return tau > 0 ? "inf" : "-inf";
    return tau;
}

}  // namespace

Hyperparams hyperparams_from_json(const json& j, Hyperparams hp) {
    if (j.is_null()) return hp;
    try {
        hp.k = j.value("k", hp.k);
        hp.beta = j.value("beta", hp.beta);
        hp.gamma = j.value("gamma", hp.gamma);
        hp.delta_expert = j.value("delta_expert", hp.delta_expert);
        hp.delta_user = j.value("delta_user", hp.delta_user);
        if (j.contains("tau")) hp.tau = read_tau(j.at("tau"));
        hp.m = j.value("m", hp.m);
        hp.candidate_n = j.value("candidate_n", hp.candidate_n);
        hp.weight_cap = j.value("weight_cap", hp.weight_cap);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad hyperparameters: ") + e.what());
    }
    kbrank::validate(hp);
    return hp;
}

json to_json(const Hyperparams& hp) {
    return json{{"k", hp.k},
                {"beta", hp.beta},
                {"gamma", hp.gamma},
                {"delta_expert", hp.delta_expert},
                {"delta_user", hp.delta_user},
                {"tau", write_tau(hp.tau)},
                {"m", hp.m},
                {"candidate_n", hp.candidate_n},
                {"weight_cap", hp.weight_cap}};
}

RankerConfig RankerConfig::from_json(const json& j, const std::filesystem::path& base_dir) {
    RankerConfig c;
    c.kind = search::parse_ranker_kind(j.value("kind", std::string("adaptive")));
    c.name = j.value("name", std::string(search::to_string(c.kind)));
    c.hyperparams = hyperparams_from_json(j.value("hyperparams", json::object()));
    if (auto it = j.find("model"); it != j.end() && !it->is_null()) {
        std::filesystem::path p = it->get<std::string>();
        c.model_path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    }
    c.delta_overrides = j.value("delta_overrides", json());
    return c;
}

RankerConfig RankerConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open ranker config: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return from_json(j, path.parent_path());
}

json RankerConfig::to_json() const {
    json j{{"name", name}, {"kind", search::to_string(kind)}, {"hyperparams", eval::to_json(hyperparams)}};
    j["model"] = model_path ? json(model_path->string()) : json(nullptr);
    if (!delta_overrides.is_null()) j["delta_overrides"] = delta_overrides;
    return j;
}

void RankerConfig::validate() const {
    kbrank::validate(hyperparams);
    if (kind != search::RankerKind::bm25_only && !model_path)
        throw ValidationError("ranker '" + name + "' needs a static model");
}

}  // namespace kbrank::eval

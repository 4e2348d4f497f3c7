#include "kbrank/ranking/ranksvm.hpp"

#include "kbrank/core/errors.hpp"
#include "kbrank/text/idf.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

namespace kbrank::ranking {

void validate(const LabeledRankingExample& example) {
    if (example.candidate_articles.empty()) throw ValidationError("example needs at least one negative");
    if (std::find(example.candidate_articles.begin(), example.candidate_articles.end(), example.positive_article) !=
        example.candidate_articles.end())
        throw ValidationError("positive article listed among negatives for query: " + example.query);
}

json to_json(const LabeledRankingExample& e) {
    return json{{"query", e.query}, {"positive_id", e.positive_article}, {"negative_ids", e.candidate_articles}};
}

LabeledRankingExample example_from_json(const json& j) {
    LabeledRankingExample e;
    try {
        e.query = j.at("query").get<std::string>();
        e.positive_article = j.at("positive_id").get<std::string>();
        e.candidate_articles = j.at("negative_ids").get<std::vector<std::string>>();
    } catch (const json::exception& ex) {
        throw ParseError(std::string("bad training example: ") + ex.what());
    }
    return e;
}

std::vector<LabeledRankingExample> read_examples(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open examples file: " + path.string());
    std::vector<LabeledRankingExample> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(example_from_json(json::parse(line)));
    }
    return out;
}

void write_examples(const std::filesystem::path& path, const std::vector<LabeledRankingExample>& examples) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write examples file: " + path.string());
    for (const auto& e : examples) out << to_json(e).dump() << '\n';
}

TrainConfig TrainConfig::from_json(const json& j) {
    TrainConfig c;
    c.lambda = j.value("lambda", c.lambda);
    c.epochs = j.value("epochs", c.epochs);
    c.initial_step = j.value("initial_step", c.initial_step);
    c.seed = j.value("seed", c.seed);
    c.init_scale = j.value("init_scale", c.init_scale);
    if (!(c.lambda >= 0.0) || !(c.initial_step > 0.0)) throw ValidationError("bad training config");
    return c;
}

json TrainConfig::to_json() const {
    return json{{"lambda", lambda}, {"epochs", epochs}, {"initial_step", initial_step}, {"seed", seed},
                {"init_scale", init_scale}};
}

namespace {

struct PairSet {
    std::size_t dim = 0;
    std::vector<double> diffs;  // row-major, one row per (positive - negative)
    std::size_t count() const { return dim ? diffs.size() / dim : 0; }
    const double* row(std::size_t i) const { return diffs.data() + i * dim; }
};

double margin(const double* row, const std::vector<double>& w) {
    double s = 0.0;
    for (std::size_t d = 0; d < w.size(); ++d) s += w[d] * row[d];
    return s;
}

double objective(const PairSet& pairs, const std::vector<double>& w, double lambda) {
    double reg = 0.0;
    for (double x : w) reg += x * x;
    double hinge = 0.0;
    for (std::size_t i = 0; i < pairs.count(); ++i) hinge += std::max(0.0, 1.0 - margin(pairs.row(i), w));
    return 0.5 * lambda * reg + hinge / static_cast<double>(pairs.count());
}

std::vector<double> subgradient(const PairSet& pairs, const std::vector<double>& w, double lambda) {
    std::vector<double> g(w.size());
    for (std::size_t d = 0; d < w.size(); ++d) g[d] = lambda * w[d];
    const double inv = 1.0 / static_cast<double>(pairs.count());
    for (std::size_t i = 0; i < pairs.count(); ++i) {
        const double* r = pairs.row(i);
        if (margin(r, w) < 1.0)
            for (std::size_t d = 0; d < w.size(); ++d) g[d] -= inv * r[d];
    }
    return g;
}

}  // namespace

TrainResult train_pairwise(const std::vector<RankingGroup>& groups, std::size_t dim, const TrainConfig& config,
                           std::string schema_version) {
    PairSet pairs;
    pairs.dim = dim;
    for (const auto& g : groups) {
        if (g.positive.size() != dim) throw TrainingError("positive feature vector has wrong dimension");
        for (const auto& neg : g.negatives) {
            if (neg.size() != dim) throw TrainingError("negative feature vector has wrong dimension");
            for (std::size_t d = 0; d < dim; ++d) pairs.diffs.push_back(g.positive[d] - neg[d]);
        }
    }
    if (dim == 0 || pairs.count() == 0) throw TrainingError("no training pairs");

    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> init(0.0, 1.0);
    std::vector<double> w(dim);
    for (double& x : w) x = config.init_scale * init(rng);

    TrainResult result;
    result.pair_count = pairs.count();
    double current = objective(pairs, w, config.lambda);
    result.objective_trace.push_back(current);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        auto g = subgradient(pairs, w, config.lambda);
        double step = config.initial_step / std::sqrt(static_cast<double>(epoch) + 1.0);
        std::vector<double> candidate(dim);
        bool accepted = false;
        for (int halvings = 0; halvings < 40; ++halvings, step *= 0.5) {
            for (std::size_t d = 0; d < dim; ++d) candidate[d] = w[d] - step * g[d];
            double value = objective(pairs, candidate, config.lambda);
            if (value <= current) {
                w.swap(candidate);
                current = value;
                accepted = true;
                break;
            }
        }
        result.objective_trace.push_back(current);
        if (!accepted) break;
    }

    result.model.weights = std::move(w);
    result.model.bias = 0.0;
    result.model.schema_version = std::move(schema_version);
    result.model.final_loss = current;
    return result;
}

TrainResult train_ranksvm(const std::vector<LabeledRankingExample>& examples,
                          const std::map<ArticleId, KbArticle>& corpus, const text::ResourceBundle& resources,
                          const TrainConfig& config) {
    if (examples.empty()) throw TrainingError("empty example set");
    const auto idf = text::build_idf(corpus);
    std::map<ArticleId, text::AnalyzedArticle> analyzed;
    auto analyzed_of = [&](const ArticleId& id) -> const text::AnalyzedArticle& {
        auto it = analyzed.find(id);
        if (it != analyzed.end()) return it->second;
        auto c = corpus.find(id);
        if (c == corpus.end()) throw TrainingError("example references unknown article: " + id);
        return analyzed.emplace(id, text::analyze_article(c->second)).first->second;
    };

    std::vector<RankingGroup> groups;
    groups.reserve(examples.size());
    for (const auto& ex : examples) {
        validate(ex);
        auto q = text::analyze(ex.query);
        RankingGroup g;
        g.positive = text::extract_pairwise_features(q, analyzed_of(ex.positive_article), resources, idf).values;
        for (const auto& neg : ex.candidate_articles)
            g.negatives.push_back(text::extract_pairwise_features(q, analyzed_of(neg), resources, idf).values);
        groups.push_back(std::move(g));
    }
    return train_pairwise(groups, text::kFeatureCount, config, std::string(text::kFeatureSchemaVersion));
}

std::size_t count_pairwise_violations(const std::vector<RankingGroup>& groups, const LinearRankModel& model) {
    std::size_t violations = 0;
    for (const auto& g : groups) {
        double sp = score_static(g.positive, model);
        for (const auto& neg : g.negatives)
            if (!(sp > score_static(neg, model))) ++violations;
    }
    return violations;
}

}  // namespace kbrank::ranking

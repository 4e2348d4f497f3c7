#pragma once

#include "kbrank/core/serialization.hpp"
#include "kbrank/core/types.hpp"
#include "kbrank/ranking/ranksvm.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace kbrank::eval {

/// Parameters of one synthetic client knowledge base and its query stream.
struct GeneratorSpec {
    std::uint64_t seed = 1;
    std::string org = "client";
    std::size_t num_articles = 50;
    double queries_per_article = 6.0;  // mean; each article gets floor or ceil
    double paraphrase_noise = 0.5;     // 0 means every query is its article's title verbatim
    std::vector<std::string> domains;  // empty = all
    double jargon_rate = 0.0;          // chance a paraphrase uses the client's private name for an object
    double repeat_rate = 0.0;          // chance a query repeats an earlier phrasing for the same article
    double expert_fraction = 0.5;      // share of query events answered by an expert
    double late_article_fraction = 0.0;
    double update_fraction = 0.0;
    double delete_fraction = 0.0;
    Timestamp start_ts = 1'600'000'000'000;
    std::size_t hard_negatives = 8;

    static GeneratorSpec from_json(const json& j);
    json to_json() const;
    void validate() const;
};

struct Dataset {
    OrgId org;
    std::vector<KbArticle> articles;  // every article ever created, as first created
    std::vector<FeedbackEvent> stream;
    std::vector<ranking::LabeledRankingExample> examples;

    std::size_t query_count() const;
    std::size_t article_event_count() const;
};

/// Deterministic in the spec: equal specs give byte-identical datasets.
Dataset generate_dataset(const GeneratorSpec& spec);

/// Writes stream.jsonl, articles.jsonl and examples.jsonl into dir.
void write_dataset(const Dataset& dataset, const std::filesystem::path& dir);

/// The multi-client benchmark: n clients drawn from one seed, with varied size, domain mix and
/// queries-per-article.
std::vector<GeneratorSpec> benchmark_specs(std::uint64_t seed, std::size_t num_clients);

/// Specs from a file holding either {"clients": [spec, ...]}, {"benchmark": {"seed", "num_clients"}}
/// or a single spec.
std::vector<GeneratorSpec> load_generator_specs(const std::filesystem::path& path);

/// Names of the built-in domains.
std::vector<std::string> generator_domains();

}  // namespace kbrank::eval

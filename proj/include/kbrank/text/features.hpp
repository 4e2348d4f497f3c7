#pragma once

#include "kbrank/core/types.hpp"
#include "kbrank/text/idf.hpp"
#include "kbrank/text/resources.hpp"

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kbrank::text {

enum class Field { title = 0, body = 1, keywords = 2, all = 3 };
inline constexpr std::size_t kFieldCount = 4;

// Per-field feature layout. Each template contributes a base feature and, for most, a
// coverage-style variant; the schema is this block repeated for TITLE, BODY, KEYWORDS, ALL.
enum class FieldFeature {
    lemma_overlap = 0,     // shared stems / query stems
    lemma_coverage,        // shared stems / field stems
    term_match,            // cosine of query tf-idf and log-tf field tf-idf (unigrams + bigrams)
    unigram_coverage,      // query tokens present in field / query tokens
    bigram_coverage,       // query bigrams present in field / query bigrams
    idf_coverage,          // idf mass of matched query tokens / idf mass of query tokens
    phrase_match,          // 1 if the whole query occurs contiguously
    synonym_match,         // query tokens absent from field but with a synonym in it / query tokens
    synonym_coverage,      // query tokens matched exactly or via synonym / query tokens
    embedding_match,       // cosine of idf-weighted embedding centroids
    embedding_max,         // mean over query tokens of best cosine to a field token
    acronym_match,         // initialism matches in either direction / query tokens, capped at 1
};
inline constexpr std::size_t kFeaturesPerField = 12;
inline constexpr std::size_t kFeatureCount = kFieldCount * kFeaturesPerField;
inline constexpr std::string_view kFeatureSchemaVersion = "pairwise-v1-48";

constexpr std::size_t feature_index(Field field, FieldFeature feature) {
    return static_cast<std::size_t>(field) * kFeaturesPerField + static_cast<std::size_t>(feature);
}

const std::vector<std::string>& feature_names();

/// Tokenized view of a piece of text, computed once and reused across queries.
struct AnalyzedText {
    std::vector<std::string> tokens;    // lowercase, in order
    std::vector<std::string> distinct;  // sorted unique tokens
    std::vector<std::string> stems;     // sorted unique stems
    std::vector<std::string> bigram_set;
    std::vector<std::string> initialisms;
    std::vector<std::pair<std::string, double>> term_counts;  // unigrams + bigrams, sorted by term

    bool contains(const std::string& token) const;
};

AnalyzedText analyze(std::string_view text);

struct AnalyzedArticle {
    ArticleId id;
    std::array<AnalyzedText, kFieldCount> fields;
};

std::string field_text(const KbArticle& article, Field field);
AnalyzedArticle analyze_article(const KbArticle& article);

struct PairwiseFeatureVector {
    std::vector<double> values;
    bool operator==(const PairwiseFeatureVector&) const = default;
};

/// The query/article match features over the four fields; length is always kFeatureCount.
PairwiseFeatureVector extract_pairwise_features(const AnalyzedText& query, const AnalyzedArticle& article,
                                                const ResourceBundle& resources, const IdfTable& idf);

PairwiseFeatureVector extract_pairwise_features(std::string_view query, const KbArticle& article,
                                                const ResourceBundle& resources, const IdfTable& idf);

}  // namespace kbrank::text

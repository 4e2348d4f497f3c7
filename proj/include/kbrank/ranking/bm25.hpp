#pragma once

#include "kbrank/text/features.hpp"

#include <array>
#include <string>
#include <unordered_map>
#include <vector>

namespace kbrank::ranking {

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
};

struct FieldStats {
    std::size_t num_docs = 0;
    double total_len = 0.0;
    std::unordered_map<std::string, std::size_t> doc_freq;

    double avg_len() const { return num_docs ? total_len / static_cast<double>(num_docs) : 0.0; }
    std::size_t df(const std::string& term) const;
};

/// Per-field document statistics of one org's corpus.
struct CorpusStats {
    std::array<FieldStats, text::kFieldCount> fields;

    void add(const text::AnalyzedArticle& article);
    void remove(const text::AnalyzedArticle& article);
    const FieldStats& field(text::Field f) const { return fields[static_cast<std::size_t>(f)]; }

    static CorpusStats build(const std::vector<text::AnalyzedArticle>& corpus);
};

/// Non-negative idf: ln(1 + (N - df + 0.5) / (df + 0.5)).
double bm25_idf(std::size_t num_docs, std::size_t doc_freq);

/// Per-term saturation weight tf * (k1 + 1) / (tf + k1 * (1 - b + b * dl / avgdl)).
double bm25_term_weight(double tf, double doc_len, double avg_len, const Bm25Params& params);

/// BM25 of the query's distinct tokens against one field of one article.
double bm25_score(const text::AnalyzedText& query, const text::AnalyzedText& field, const FieldStats& stats,
                  const Bm25Params& params = {});

double bm25_score(std::string_view query, const KbArticle& article, text::Field field, const CorpusStats& stats,
                  const Bm25Params& params = {});

}  // namespace kbrank::ranking

#pragma once

#include "kbrank/ranking/bm25.hpp"
#include "kbrank/text/features.hpp"
#include "kbrank/text/idf.hpp"

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace kbrank::search {

struct Posting {
    ArticleId article;
    text::Field field;
    double tf;
};

/// Per-org inverted index over all four fields, plus the statistics BM25 and idf need.
class InvertedIndex {
public:
    void add(const KbArticle& article);
    /// No-op when the article is not indexed.
    void remove(const ArticleId& id);

    bool contains(const ArticleId& id) const { return analyzed_.count(id) != 0; }
    std::size_t size() const { return analyzed_.size(); }
    const text::AnalyzedArticle* analyzed(const ArticleId& id) const;
    const std::map<ArticleId, text::AnalyzedArticle>& articles() const { return analyzed_; }

    const ranking::CorpusStats& stats() const { return stats_; }
    const std::vector<Posting>* postings(const std::string& term) const;

    /// Smoothed idf over unigrams and bigrams of the ALL field, current with the index.
    text::IdfTable idf_table() const;

    /// BM25 over the ALL field for every article sharing at least one query token.
    std::vector<std::pair<ArticleId, double>> bm25_all(const text::AnalyzedText& query,
                                                       const ranking::Bm25Params& params = {}) const;

    /// Top-n by BM25 over ALL with score > 0; ties broken by lower article id.
    std::vector<std::pair<ArticleId, double>> top_n(const text::AnalyzedText& query, std::size_t n,
                                                    const ranking::Bm25Params& params = {}) const;

private:
    std::map<ArticleId, text::AnalyzedArticle> analyzed_;
    std::unordered_map<std::string, std::vector<Posting>> postings_;
    std::unordered_map<std::string, std::size_t> all_field_df_;  // unigrams + bigrams
    ranking::CorpusStats stats_;
};

}  // namespace kbrank::search

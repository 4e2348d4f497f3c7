#pragma once

#include "kbrank/core/types.hpp"
#include "kbrank/text/sparse_vector.hpp"

#include <map>
#include <span>
#include <string>
#include <unordered_map>

namespace kbrank::text {

/// Smoothed inverse document frequency over unigrams and bigrams:
/// idf(t) = ln((1 + N) / (1 + df(t))) + 1; unseen terms get ln(1 + N) + 1.
class IdfTable {
public:
    IdfTable() = default;
    IdfTable(std::size_t num_docs, std::unordered_map<std::string, std::size_t> doc_freq);

    double idf(std::string_view term) const;
    double default_idf() const { return default_idf_; }
    std::size_t num_docs() const { return num_docs_; }
    std::size_t size() const { return idf_.size(); }
    bool empty() const { return idf_.empty(); }

    /// Explicit override, mostly for tests and fixtures.
    void set(std::string term, double value);

private:
    std::size_t num_docs_ = 0;
    double default_idf_ = 1.0;
    std::unordered_map<std::string, double> idf_;
};

/// Document text used for idf: title, body and keywords together.
std::string all_field_text(const KbArticle& article);

IdfTable build_idf(std::span<const KbArticle* const> corpus);
IdfTable build_idf(const std::map<ArticleId, KbArticle>& corpus);

/// Raw-count tf times idf for every unigram and adjacent bigram of tokenize(text).
SparseVector tfidf_vector(std::string_view text, const IdfTable& idf);
SparseVector tfidf_vector(const std::vector<std::string>& tokens, const IdfTable& idf);

}  // namespace kbrank::text

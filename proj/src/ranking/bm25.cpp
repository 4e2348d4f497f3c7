#include "kbrank/ranking/bm25.hpp"

#include <algorithm>
#include <cmath>

namespace kbrank::ranking {

namespace {

double unigram_tf(const text::AnalyzedText& field, const std::string& token) {
    auto it = std::lower_bound(field.term_counts.begin(), field.term_counts.end(), token,
                               [](const auto& e, const std::string& key) { return e.first < key; });
    return (it != field.term_counts.end() && it->first == token) ? it->second : 0.0;
}

}  // namespace

std::size_t FieldStats::df(const std::string& term) const {
    auto it = doc_freq.find(term);
    return it == doc_freq.end() ? 0 : it->second;
}

void CorpusStats::add(const text::AnalyzedArticle& article) {
    for (std::size_t f = 0; f < text::kFieldCount; ++f) {
        auto& fs = fields[f];
        ++fs.num_docs;
        fs.total_len += static_cast<double>(article.fields[f].tokens.size());
        for (const auto& tok : article.fields[f].distinct) ++fs.doc_freq[tok];
    }
}

void CorpusStats::remove(const text::AnalyzedArticle& article) {
    for (std::size_t f = 0; f < text::kFieldCount; ++f) {
        auto& fs = fields[f];
        --fs.num_docs;
        fs.total_len -= static_cast<double>(article.fields[f].tokens.size());
        for (const auto& tok : article.fields[f].distinct) {
            auto it = fs.doc_freq.find(tok);
            if (it != fs.doc_freq.end() && --it->second == 0) fs.doc_freq.erase(it);
        }
        if (fs.num_docs == 0) fs.total_len = 0.0;
    }
}

CorpusStats CorpusStats::build(const std::vector<text::AnalyzedArticle>& corpus) {
    CorpusStats stats;
    for (const auto& a : corpus) stats.add(a);
    return stats;
}

double bm25_idf(std::size_t num_docs, std::size_t doc_freq) {
    const double n = static_cast<double>(num_docs);
    const double df = static_cast<double>(doc_freq);
    return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

double bm25_term_weight(double tf, double doc_len, double avg_len, const Bm25Params& params) {
    if (tf <= 0.0) return 0.0;
    double norm = avg_len > 0.0 ? doc_len / avg_len : 1.0;
    return tf * (params.k1 + 1.0) / (tf + params.k1 * (1.0 - params.b + params.b * norm));
}

double bm25_score(const text::AnalyzedText& query, const text::AnalyzedText& field, const FieldStats& stats,
                  const Bm25Params& params) {
    double score = 0.0;
    const double dl = static_cast<double>(field.tokens.size());
    for (const auto& tok : query.distinct) {
        double tf = unigram_tf(field, tok);
        if (tf <= 0.0) continue;
        score += bm25_idf(stats.num_docs, stats.df(tok)) * bm25_term_weight(tf, dl, stats.avg_len(), params);
    }
    return score;
}

double bm25_score(std::string_view query, const KbArticle& article, text::Field field, const CorpusStats& stats,
                  const Bm25Params& params) {
    auto q = text::analyze(query);
    auto f = text::analyze(text::field_text(article, field));
    return bm25_score(q, f, stats.field(field), params);
}

}  // namespace kbrank::ranking

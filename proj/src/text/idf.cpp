#include "kbrank/text/idf.hpp"

#include "kbrank/text/tokenizer.hpp"

#include <cmath>
#include <unordered_set>

namespace kbrank::text {

IdfTable::IdfTable(std::size_t num_docs, std::unordered_map<std::string, std::size_t> doc_freq)
    : num_docs_(num_docs), default_idf_(std::log(1.0 + static_cast<double>(num_docs)) + 1.0) {
    idf_.reserve(doc_freq.size());
    const double n = static_cast<double>(num_docs);
    for (auto& [term, df] : doc_freq) idf_.emplace(term, std::log((1.0 + n) / (1.0 + static_cast<double>(df))) + 1.0);
}

double IdfTable::idf(std::string_view term) const {
    auto it = idf_.find(std::string(term));
    return it == idf_.end() ? default_idf_ : it->second;
}

void IdfTable::set(std::string term, double value) { idf_[std::move(term)] = value; }

std::string all_field_text(const KbArticle& article) {
    std::string text = article.title;
    text += "\n";
    text += article.body;
    for (const auto& kw : article.keywords) {
        text += "\n";
        text += kw;
    }
    return text;
}

IdfTable build_idf(std::span<const KbArticle* const> corpus) {
    if (corpus.empty()) return {};
    std::unordered_map<std::string, std::size_t> df;
    for (const KbArticle* article : corpus) {
        auto terms = unigrams_and_bigrams(tokenize(all_field_text(*article)));
        std::unordered_set<std::string> seen(terms.begin(), terms.end());
        for (const auto& t : seen) ++df[t];
    }
    return IdfTable(corpus.size(), std::move(df));
}

IdfTable build_idf(const std::map<ArticleId, KbArticle>& corpus) {
    std::vector<const KbArticle*> ptrs;
    ptrs.reserve(corpus.size());
    for (const auto& [id, a] : corpus) ptrs.push_back(&a);
    return build_idf(std::span<const KbArticle* const>(ptrs));
}

SparseVector tfidf_vector(const std::vector<std::string>& tokens, const IdfTable& idf) {
    std::vector<SparseVector::Entry> entries;
    std::unordered_map<std::string, double> counts;
    for (const auto& term : unigrams_and_bigrams(tokens)) counts[term] += 1.0;
    entries.reserve(counts.size());
    for (const auto& [term, tf] : counts) entries.emplace_back(term_id(term), tf * idf.idf(term));
    return SparseVector::from_entries(std::move(entries));
}

SparseVector tfidf_vector(std::string_view text, const IdfTable& idf) { return tfidf_vector(tokenize(text), idf); }

}  // namespace kbrank::text

#include "kbrank/search/inverted_index.hpp"

#include <algorithm>

namespace kbrank::search {

void InvertedIndex::add(const KbArticle& article) {
    remove(article.id);
    auto analyzed = text::analyze_article(article);
    for (std::size_t f = 0; f < text::kFieldCount; ++f) {
        const auto& field = analyzed.fields[f];
        for (const auto& [term, count] : field.term_counts) {
            if (term.find('_') != std::string::npos) continue;  // bigram
            postings_[term].push_back({article.id, static_cast<text::Field>(f), count});
        }
    }
    for (const auto& [term, count] : analyzed.fields[static_cast<std::size_t>(text::Field::all)].term_counts)
        ++all_field_df_[term];
    stats_.add(analyzed);
    analyzed_.emplace(article.id, std::move(analyzed));
}

void InvertedIndex::remove(const ArticleId& id) {
    auto it = analyzed_.find(id);
    if (it == analyzed_.end()) return;
    const auto& analyzed = it->second;
    for (std::size_t f = 0; f < text::kFieldCount; ++f) {
        for (const auto& [term, count] : analyzed.fields[f].term_counts) {
            if (term.find('_') != std::string::npos) continue;
            auto p = postings_.find(term);
            if (p == postings_.end()) continue;
            std::erase_if(p->second, [&](const Posting& post) {
                return post.article == id && post.field == static_cast<text::Field>(f);
            });
            if (p->second.empty()) postings_.erase(p);
        }
    }
    for (const auto& [term, count] : analyzed.fields[static_cast<std::size_t>(text::Field::all)].term_counts) {
        auto d = all_field_df_.find(term);
        if (d != all_field_df_.end() && --d->second == 0) all_field_df_.erase(d);
    }
    stats_.remove(analyzed);
    analyzed_.erase(it);
}

const text::AnalyzedArticle* InvertedIndex::analyzed(const ArticleId& id) const {
    auto it = analyzed_.find(id);
    return it == analyzed_.end() ? nullptr : &it->second;
}

const std::vector<Posting>* InvertedIndex::postings(const std::string& term) const {
    auto it = postings_.find(term);
    return it == postings_.end() ? nullptr : &it->second;
}

text::IdfTable InvertedIndex::idf_table() const {
    if (analyzed_.empty()) return {};
    return text::IdfTable(analyzed_.size(), all_field_df_);
}

std::vector<std::pair<ArticleId, double>> InvertedIndex::bm25_all(const text::AnalyzedText& query,
                                                                  const ranking::Bm25Params& params) const {
    const auto& fs = stats_.field(text::Field::all);
    std::map<ArticleId, double> scores;
    for (const auto& tok : query.distinct) {
        const auto* list = postings(tok);
        if (!list) continue;
        const double idf = ranking::bm25_idf(fs.num_docs, fs.df(tok));
        for (const auto& p : *list) {
            if (p.field != text::Field::all) continue;
            const auto& doc = analyzed_.at(p.article).fields[static_cast<std::size_t>(text::Field::all)];
            scores[p.article] +=
                idf * ranking::bm25_term_weight(p.tf, static_cast<double>(doc.tokens.size()), fs.avg_len(), params);
        }
    }
    return {scores.begin(), scores.end()};
}

std::vector<std::pair<ArticleId, double>> InvertedIndex::top_n(const text::AnalyzedText& query, std::size_t n,
                                                               const ranking::Bm25Params& params) const {
    auto scored = bm25_all(query, params);
    std::erase_if(scored, [](const auto& s) { return !(s.second > 0.0); });
    auto better = [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    };
    if (scored.size() > n) {
        std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(n), scored.end(), better);
        scored.resize(n);
    } else {
        std::sort(scored.begin(), scored.end(), better);
    }
    return scored;
}

}  // namespace kbrank::search

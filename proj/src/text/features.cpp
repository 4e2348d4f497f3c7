#include "kbrank/text/features.hpp"

#include "kbrank/text/tokenizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace kbrank::text {

namespace {

constexpr std::array<std::string_view, kFieldCount> kFieldNames = {"title", "body", "keywords", "all"};
constexpr std::array<std::string_view, kFeaturesPerField> kFeatureNames = {
    "lemma_overlap",    "lemma_coverage", "term_match",      "unigram_coverage",
    "bigram_coverage",  "idf_coverage",   "phrase_match",    "synonym_match",
    "synonym_coverage", "embedding_match", "embedding_max",  "acronym_match"};

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool sorted_contains(const std::vector<std::string>& v, const std::string& x) {
    return std::binary_search(v.begin(), v.end(), x);
}

std::size_t intersection_size(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::size_t n = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

double term_match(const AnalyzedText& q, const AnalyzedText& f, const IdfTable& idf) {
    // Both term lists are sorted by term, so a merge gives the dot product.
    double dot_qf = 0.0, nq = 0.0, nf = 0.0;
    std::size_t i = 0;
    const auto& qt = q.term_counts;
    const auto& ft = f.term_counts;
    std::vector<double> qw(qt.size());
    for (std::size_t k = 0; k < qt.size(); ++k) {
        qw[k] = qt[k].second * idf.idf(qt[k].first);
        nq += qw[k] * qw[k];
    }
    for (const auto& [term, tf] : ft) {
        double w = (1.0 + std::log(tf)) * idf.idf(term);
        nf += w * w;
        while (i < qt.size() && qt[i].first < term) ++i;
        if (i < qt.size() && qt[i].first == term) dot_qf += qw[i] * w;
    }
    if (!(nq > 0.0) || !(nf > 0.0)) return 0.0;
    return std::clamp(dot_qf / std::sqrt(nq * nf), 0.0, 1.0);
}

bool phrase_match(const AnalyzedText& q, const AnalyzedText& f) {
    if (q.tokens.empty() || q.tokens.size() > f.tokens.size()) return false;
    return std::search(f.tokens.begin(), f.tokens.end(), q.tokens.begin(), q.tokens.end()) != f.tokens.end();
}

std::vector<double> centroid(const AnalyzedText& t, const ResourceBundle& res, const IdfTable& idf) {
    std::vector<double> c(res.dimensionality(), 0.0);
    bool any = false;
    for (const auto& tok : t.tokens) {
        const auto* e = res.embedding(tok);
        if (!e) continue;
        double w = idf.idf(tok);
        for (std::size_t d = 0; d < c.size(); ++d) c[d] += w * (*e)[d];
        any = true;
    }
    if (!any) c.clear();
    return c;
}

double dense_cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (!(na > 0.0) || !(nb > 0.0)) return 0.0;
    return std::clamp(d / std::sqrt(na * nb), -1.0, 1.0);
}

double unit_dot(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] * b[i];
    return std::clamp(d, -1.0, 1.0);
}

void fill_field(const AnalyzedText& q, const AnalyzedText& f, const ResourceBundle& res, const IdfTable& idf,
                double* out) {
    auto at = [out](FieldFeature ff) -> double& { return out[static_cast<std::size_t>(ff)]; };
    const double nq = static_cast<double>(q.distinct.size());

    std::size_t shared_stems = intersection_size(q.stems, f.stems);
    at(FieldFeature::lemma_overlap) = ratio(static_cast<double>(shared_stems), static_cast<double>(q.stems.size()));
    at(FieldFeature::lemma_coverage) = ratio(static_cast<double>(shared_stems), static_cast<double>(f.stems.size()));

    at(FieldFeature::term_match) = term_match(q, f, idf);

    std::size_t shared_tokens = 0;
    double idf_all = 0.0, idf_hit = 0.0;
    std::size_t syn_only = 0;
    for (const auto& tok : q.distinct) {
        double w = idf.idf(tok);
        idf_all += w;
        if (f.contains(tok)) {
            ++shared_tokens;
            idf_hit += w;
        } else if (const auto* syns = res.synonyms_of(tok)) {
            if (std::any_of(syns->begin(), syns->end(), [&](const std::string& s) { return f.contains(s); }))
                ++syn_only;
        }
    }
    at(FieldFeature::unigram_coverage) = ratio(static_cast<double>(shared_tokens), nq);
    at(FieldFeature::bigram_coverage) = ratio(static_cast<double>(intersection_size(q.bigram_set, f.bigram_set)),
                                              static_cast<double>(q.bigram_set.size()));
    at(FieldFeature::idf_coverage) = ratio(idf_hit, idf_all);
    at(FieldFeature::phrase_match) = phrase_match(q, f) ? 1.0 : 0.0;
    at(FieldFeature::synonym_match) = ratio(static_cast<double>(syn_only), nq);
    at(FieldFeature::synonym_coverage) = ratio(static_cast<double>(syn_only + shared_tokens), nq);

    if (res.has_embeddings()) {
        auto cq = centroid(q, res, idf);
        auto cf = centroid(f, res, idf);
        at(FieldFeature::embedding_match) = (cq.empty() || cf.empty()) ? 0.0 : dense_cosine(cq, cf);

        double best_sum = 0.0;
        for (const auto& qt : q.distinct) {
            const auto* eq = res.embedding(qt);
            if (!eq) continue;
            double best = 0.0;
            for (const auto& ft : f.distinct) {
                if (const auto* ef = res.embedding(ft)) best = std::max(best, unit_dot(*eq, *ef));
            }
            best_sum += best;
        }
        at(FieldFeature::embedding_max) = ratio(best_sum, nq);
    }

    std::size_t acronym_hits = 0;
    for (const auto& tok : q.distinct)
        if (sorted_contains(f.initialisms, tok)) ++acronym_hits;
    for (const auto& tok : f.distinct)
        if (sorted_contains(q.initialisms, tok)) ++acronym_hits;
    at(FieldFeature::acronym_match) = std::min(1.0, ratio(static_cast<double>(acronym_hits), nq));
}

}  // namespace

const std::vector<std::string>& feature_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        n.reserve(kFeatureCount);
        for (auto field : kFieldNames)
            for (auto feat : kFeatureNames) n.push_back(std::string(feat) + "@" + std::string(field));
        return n;
    }();
    return names;
}

bool AnalyzedText::contains(const std::string& token) const { return sorted_contains(distinct, token); }

AnalyzedText analyze(std::string_view text) {
    AnalyzedText a;
    auto cased = tokenize_cased(text);
    a.initialisms = capitalized_initialisms(cased);
    a.tokens.reserve(cased.size());
    for (const auto& t : cased) a.tokens.push_back(to_lower(t));
    a.distinct = sorted_unique(a.tokens);
    std::vector<std::string> stems;
    stems.reserve(a.distinct.size());
    for (const auto& t : a.distinct) stems.push_back(stem(t));
    a.stems = sorted_unique(std::move(stems));
    a.bigram_set = sorted_unique(bigrams(a.tokens));
    std::map<std::string, double> counts;
    for (auto& term : unigrams_and_bigrams(a.tokens)) counts[std::move(term)] += 1.0;
    a.term_counts.assign(counts.begin(), counts.end());
    return a;
}

std::string field_text(const KbArticle& article, Field field) {
    switch (field) {
        case Field::title:
            return article.title;
        case Field::body:
            return article.body;
        case Field::keywords: {
            std::string s;
            for (const auto& kw : article.keywords) {
                if (!s.empty()) s += "\n";
                s += kw;
            }
            return s;
        }
        case Field::all:
            return all_field_text(article);
    }
    return {};
}

AnalyzedArticle analyze_article(const KbArticle& article) {
    AnalyzedArticle a;
    a.id = article.id;
    for (std::size_t f = 0; f < kFieldCount; ++f) a.fields[f] = analyze(field_text(article, static_cast<Field>(f)));
    return a;
}

PairwiseFeatureVector extract_pairwise_features(const AnalyzedText& query, const AnalyzedArticle& article,
                                                const ResourceBundle& resources, const IdfTable& idf) {
    PairwiseFeatureVector v;
    v.values.assign(kFeatureCount, 0.0);
    if (query.tokens.empty()) return v;
    for (std::size_t f = 0; f < kFieldCount; ++f)
        fill_field(query, article.fields[f], resources, idf, v.values.data() + f * kFeaturesPerField);
    return v;
}

PairwiseFeatureVector extract_pairwise_features(std::string_view query, const KbArticle& article,
                                                const ResourceBundle& resources, const IdfTable& idf) {
    return extract_pairwise_features(analyze(query), analyze_article(article), resources, idf);
}

}  // namespace kbrank::text

// Candidate reranking cost: serial reference vs the OpenMP kernel.

#include "kbrank/eval/generator.hpp"
#include "kbrank/search/candidate_scoring.hpp"
#include "kbrank/text/idf.hpp"

#include <benchmark/benchmark.h>

#include <map>
#include <memory>

using namespace kbrank;

namespace {

const std::filesystem::path kSource = KBRANK_SOURCE_DIR;

// One generated org: analyzed articles, each with a full feedback model, and a query to rerank for.
struct Fixture {
    std::vector<text::AnalyzedArticle> articles;
    std::vector<FeedbackModel> models;
    std::vector<search::Candidate> candidates;
    text::IdfTable idf{0, {}};
    text::ResourceBundle resources;
    ranking::LinearRankModel model;
    search::StoredQueryVectors stored;
    Hyperparams hp;
    text::AnalyzedText query;
    text::SparseVector query_vector;

    explicit Fixture(std::size_t n) {
        eval::GeneratorSpec spec;
        spec.seed = 3;
        spec.num_articles = n;
        spec.queries_per_article = 6;
        const auto ds = eval::generate_dataset(spec);
        std::map<ArticleId, KbArticle> corpus;
        for (const auto& a : ds.articles) corpus.emplace(a.id, a);
        idf = text::build_idf(corpus);
        resources = text::ResourceBundle::load(kSource / "data/resources/embeddings.txt",
                                               kSource / "data/resources/synonyms.tsv");
        model = ranking::LinearRankModel::load(kSource / "data/model/static_model.json");

        std::map<ArticleId, FeedbackModel> by_article;
        std::uint64_t seq = 0;
        for (const auto& e : ds.stream) {
            if (!e.is_query()) continue;
            auto& m = by_article[*e.ground_truth];
            m.positives.push_back({e.query_text(), 1.0, e.ts, seq++});
            stored.emplace(e.query_text(), text::tfidf_vector(e.query_text(), idf));
        }
        articles.reserve(corpus.size());
        models.reserve(corpus.size());
        for (const auto& [id, a] : corpus) {
            articles.push_back(text::analyze_article(a));
            models.push_back(by_article[id]);
        }
        for (std::size_t i = 0; i < articles.size(); ++i) candidates.push_back({&articles[i], &models[i]});
        query = text::analyze(ds.stream.back().is_query() ? ds.stream.back().query_text() : "reset my password");
        query_vector = text::tfidf_vector(query.tokens, idf);
    }

    search::ScoringInputs inputs() const {
        return {&query, &query_vector, &idf, &resources, &model, &stored, &hp, true};
    }
};

const Fixture& fixture(std::size_t n) {
    static std::map<std::size_t, std::unique_ptr<Fixture>> cache;
    auto& f = cache[n];
    if (!f) f = std::make_unique<Fixture>(n);
    return *f;
}

void BM_ScoreSerial(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    const auto in = f.inputs();
    for (auto _ : state) benchmark::DoNotOptimize(search::score_candidates_serial(in, f.candidates));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.candidates.size()));
}

void BM_ScoreParallel(benchmark::State& state) {
    const auto& f = fixture(static_cast<std::size_t>(state.range(0)));
    const auto in = f.inputs();
    for (auto _ : state) benchmark::DoNotOptimize(search::score_candidates_parallel(in, f.candidates));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.candidates.size()));
}

}  // namespace

BENCHMARK(BM_ScoreSerial)->Arg(16)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ScoreParallel)->Arg(16)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

#include "kbrank/core/errors.hpp"
#include "kbrank/ranking/bm25.hpp"
#include "kbrank/ranking/linear_model.hpp"
#include "kbrank/ranking/ranksvm.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace kbrank;
using namespace kbrank::ranking;
using kbrank::testing::article;

namespace {

CorpusStats stats_of(const std::vector<KbArticle>& docs) {
    std::vector<text::AnalyzedArticle> analyzed;
    for (const auto& d : docs) analyzed.push_back(text::analyze_article(d));
    return CorpusStats::build(analyzed);
}

}  // namespace

TEST_CASE("bm25: no overlap scores zero") {
    auto a = article("1", "printer toner");
    auto stats = stats_of({a});
    CHECK(bm25_score("vpn", a, text::Field::title, stats) == 0.0);
}

TEST_CASE("bm25: single document hand value") {
    // N = 1, df = 1, tf = 1, dl = avgdl: idf = ln(1 + 0.5/1.5), tf part = 2.2/2.2.
    auto a = article("1", "vpn");
    auto stats = stats_of({a});
    CHECK(bm25_idf(1, 1) == doctest::Approx(std::log(4.0 / 3.0)));
    CHECK(bm25_score("vpn", a, text::Field::title, stats) == doctest::Approx(0.28768).epsilon(1e-4));
    CHECK(bm25_term_weight(1.0, 3.0, 3.0, {}) == doctest::Approx(1.0));
}

TEST_CASE("bm25: duplicating a non-matching document only raises idf") {
    auto hit = article("1", "reset vpn");
    auto other = article("2", "printer toner");
    auto other2 = article("3", "printer toner");
    const double one = bm25_score("vpn", hit, text::Field::title, stats_of({hit, other}));
    const double two = bm25_score("vpn", hit, text::Field::title, stats_of({hit, other, other2}));
    CHECK(two > one);
    // Same document length as the added one, so the length normalization is unchanged.
    const double tf_part = bm25_term_weight(1.0, 2.0, 2.0, {});
    CHECK(one == doctest::Approx(bm25_idf(2, 1) * tf_part));
    CHECK(two == doctest::Approx(bm25_idf(3, 1) * tf_part));
}

TEST_CASE("linear model scoring") {
    LinearRankModel m;
    m.weights.assign(text::kFeatureCount, 0.0);
    text::PairwiseFeatureVector f;
    f.values.assign(text::kFeatureCount, 0.0);
    CHECK(score_static(f, m) == 0.0);
    m.weights[0] = 1.0;
    f.values.assign(text::kFeatureCount, 0.5);
    CHECK(score_static(f, m) == doctest::Approx(0.5));
    f.values.pop_back();
    CHECK_THROWS_AS(score_static(f, m), SchemaMismatch);
}

TEST_CASE("linear model file round trip and schema check") {
    LinearRankModel m;
    m.weights.assign(text::kFeatureCount, 0.25);
    m.bias = 0.5;
    m.final_loss = 0.125;
    auto path = kbrank::testing::fresh_dir("model") / "m.json";
    m.save(path);
    CHECK(LinearRankModel::load(path) == m);

    json j = m.to_json();
    j["schema_version"] = "other";
    CHECK_THROWS_AS(LinearRankModel::from_json(j).check_schema(), SchemaMismatch);
}

TEST_CASE("ranksvm: separable set has no violations") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<RankingGroup> groups;
    for (int g = 0; g < 40; ++g) {
        RankingGroup grp;
        grp.positive = {1.0 + u(rng), u(rng)};
        for (int n = 0; n < 4; ++n) grp.negatives.push_back({u(rng) * 0.8, u(rng)});
        groups.push_back(grp);
    }
    TrainConfig cfg;
    auto r = train_pairwise(groups, 2, cfg, "test-2");
    CHECK(count_pairwise_violations(groups, r.model) == 0);
    CHECK(r.pair_count == 160);
    for (std::size_t i = 1; i < r.objective_trace.size(); ++i)
        CHECK(r.objective_trace[i] <= r.objective_trace[i - 1] + 1e-6);

    auto again = train_pairwise(groups, 2, cfg, "test-2");
    CHECK(again.model.weights == r.model.weights);
}

TEST_CASE("ranksvm: identical vectors give unit hinge loss per pair") {
    std::vector<RankingGroup> groups{{{0.3, 0.7}, {{0.3, 0.7}}}};
    auto r = train_pairwise(groups, 2, TrainConfig{}, "test-2");
    CHECK(count_pairwise_violations(groups, r.model) == 1);
    CHECK(r.model.final_loss >= 1.0);
}

TEST_CASE("ranksvm: example validation and files") {
    LabeledRankingExample ex{"reset vpn", "a1", {"a2", "a3"}};
    CHECK_NOTHROW(validate(ex));
    auto path = kbrank::testing::fresh_dir("ex") / "ex.jsonl";
    write_examples(path, {ex});
    CHECK(read_examples(path) == std::vector<LabeledRankingExample>{ex});

    CHECK_THROWS_AS(validate(LabeledRankingExample{"q", "a1", {}}), ValidationError);
    CHECK_THROWS_AS(validate(LabeledRankingExample{"q", "a1", {"a1"}}), ValidationError);
}

TEST_CASE("ranksvm: text pipeline trains and is deterministic") {
    std::map<ArticleId, KbArticle> corpus{{"1", article("1", "Reset your VPN password")},
                                          {"2", article("2", "Request a new laptop")},
                                          {"3", article("3", "Book a conference room")}};
    std::vector<LabeledRankingExample> examples{{"vpn password reset", "1", {"2", "3"}},
                                                {"new laptop please", "2", {"1", "3"}},
                                                {"conference room booking", "3", {"1", "2"}}};
    text::ResourceBundle none;
    auto a = train_ranksvm(examples, corpus, none, TrainConfig{});
    auto b = train_ranksvm(examples, corpus, none, TrainConfig{});
    CHECK(a.model == b.model);
    CHECK(a.model.weights.size() == text::kFeatureCount);
    CHECK(a.model.schema_version == text::kFeatureSchemaVersion);

    examples.push_back({"missing", "404", {"1"}});
    CHECK_THROWS_AS(train_ranksvm(examples, corpus, none, TrainConfig{}), Error);
}

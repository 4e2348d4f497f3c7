#include "kbrank/core/errors.hpp"
#include "kbrank/eval/compare.hpp"
#include "kbrank/eval/generator.hpp"
#include "kbrank/eval/replay.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace kbrank;
using namespace kbrank::eval;
using kbrank::testing::article;

namespace {

const OrgId kOrg("acme");

FeedbackEvent create(Timestamp ts, KbArticle a) {
    FeedbackEvent e;
    e.ts = ts;
    e.org = kOrg;
    e.kind = EventKind::article_created;
    a.org = kOrg;
    a.created_at = a.updated_at = ts;
    e.payload = ArticleUpsert{std::move(a)};
    return e;
}

FeedbackEvent query(Timestamp ts, std::string q, std::optional<ArticleId> truth, bool expert = false) {
    FeedbackEvent e;
    e.ts = ts;
    e.org = kOrg;
    if (expert) {
        e.kind = EventKind::expert_answer;
        e.payload = ExpertAnswer{std::move(q), truth.value_or("")};
    } else {
        e.kind = EventKind::search_feedback;
        e.payload = SearchFeedback{std::move(q), std::nullopt, Role::user, Label::negative};
    }
    e.ground_truth = std::move(truth);
    return e;
}

TraceEntry entry(std::optional<ArticleId> returned, ArticleId truth, std::size_t rank) {
    TraceEntry t;
    t.correct = returned && *returned == truth;
    t.returned = std::move(returned);
    t.ground_truth = std::move(truth);
    t.rank = rank;
    return t;
}

std::shared_ptr<const ranking::LinearRankModel> bundled_model() {
    static auto model = std::make_shared<const ranking::LinearRankModel>(
        ranking::LinearRankModel::load(kbrank::testing::source_dir() / "data" / "model" / "static_model.json"));
    return model;
}

ReplayOptions options(search::RankerKind kind, double tau = 0.0) {
    ReplayOptions o;
    o.kind = kind;
    o.hp.tau = tau;
    if (kind != search::RankerKind::bm25_only) o.model = bundled_model();
    return o;
}

}  // namespace

TEST_CASE("metrics examples") {
    auto r = compute_metrics({entry("a", "a", 1), entry("b", "a", 2), entry(std::nullopt, "c", 4)});
    CHECK(r.answered == 2);
    CHECK(r.correct == 1);
    CHECK(r.answerable == 3);
    CHECK(r.precision_at_1 == doctest::Approx(0.5));
    CHECK(r.recall_at_1 == doctest::Approx(1.0 / 3));
    CHECK(r.f1_at_1 == doctest::Approx(0.4));
    CHECK(r.mrr == doctest::Approx(0.5833).epsilon(1e-4));

    auto none = compute_metrics({entry(std::nullopt, "a", 0)});
    CHECK(none.precision_undefined);
    CHECK(none.precision_at_1 == 0.0);
    CHECK(none.f1_at_1 == 0.0);
    CHECK(none.mrr == 0.0);

    auto empty = compute_metrics({});
    CHECK(empty.recall_undefined);
    CHECK(empty.to_json(false).contains("f1_at_1"));
    CHECK_FALSE(empty.to_json(false).contains("per_event_trace"));
}

TEST_CASE("replay with an infinite threshold answers nothing but still ranks") {
    std::vector<FeedbackEvent> s{create(1, article("a", "printer toner")), create(2, article("b", "printer setup")),
                                 query(3, "printer toner", "b")};
    auto r = replay(s, options(search::RankerKind::bm25_only, std::numeric_limits<double>::infinity()));
    CHECK(r.answered == 0);
    CHECK(r.precision_undefined);
    CHECK(r.recall_at_1 == 0.0);
    REQUIRE(r.per_event_trace.size() == 1);
    CHECK(r.per_event_trace[0].rank == 2);
    CHECK(r.mrr == doctest::Approx(0.5));
}

TEST_CASE("replay input validation") {
    std::vector<FeedbackEvent> unordered{create(5, article("a", "x")), create(4, article("b", "y"))};
    CHECK_THROWS_AS(replay(unordered, options(search::RankerKind::bm25_only)), OrderingError);
    std::vector<FeedbackEvent> no_truth{create(1, article("a", "x")), query(2, "x", std::nullopt)};
    CHECK_THROWS_AS(replay(no_truth, options(search::RankerKind::bm25_only)), ValidationError);
}

TEST_CASE("only the adaptive ranker learns from expert answers") {
    std::vector<FeedbackEvent> s{create(1, article("a", "reset vpn password", "Reset the vpn password in the portal.")),
                                 create(2, article("b", "vpn token renewal", "Renew the hardware token."))};
    Timestamp ts = 10;
    for (int i = 0; i < 6; ++i) s.push_back(query(ts++, "reset vpn password", "b", true));

    auto fixed = replay(s, options(search::RankerKind::static_only));
    auto learned = replay(s, options(search::RankerKind::static_plus_adaptive));
    REQUIRE(fixed.per_event_trace.size() == 6);
    CHECK(fixed.correct == 0);
    CHECK_FALSE(learned.per_event_trace.front().correct);
    CHECK(learned.per_event_trace.back().correct);
    CHECK(learned.f1_at_1 > fixed.f1_at_1);
    CHECK(replay(s, options(search::RankerKind::static_plus_adaptive)) == learned);
}

TEST_CASE("generator is deterministic and respects its counts") {
    GeneratorSpec spec;
    spec.seed = 99;
    spec.num_articles = 50;
    spec.queries_per_article = 6;
    auto a = generate_dataset(spec);
    auto b = generate_dataset(spec);
    CHECK(a.stream == b.stream);
    CHECK(a.articles == b.articles);
    CHECK(a.examples == b.examples);
    CHECK(a.query_count() == 300);
    CHECK(a.article_event_count() == 50);
    CHECK_NOTHROW(check_stream_order(a.stream));
    for (const auto& e : a.stream)
        if (e.is_query()) CHECK(e.ground_truth);

    spec.seed = 100;
    CHECK_FALSE(generate_dataset(spec).stream == a.stream);

    spec.num_articles = 0;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec.num_articles = 50;
    CHECK(GeneratorSpec::from_json(spec.to_json()).to_json() == spec.to_json());
}

TEST_CASE("noise-free queries are answered exactly by the static ranker") {
    GeneratorSpec spec;
    spec.seed = 5;
    spec.num_articles = 30;
    spec.queries_per_article = 2;
    spec.paraphrase_noise = 0.0;
    auto ds = generate_dataset(spec);
    auto r = replay(ds.stream, options(search::RankerKind::static_only, -std::numeric_limits<double>::infinity()));
    CHECK(r.recall_at_1 == doctest::Approx(1.0));
}

TEST_CASE("benchmark specs") {
    auto specs = benchmark_specs(42, 12);
    REQUIRE(specs.size() == 12);
    CHECK(specs.front().queries_per_article < specs.back().queries_per_article);
    CHECK(specs[0].org != specs[1].org);
    CHECK(benchmark_specs(42, 12)[3].to_json() == specs[3].to_json());
}

TEST_CASE("compare_rankers") {
    GeneratorSpec spec;
    spec.num_articles = 20;
    spec.queries_per_article = 3;
    std::vector<NamedStream> streams;
    for (std::uint64_t seed : {1, 2, 3}) {
        spec.seed = seed;
        spec.org = "c" + std::to_string(seed);
        streams.push_back({spec.org, generate_dataset(spec).stream});
    }
    auto same = options(search::RankerKind::static_plus_adaptive, 0.5);
    auto table = compare_rankers(streams, {same, same}, {"x", "y"});
    REQUIRE(table.rows.size() == 3);
    CHECK(table.macro_f1[0] == table.macro_f1[1]);
    CHECK(table.macro_mrr[0] == table.macro_mrr[1]);
    CHECK(table.to_text().find("dF1") != std::string::npos);

    auto opts = std::vector<ReplayOptions>{options(search::RankerKind::bm25_only, 3.0), same};
    auto par = compare_rankers(streams, opts, {"bm25", "adaptive"});
    auto ser = compare_rankers_serial(streams, opts, {"bm25", "adaptive"});
    CHECK(par.to_json() == ser.to_json());

    std::vector<FeedbackEvent> merged;
    for (const auto& s : streams) merged.insert(merged.end(), s.events.begin(), s.events.end());
    auto split = split_by_org(merged);
    REQUIRE(split.size() == 3);
    CHECK(split[1].events == streams[1].events);
}

TEST_CASE("ranker config") {
    auto c = RankerConfig::from_json(json{{"name", "adaptive"}, {"kind", "static_plus_adaptive"},
                                          {"model", "m.json"}, {"hyperparams", {{"tau", "inf"}, {"k", 3}}}},
                                     "/base");
    CHECK(c.model_path == std::filesystem::path("/base/m.json"));
    CHECK(std::isinf(c.hyperparams.tau));
    CHECK(c.hyperparams.k == 3);
    CHECK(RankerConfig::from_json(c.to_json()).to_json() == c.to_json());

    c.model_path.reset();
    CHECK_THROWS_AS(c.validate(), ValidationError);
    c.kind = search::RankerKind::bm25_only;
    CHECK_NOTHROW(c.validate());
}

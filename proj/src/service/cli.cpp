#include "kbrank/service/cli.hpp"

#include "kbrank/core/errors.hpp"
#include "kbrank/core/event_log.hpp"
#include "kbrank/eval/compare.hpp"
#include "kbrank/eval/generator.hpp"
#include "kbrank/eval/replay.hpp"
#include "kbrank/ranking/ranksvm.hpp"
#include "kbrank/service/api.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

namespace kbrank::service {

namespace {

struct ResourceFlags {
    std::string embeddings;
    std::string synonyms;

    void add(CLI::App* cmd) {
        cmd->add_option("--embeddings", embeddings, "word vectors (text format)")->check(CLI::ExistingFile);
        cmd->add_option("--synonyms", synonyms, "synonym pairs (tsv)")->check(CLI::ExistingFile);
    }
    std::shared_ptr<const text::ResourceBundle> load() const {
        auto opt = [](const std::string& s) {
            return s.empty() ? std::nullopt : std::optional<std::filesystem::path>(s);
        };
        return std::make_shared<const text::ResourceBundle>(
            text::ResourceBundle::load(opt(embeddings), opt(synonyms)));
    }
};

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

std::map<ArticleId, KbArticle> read_articles(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::map<ArticleId, KbArticle> corpus;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        try {
            json j = json::parse(line);
            KbArticle a = article_from_json(j, OrgId(j.value("org", std::string("default"))));
            corpus[a.id] = std::move(a);
        } catch (const json::parse_error& e) {
            throw ParseError(path.string() + ":" + std::to_string(n) + ": " + e.what());
        }
    }
    return corpus;
}

void print_report(const std::string& name, const eval::EvalReport& r) {
    std::printf("%-10s P@1=%.4f R@1=%.4f F1@1=%.4f MRR=%.4f answered=%zu correct=%zu answerable=%zu%s%s\n",
                name.c_str(), r.precision_at_1, r.recall_at_1, r.f1_at_1, r.mrr, r.answered, r.correct, r.answerable,
                r.precision_undefined ? " (precision undefined)" : "", r.recall_undefined ? " (recall undefined)" : "");
}

eval::RankerConfig ranker_from_flags(const std::string& config_path, const std::string& kind,
                                     const std::string& model) {
    eval::RankerConfig c = config_path.empty() ? eval::RankerConfig{} : eval::RankerConfig::load(config_path);
    if (!kind.empty()) {
        c.kind = search::parse_ranker_kind(kind);
        if (config_path.empty()) c.name = kind;
    } else if (config_path.empty()) {
        c.name = "adaptive";
    }
    if (!model.empty()) c.model_path = model;
    return c;
}

ApiServer* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"kbrank: knowledge-base search with feedback-driven reranking"};
    app.require_subcommand(1);

    // train-static
    std::string examples_path, articles_path, model_out, train_config;
    ResourceFlags train_res;
    auto* train = app.add_subcommand("train-static", "train the static pairwise ranker");
    train->add_option("--examples", examples_path, "labelled examples (jsonl)")->required()->check(CLI::ExistingFile);
    train->add_option("--articles", articles_path, "article corpus (jsonl)")->required()->check(CLI::ExistingFile);
    train->add_option("--out", model_out, "output model file")->required();
    train->add_option("--config", train_config, "training config (json)")->check(CLI::ExistingFile);
    train_res.add(train);

    // generate
    std::string spec_path, gen_out;
    auto* gen = app.add_subcommand("generate", "generate a synthetic dataset");
    gen->add_option("--spec", spec_path, "generator spec (json)")->required()->check(CLI::ExistingFile);
    gen->add_option("--out", gen_out, "output directory")->required();

    // replay
    std::string stream_path, ranker_kind, ranker_config, ranker_model, report_out;
    ResourceFlags replay_res;
    auto* rep = app.add_subcommand("replay", "replay a labelled stream and report metrics");
    rep->add_option("--stream", stream_path, "event stream (jsonl)")->required()->check(CLI::ExistingFile);
    rep->add_option("--ranker", ranker_kind, "ranker kind")->check(CLI::IsMember({"bm25", "static", "adaptive"}));
    rep->add_option("--config", ranker_config, "ranker config (json)")->check(CLI::ExistingFile);
    rep->add_option("--model", ranker_model, "static model file")->check(CLI::ExistingFile);
    rep->add_option("--report", report_out, "write the full report (json)");
    replay_res.add(rep);

    // compare
    std::vector<std::string> cmp_streams, cmp_configs;
    std::string cmp_out;
    ResourceFlags cmp_res;
    auto* cmp = app.add_subcommand("compare", "compare rankers over one or more streams");
    cmp->add_option("--stream", cmp_streams, "event streams (jsonl); multi-org streams are split per org")
        ->required()
        ->check(CLI::ExistingFile);
    cmp->add_option("--configs", cmp_configs, "ranker configs (json)")->required()->check(CLI::ExistingFile);
    cmp->add_option("--out", cmp_out, "write the table (json)");
    cmp_res.add(cmp);

    // tune
    std::vector<std::string> tune_streams;
    std::string tune_config;
    std::vector<double> tune_taus;
    ResourceFlags tune_res;
    auto* tune = app.add_subcommand("tune", "pick the answer threshold that maximizes macro F1@1");
    tune->add_option("--stream", tune_streams, "dev streams (jsonl)")->required()->check(CLI::ExistingFile);
    tune->add_option("--config", tune_config, "ranker config (json)")->required()->check(CLI::ExistingFile);
    tune->add_option("--tau", tune_taus, "candidate thresholds")->required();
    tune_res.add(tune);

    // serve
    std::string serve_config;
    int serve_port = -1;
    auto* serve = app.add_subcommand("serve", "run the HTTP service");
    serve->add_option("--config", serve_config, "service config (json)")->required()->check(CLI::ExistingFile);
    serve->add_option("--port", serve_port, "override the configured port");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*train) {
            auto examples = ranking::read_examples(examples_path);
            auto corpus = read_articles(articles_path);
            ranking::TrainConfig cfg =
                train_config.empty() ? ranking::TrainConfig{} : ranking::TrainConfig::from_json(read_json_file(train_config));
            auto resources = train_res.load();
            auto result = ranking::train_ranksvm(examples, corpus, *resources, cfg);
            result.model.save(model_out);
            std::printf("trained on %zu examples (%zu pairs); final objective %.6f -> %s\n", examples.size(),
                        result.pair_count, result.objective_trace.empty() ? 0.0 : result.objective_trace.back(),
                        model_out.c_str());
        } else if (*gen) {
            auto specs = eval::load_generator_specs(spec_path);
            std::vector<FeedbackEvent> combined;
            for (const auto& s : specs) {
                auto ds = eval::generate_dataset(s);
                const auto dir = specs.size() == 1 ? std::filesystem::path(gen_out) : std::filesystem::path(gen_out) / s.org;
                eval::write_dataset(ds, dir);
                std::printf("%s: %zu articles, %zu query events -> %s\n", s.org.c_str(), ds.articles.size(),
                            ds.query_count(), dir.string().c_str());
                combined.insert(combined.end(), ds.stream.begin(), ds.stream.end());
            }
            if (specs.size() > 1) EventLog::write_file(std::filesystem::path(gen_out) / "stream.jsonl", combined);
        } else if (*rep) {
            if (ranker_kind.empty() && ranker_config.empty()) throw ValidationError("give --ranker or --config");
            auto cfg = ranker_from_flags(ranker_config, ranker_kind, ranker_model);
            auto options = eval::make_replay_options(cfg, replay_res.load());
            auto report = eval::replay(EventLog::read_file(stream_path), options);
            print_report(cfg.name, report);
            if (!report_out.empty()) write_json_file(report_out, report.to_json());
        } else if (*cmp) {
            std::vector<eval::NamedStream> streams;
            for (const auto& path : cmp_streams)
                for (auto& s : eval::split_by_org(EventLog::read_file(path))) streams.push_back(std::move(s));
            auto resources = cmp_res.load();
            std::vector<eval::ReplayOptions> rankers;
            std::vector<std::string> names;
            for (const auto& path : cmp_configs) {
                auto cfg = eval::RankerConfig::load(path);
                rankers.push_back(eval::make_replay_options(cfg, resources));
                names.push_back(cfg.name);
            }
            auto table = eval::compare_rankers(streams, rankers, names);
            std::fputs(table.to_text().c_str(), stdout);
            if (!cmp_out.empty()) write_json_file(cmp_out, table.to_json());
        } else if (*tune) {
            std::vector<eval::NamedStream> streams;
            for (const auto& path : tune_streams)
                for (auto& s : eval::split_by_org(EventLog::read_file(path))) streams.push_back(std::move(s));
            auto base = eval::RankerConfig::load(tune_config);
            auto resources = tune_res.load();
            std::vector<eval::ReplayOptions> rankers;
            std::vector<std::string> names;
            for (double tau : tune_taus) {
                auto cfg = base;
                cfg.hyperparams.tau = tau;
                rankers.push_back(eval::make_replay_options(cfg, resources));
                names.push_back("tau=" + std::to_string(tau));
            }
            auto table = eval::compare_rankers(streams, rankers, names);
            std::size_t best = 0;
            for (std::size_t i = 0; i < tune_taus.size(); ++i) {
                std::printf("tau=%-10g macro F1@1=%.4f MRR=%.4f\n", tune_taus[i], table.macro_f1[i], table.macro_mrr[i]);
                if (table.macro_f1[i] > table.macro_f1[best]) best = i;
            }
            std::printf("best tau=%g\n", tune_taus[best]);
        } else if (*serve) {
            auto cfg = ApiConfig::load(serve_config);
            if (serve_port >= 0) cfg.port = serve_port;
            ApiServer server(std::move(cfg));
            const int port = server.bind();
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::printf("listening on %s:%d\n", server.config().host.c_str(), port);
            std::fflush(stdout);
            server.listen();
            g_server = nullptr;
        }
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

}  // namespace kbrank::service

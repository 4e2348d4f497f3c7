#include "kbrank/service/api.hpp"

#include "kbrank/core/errors.hpp"

#include <httplib.h>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>

namespace kbrank::service {

namespace {

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
    return p.is_relative() && !base.empty() ? base / p : p;
}

Timestamp now_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

void reply(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void fail(httplib::Response& res, int status, const std::string& message) {
    reply(res, status, json{{"error", message}});
}

json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    try {
        json j = json::parse(req.body);
        if (!j.is_object()) throw ParseError("request body must be a JSON object");
        return j;
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

// Maps library errors onto status codes.
httplib::Server::Handler guarded(std::function<void(const httplib::Request&, httplib::Response&)> fn) {
    return [fn = std::move(fn)](const httplib::Request& req, httplib::Response& res) {
        try {
            fn(req, res);
        } catch (const OrgNotFound& e) {
            fail(res, 404, e.what());
        } catch (const NotFound& e) {
            fail(res, 404, e.what());
        } catch (const OrderingError& e) {
            fail(res, 409, e.what());
        } catch (const ValidationError& e) {
            fail(res, 400, e.what());
        } catch (const ParseError& e) {
            fail(res, 400, e.what());
        } catch (const json::exception& e) {
            fail(res, 400, e.what());
        } catch (const std::exception& e) {
            fail(res, 500, e.what());
        }
    };
}

std::string str_field(const json& body, const char* key) {
    auto it = body.find(key);
    if (it == body.end() || !it->is_string()) throw ValidationError(std::string("missing string field '") + key + "'");
    return it->get<std::string>();
}

}  // namespace

ApiConfig ApiConfig::from_json(const json& j, const std::filesystem::path& base_dir) {
    ApiConfig c;
    c.host = j.value("host", c.host);
    c.port = j.value("port", c.port);
    c.data_dir = resolve(j.value("data_dir", c.data_dir.string()), base_dir);
    if (j.contains("ranker")) {
        c.ranker = eval::RankerConfig::from_json(j.at("ranker"), base_dir);
    } else {
        c.ranker.kind = search::RankerKind::static_plus_adaptive;
        c.ranker.name = "adaptive";
    }
    if (auto it = j.find("embeddings"); it != j.end() && !it->is_null())
        c.embeddings = resolve(it->get<std::string>(), base_dir);
    if (auto it = j.find("synonyms"); it != j.end() && !it->is_null())
        c.synonyms = resolve(it->get<std::string>(), base_dir);
    c.snapshot_every = j.value("snapshot_every", c.snapshot_every);
    c.parallel_scoring = j.value("parallel_scoring", c.parallel_scoring);
    return c;
}

ApiConfig ApiConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open service config: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return from_json(j, path.parent_path());
}

ApiServer::ApiServer(ApiConfig config) : config_(std::move(config)), http_(std::make_unique<httplib::Server>()) {
    kbrank::validate(config_.ranker.hyperparams);
    std::filesystem::create_directories(config_.data_dir);

    search::EngineConfig ec;
    ec.hp = config_.ranker.hyperparams;
    if (!config_.ranker.delta_overrides.is_null()) {
        auto policy = adaptive::DeltaPolicy::from_hyperparams(ec.hp);
        policy.apply_overrides(config_.ranker.delta_overrides);
        ec.policy = policy;
    }
    if (config_.ranker.model_path)
        ec.model = std::make_shared<const ranking::LinearRankModel>(
            ranking::LinearRankModel::load(*config_.ranker.model_path));
    ec.resources = std::make_shared<const text::ResourceBundle>(
        text::ResourceBundle::load(config_.embeddings, config_.synonyms));
    ec.parallel_scoring = config_.parallel_scoring;
    ec.auto_create_orgs = true;
    engine_ = std::make_unique<search::SearchEngine>(std::move(ec));

    // Rebuild state: registered orgs first, then every logged event in order.
    const auto orgs_file = config_.data_dir / "orgs.json";
    if (std::filesystem::exists(orgs_file)) {
        std::ifstream in(orgs_file);
        json j = json::parse(in);
        for (const auto& o : j) engine_->add_org(OrgId(o.get<std::string>()));
    }
    log_ = std::make_unique<EventLog>(config_.data_dir / "events.jsonl");
    for (const auto& e : log_->events()) engine_->handle_event(e);
    engine_->attach_log(log_.get());

    routes();
}

ApiServer::~ApiServer() {
    try {
        if (engine_) save_snapshot();
    } catch (...) {
    }
}

int ApiServer::bind() {
    if (config_.port == 0) {
        config_.port = http_->bind_to_any_port(config_.host);
        if (config_.port < 0) throw Error("cannot bind " + config_.host);
    } else if (!http_->bind_to_port(config_.host, config_.port)) {
        throw Error("cannot bind " + config_.host + ":" + std::to_string(config_.port));
    }
    return config_.port;
}

void ApiServer::listen() { http_->listen_after_bind(); }

void ApiServer::stop() { http_->stop(); }

void ApiServer::save_snapshot() {
    std::lock_guard lock(write_mu_);
    engine_->save_snapshot(config_.data_dir / "snapshot.json");
    since_snapshot_ = 0;
}

void ApiServer::register_org(const OrgId& org) {
    engine_->add_org(org);
    json list = json::array();
    for (const auto& o : engine_->orgs()) list.push_back(o.str());
    const auto path = config_.data_dir / "orgs.json";
    const auto tmp = config_.data_dir / "orgs.json.tmp";
    {
        std::ofstream out(tmp);
        out << list.dump() << '\n';
        if (!out) throw Error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

Timestamp ApiServer::next_ts(const OrgId& org, const json& body) {
    if (auto it = body.find("ts"); it != body.end() && !it->is_null()) return it->get<Timestamp>();
    Timestamp ts = now_ms();
    if (auto last = engine_->last_timestamp(org)) ts = std::max(ts, *last);
    return ts;
}

void ApiServer::after_event() {
    if (config_.snapshot_every == 0 || ++since_snapshot_ < config_.snapshot_every) return;
    engine_->save_snapshot(config_.data_dir / "snapshot.json");
    since_snapshot_ = 0;
}

void ApiServer::routes() {
    auto org_of = [this](const httplib::Request& req) {
        OrgId org(req.path_params.at("org"));
        if (!engine_->has_org(org)) throw OrgNotFound("unknown org: " + org.str());
        return org;
    };

    http_->Get("/health", [](const httplib::Request&, httplib::Response& res) { reply(res, 200, json{{"ok", true}}); });

    http_->Post("/orgs/:org", guarded([this](const httplib::Request& req, httplib::Response& res) {
        OrgId org(req.path_params.at("org"));
        std::lock_guard lock(write_mu_);
        const bool existed = engine_->has_org(org);
        if (!existed) register_org(org);
        reply(res, existed ? 200 : 201, json{{"org", org.str()}, {"created", !existed}});
    }));

    http_->Post("/orgs/:org/articles", guarded([this, org_of](const httplib::Request& req, httplib::Response& res) {
        const OrgId org = org_of(req);
        json body = parse_body(req);
        std::lock_guard lock(write_mu_);
        if (!body.contains("id")) {
            std::size_t n = engine_->article_count(org) + 1;
            while (engine_->article(org, "art-" + std::to_string(n))) ++n;
            body["id"] = "art-" + std::to_string(n);
        }
        KbArticle article = article_from_json(body, org);
        if (engine_->article(org, article.id)) throw OrderingError("article already exists: " + article.id);
        const Timestamp ts = next_ts(org, body);
        auto id = engine_->create_or_update_article(org, std::move(article), ts);
        after_event();
        reply(res, 201, json{{"id", id}, {"ts", ts}});
    }));

    http_->Put("/orgs/:org/articles/:id", guarded([this, org_of](const httplib::Request& req, httplib::Response& res) {
        const OrgId org = org_of(req);
        json body = parse_body(req);
        body["id"] = req.path_params.at("id");
        std::lock_guard lock(write_mu_);
        if (!engine_->article(org, body["id"].get<std::string>()))
            throw NotFound("no article " + body["id"].get<std::string>());
        KbArticle article = article_from_json(body, org);
        const Timestamp ts = next_ts(org, body);
        auto id = engine_->create_or_update_article(org, std::move(article), ts);
        after_event();
        reply(res, 200, json{{"id", id}, {"ts", ts}});
    }));

    http_->Delete("/orgs/:org/articles/:id",
                  guarded([this, org_of](const httplib::Request& req, httplib::Response& res) {
                      const OrgId org = org_of(req);
                      std::lock_guard lock(write_mu_);
                      engine_->delete_article(org, req.path_params.at("id"), next_ts(org, json::object()));
                      after_event();
                      res.status = 204;
                  }));

    http_->Get("/orgs/:org/articles/:id", guarded([this, org_of](const httplib::Request& req, httplib::Response& res) {
        const OrgId org = org_of(req);
        auto a = engine_->article(org, req.path_params.at("id"));
        if (!a) throw NotFound("no article " + req.path_params.at("id"));
        reply(res, 200, to_json(*a));
    }));

    http_->Post("/orgs/:org/search", guarded([this, org_of](const httplib::Request& req, httplib::Response& res) {
        const OrgId org = org_of(req);
        const json body = parse_body(req);
        const std::string query = str_field(body, "query");
        const std::size_t top_k = body.value("top_k", std::size_t{10});
        auto result = engine_->search(org, query, config_.ranker.hyperparams, config_.ranker.kind);
        if (!result.answer) {
            // Unanswered questions go to the expert queue.
            std::lock_guard lock(write_mu_);
            FeedbackEvent e;
            e.org = org;
            e.ts = next_ts(org, json::object());
            e.kind = EventKind::search_feedback;
            e.payload = SearchFeedback{query, std::nullopt, Role::user, Label::negative};
            engine_->handle_event(e);
            after_event();
        }
        if (result.ranked_candidates.size() > top_k) result.ranked_candidates.resize(top_k);
        reply(res, 200, result.to_json());
    }));

    http_->Post("/orgs/:org/feedback", guarded([this, org_of](const httplib::Request& req, httplib::Response& res) {
        const OrgId org = org_of(req);
        const json body = parse_body(req);
        FeedbackEvent e;
        e.org = org;
        SearchFeedback sf;
        sf.query = str_field(body, "query");
        if (auto it = body.find("article"); it != body.end() && !it->is_null()) sf.article = it->get<std::string>();
        sf.role = parse_role(str_field(body, "role"));
        sf.label = parse_label(str_field(body, "label"));
        std::lock_guard lock(write_mu_);
        if (sf.article && !engine_->article(org, *sf.article)) throw NotFound("no article " + *sf.article);
        e.ts = next_ts(org, body);
        if (body.value("kind", std::string("search_feedback")) == "expert_answer") {
            if (sf.role != Role::expert || sf.label != Label::positive || !sf.article)
                throw ValidationError("expert_answer needs role expert, label + and an article");
            e.kind = EventKind::expert_answer;
            e.payload = ExpertAnswer{sf.query, *sf.article};
        } else {
            e.kind = EventKind::search_feedback;
            e.payload = sf;
        }
        const bool applied = engine_->handle_event(e) == search::EventOutcome::applied;
        after_event();
        reply(res, 200, json{{"applied", applied}, {"ts", e.ts}});
    }));

    http_->Get("/orgs/:org/queue", guarded([this, org_of](const httplib::Request& req, httplib::Response& res) {
        const OrgId org = org_of(req);
        json items = json::array();
        for (const auto& item : engine_->expert_queue(org)) items.push_back(item.to_json());
        reply(res, 200, json{{"org", org.str()}, {"items", items}});
    }));

    http_->Get("/orgs/:org/metrics", guarded([this, org_of](const httplib::Request& req, httplib::Response& res) {
        const OrgId org = org_of(req);
        std::size_t models = 0, positives = 0, negatives = 0;
        for (const auto& m : engine_->feedback_models(org)) {
            if (!m.empty()) ++models;
            positives += m.positives.size();
            negatives += m.negatives.size();
        }
        auto last = engine_->last_timestamp(org);
        reply(res, 200,
              json{{"org", org.str()},
                   {"articles", engine_->article_count(org)},
                   {"articles_with_feedback", models},
                   {"stored_positive_queries", positives},
                   {"stored_negative_queries", negatives},
                   {"queue_length", engine_->expert_queue(org).size()},
                   {"last_ts", last ? json(*last) : json(nullptr)},
                   {"ranker", search::to_string(config_.ranker.kind)}});
    }));
}

}  // namespace kbrank::service

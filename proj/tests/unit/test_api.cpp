#include "kbrank/service/api.hpp"
#include "test_support.hpp"

#include <doctest.h>
#include <httplib.h>

#include <thread>

using namespace kbrank;
using namespace kbrank::service;

namespace {

ApiConfig test_config(const std::filesystem::path& dir) {
    ApiConfig c;
    c.port = 0;
    c.data_dir = dir;
    c.ranker.kind = search::RankerKind::static_plus_adaptive;
    c.ranker.model_path = kbrank::testing::source_dir() / "data" / "model" / "static_model.json";
    c.ranker.hyperparams.tau = 0.0;
    c.snapshot_every = 3;
    return c;
}

// Runs a server on a background thread for the lifetime of the object.
struct RunningServer {
    ApiServer server;
    int port;
    std::thread thread;
    httplib::Client client;

    explicit RunningServer(const std::filesystem::path& dir)
        : server(test_config(dir)), port(server.bind()), thread([this] { server.listen(); }),
          client("127.0.0.1", port) {
        server.http().wait_until_ready();
    }
    ~RunningServer() {
        server.stop();
        thread.join();
    }

    httplib::Result post(const std::string& path, const json& body) {
        return client.Post(path, body.dump(), "application/json");
    }
    httplib::Result put(const std::string& path, const json& body) {
        return client.Put(path, body.dump(), "application/json");
    }
};

json body_of(const httplib::Result& r) { return json::parse(r->body); }

}  // namespace

TEST_CASE("http api end to end") {
    const auto dir = kbrank::testing::fresh_dir("api");
    std::string state_before;
    {
        RunningServer s(dir);
        auto& c = s.client;

        auto health = c.Get("/health");
        REQUIRE(health);
        CHECK(health->status == 200);

        CHECK(c.Get("/orgs/acme/queue")->status == 404);
        CHECK(s.post("/orgs/acme", json::object())->status == 201);
        CHECK(s.post("/orgs/acme", json::object())->status == 200);

        auto created = s.post("/orgs/acme/articles", {{"id", "vpn-reset"},
                                                      {"title", "Reset your VPN password"},
                                                      {"body", "Use the portal to reset the VPN password."},
                                                      {"keywords", {"vpn"}}});
        REQUIRE(created);
        CHECK(created->status == 201);
        CHECK(body_of(created)["id"] == "vpn-reset");
        CHECK(s.post("/orgs/acme/articles", {{"id", "vpn-reset"}, {"title", "again"}})->status == 409);
        auto auto_id = s.post("/orgs/acme/articles", {{"title", "Request a new laptop"}});
        CHECK(auto_id->status == 201);
        const std::string laptop = body_of(auto_id)["id"];
        CHECK(laptop.rfind("art-", 0) == 0);
        CHECK(s.post("/orgs/acme/articles", {{"body", "no title"}})->status == 400);

        auto got = c.Get("/orgs/acme/articles/vpn-reset");
        REQUIRE(got);
        CHECK(got->status == 200);
        CHECK(body_of(got)["title"] == "Reset your VPN password");
        CHECK(s.put("/orgs/acme/articles/ghost", {{"title", "x"}})->status == 404);
        CHECK(s.put("/orgs/acme/articles/" + laptop, {{"title", "Order a new laptop"}})->status == 200);

        auto hit = s.post("/orgs/acme/search", {{"query", "reset vpn password"}});
        REQUIRE(hit);
        CHECK(hit->status == 200);
        CHECK(body_of(hit)["answer"]["article_id"] == "vpn-reset");
        CHECK(s.post("/orgs/acme/search", {{"query", "reset vpn password"}, {"top_k", 1}})
                  .value()
                  .body.find(laptop) == std::string::npos);

        auto miss = s.post("/orgs/acme/search", {{"query", "zebra migration"}});
        CHECK(body_of(miss)["answer"].is_null());
        auto queue = body_of(c.Get("/orgs/acme/queue"));
        REQUIRE(queue["items"].size() == 1);
        CHECK(queue["items"][0]["reason"] == "no_answer");

        auto fb = s.post("/orgs/acme/feedback",
                         {{"query", "zebra migration"}, {"article", laptop}, {"role", "expert"}, {"label", "+"}});
        CHECK(fb->status == 200);
        CHECK(body_of(fb)["applied"] == true);
        CHECK(body_of(c.Get("/orgs/acme/queue"))["items"].empty());

        CHECK(s.post("/orgs/acme/feedback", {{"query", "q"}, {"article", "ghost"}, {"role", "user"}, {"label", "-"}})
                  ->status == 404);
        CHECK(s.post("/orgs/acme/feedback", {{"query", "q"}, {"role", "boss"}, {"label", "-"}})->status == 400);
        CHECK(s.post("/orgs/acme/feedback", {{"query", "q"}, {"role", "user"}, {"label", "-"}, {"ts", 1}})->status ==
              409);
        CHECK(s.post("/orgs/acme/feedback", {{"query", "q"},
                                             {"article", laptop},
                                             {"role", "user"},
                                             {"label", "+"},
                                             {"kind", "expert_answer"}})
                  ->status == 400);
        CHECK(c.Post("/orgs/acme/search", "{not json", "application/json")->status == 400);

        auto metrics = body_of(c.Get("/orgs/acme/metrics"));
        CHECK(metrics["articles"] == 2);
        CHECK(metrics["stored_positive_queries"] == 1);

        CHECK(s.post("/orgs/acme/articles", {{"id", "tmp"}, {"title", "Temporary"}})->status == 201);
        CHECK(c.Delete("/orgs/acme/articles/tmp")->status == 204);
        CHECK(c.Get("/orgs/acme/articles/tmp")->status == 404);
        CHECK(c.Delete("/orgs/acme/articles/tmp")->status == 404);

        state_before = s.server.engine().canonical_state();
    }
    CHECK(std::filesystem::exists(dir / "snapshot.json"));

    // Restart from the same data directory: the log replay restores the exact state.
    RunningServer again(dir);
    CHECK(again.server.engine().canonical_state() == state_before);
    CHECK(again.client.Get("/orgs/acme/articles/vpn-reset")->status == 200);
}

TEST_CASE("concurrent writers keep the log consistent with the state") {
    const auto dir = kbrank::testing::fresh_dir("api-conc");
    std::string state;
    {
        RunningServer s(dir);
        s.post("/orgs/acme", json::object());
        for (int i = 0; i < 4; ++i)
            s.post("/orgs/acme/articles", {{"id", "a" + std::to_string(i)}, {"title", "vpn guide " + std::to_string(i)}});
        std::vector<std::thread> workers;
        for (int w = 0; w < 4; ++w)
            workers.emplace_back([&, w] {
                httplib::Client c("127.0.0.1", s.port);
                for (int i = 0; i < 10; ++i) {
                    json body{{"query", "vpn question " + std::to_string(i)},
                              {"article", "a" + std::to_string(w)},
                              {"role", i % 2 ? "expert" : "user"},
                              {"label", i % 2 ? "+" : "-"}};
                    auto r = c.Post("/orgs/acme/feedback", body.dump(), "application/json");
                    CHECK((r && r->status == 200));
                    c.Post("/orgs/acme/search", json{{"query", "vpn guide"}}.dump(), "application/json");
                }
            });
        for (auto& t : workers) t.join();
        state = s.server.engine().canonical_state();
    }
    RunningServer again(dir);
    CHECK(again.server.engine().canonical_state() == state);
}

#pragma once

#include "kbrank/core/event_log.hpp"
#include "kbrank/eval/ranker_config.hpp"
#include "kbrank/search/engine.hpp"

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

namespace httplib {
class Server;
}

namespace kbrank::service {

struct ApiConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::filesystem::path data_dir = "data/service";
    eval::RankerConfig ranker;
    std::optional<std::filesystem::path> embeddings;
    std::optional<std::filesystem::path> synonyms;
    std::size_t snapshot_every = 100;  // events between snapshots; 0 disables
    bool parallel_scoring = true;

    /// Relative paths are resolved against base_dir.
    static ApiConfig from_json(const json& j, const std::filesystem::path& base_dir = {});
    static ApiConfig load(const std::filesystem::path& path);
};

/// HTTP front end over one SearchEngine. Every mutation goes through the engine and is appended to
/// <data_dir>/events.jsonl before the response is sent; on start-up the log is replayed, so the
/// state after a restart equals the state before it. <data_dir>/snapshot.json is rewritten
/// periodically for inspection and backup.
class ApiServer {
public:
    explicit ApiServer(ApiConfig config);
    ~ApiServer();

    ApiServer(const ApiServer&) = delete;
    ApiServer& operator=(const ApiServer&) = delete;

    /// Binds to config.port (0 picks a free port) and returns the bound port.
    int bind();
    /// Serves until stop() is called. Call bind() first.
    void listen();
    void stop();

    search::SearchEngine& engine() { return *engine_; }
    const ApiConfig& config() const { return config_; }
    httplib::Server& http() { return *http_; }

    void save_snapshot();

private:
    void routes();
    Timestamp next_ts(const OrgId& org, const json& body);
    void after_event();
    void register_org(const OrgId& org);

    ApiConfig config_;
    std::unique_ptr<EventLog> log_;
    std::unique_ptr<search::SearchEngine> engine_;
    std::unique_ptr<httplib::Server> http_;
    std::mutex write_mu_;  // serializes timestamp assignment with the write it stamps
    std::size_t since_snapshot_ = 0;
};

}  // namespace kbrank::service

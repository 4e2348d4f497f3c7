#pragma once

#include "kbrank/core/types.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

namespace kbrank {

/// Append-only JSON-lines event log. Timestamps must be non-decreasing per org.
/// Without a path the log is kept in memory only.
class EventLog {
public:
    EventLog() = default;
    /// Opens (or creates) the file; existing lines are loaded and become the ordering baseline.
    explicit EventLog(std::filesystem::path path);

    EventLog(const EventLog&) = delete;
    EventLog& operator=(const EventLog&) = delete;

    /// Throws OrderingError on a timestamp regression for the event's org.
    void check_order(const FeedbackEvent& event) const;
    void append(const FeedbackEvent& event);

    std::optional<Timestamp> last_timestamp(const OrgId& org) const;
    std::vector<FeedbackEvent> events() const;
    std::size_t size() const;
    const std::optional<std::filesystem::path>& path() const { return path_; }

    static std::vector<FeedbackEvent> read_file(const std::filesystem::path& path);
    static void write_file(const std::filesystem::path& path, const std::vector<FeedbackEvent>& events);

private:
    void check_order_locked(const FeedbackEvent& event) const;

    std::optional<std::filesystem::path> path_;
    std::ofstream out_;
    std::vector<FeedbackEvent> events_;
    std::map<OrgId, Timestamp> last_ts_;
    mutable std::mutex mu_;
};

/// Checks that timestamps are non-decreasing per org across a whole stream.
void check_stream_order(const std::vector<FeedbackEvent>& events);

}  // namespace kbrank

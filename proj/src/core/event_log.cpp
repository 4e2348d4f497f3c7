#include "kbrank/core/event_log.hpp"

#include "kbrank/core/errors.hpp"
#include "kbrank/core/serialization.hpp"

#include <string>

namespace kbrank {

EventLog::EventLog(std::filesystem::path path) : path_(std::move(path)) {
    if (std::filesystem::exists(*path_)) {
        events_ = read_file(*path_);
        for (const auto& e : events_) {
            auto [it, inserted] = last_ts_.try_emplace(e.org, e.ts);
            if (!inserted) {
                if (e.ts < it->second) throw OrderingError("existing log is not ordered: " + path_->string());
                it->second = e.ts;
            }
        }
    }
    out_.open(*path_, std::ios::app | std::ios::binary);
    if (!out_) throw Error("cannot open event log for append: " + path_->string());
}

void EventLog::check_order_locked(const FeedbackEvent& event) const {
    auto it = last_ts_.find(event.org);
    if (it != last_ts_.end() && event.ts < it->second)
        throw OrderingError("timestamp regression for org " + event.org.str() + ": " + std::to_string(event.ts) +
                            " < " + std::to_string(it->second));
}

void EventLog::check_order(const FeedbackEvent& event) const {
    std::lock_guard lock(mu_);
    check_order_locked(event);
}

void EventLog::append(const FeedbackEvent& event) {
    std::lock_guard lock(mu_);
    check_order_locked(event);
    if (out_.is_open()) {
        out_ << to_json_line(event) << '\n';
        out_.flush();
        if (!out_) throw Error("event log write failed");
    }
    last_ts_[event.org] = event.ts;
    events_.push_back(event);
}

std::optional<Timestamp> EventLog::last_timestamp(const OrgId& org) const {
    std::lock_guard lock(mu_);
    auto it = last_ts_.find(org);
    if (it == last_ts_.end()) return std::nullopt;
    return it->second;
}

std::vector<FeedbackEvent> EventLog::events() const {
    std::lock_guard lock(mu_);
    return events_;
}

std::size_t EventLog::size() const {
    std::lock_guard lock(mu_);
    return events_.size();
}

std::vector<FeedbackEvent> EventLog::read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open event file: " + path.string());
    std::vector<FeedbackEvent> events;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            events.push_back(parse_json_line(line));
        } catch (const Error& e) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return events;
}

void EventLog::write_file(const std::filesystem::path& path, const std::vector<FeedbackEvent>& events) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write event file: " + path.string());
    for (const auto& e : events) out << to_json_line(e) << '\n';
}

void check_stream_order(const std::vector<FeedbackEvent>& events) {
    std::map<OrgId, Timestamp> last;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        auto [it, inserted] = last.try_emplace(e.org, e.ts);
        if (!inserted) {
            if (e.ts < it->second)
                throw OrderingError("stream out of order at event " + std::to_string(i) + " (org " + e.org.str() + ")");
            it->second = e.ts;
        }
    }
}

}  // namespace kbrank

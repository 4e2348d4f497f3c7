#include "kbrank/eval/compare.hpp"

#include "kbrank/core/errors.hpp"

#include <cstdio>
#include <exception>
#include <map>

namespace kbrank::eval {

namespace {

ComparisonTable make_table(const std::vector<NamedStream>& streams, const std::vector<std::string>& names) {
    ComparisonTable t;
    t.rankers = names;
    t.rows.resize(streams.size());
    for (std::size_t i = 0; i < streams.size(); ++i) {
        t.rows[i].stream = streams[i].name;
        t.rows[i].reports.resize(names.size());
    }
    return t;
}

void finish(ComparisonTable& t) {
    t.macro_f1.assign(t.rankers.size(), 0.0);
    t.macro_mrr.assign(t.rankers.size(), 0.0);
    if (t.rows.empty()) return;
    for (const auto& row : t.rows)
        for (std::size_t r = 0; r < t.rankers.size(); ++r) {
            t.macro_f1[r] += row.reports[r].f1_at_1;
            t.macro_mrr[r] += row.reports[r].mrr;
        }
    for (std::size_t r = 0; r < t.rankers.size(); ++r) {
        t.macro_f1[r] /= static_cast<double>(t.rows.size());
        t.macro_mrr[r] /= static_cast<double>(t.rows.size());
    }
}

void check_args(const std::vector<ReplayOptions>& rankers, const std::vector<std::string>& names) {
    if (rankers.size() != names.size()) throw ValidationError("one name per ranker required");
    if (rankers.empty()) throw ValidationError("no rankers to compare");
}

std::string delta_pct(double before, double after) {
    if (before <= 0.0) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%+.1f%%", 100.0 * (after - before) / before);
    return buf;
}

}  // namespace

ComparisonTable compare_rankers_serial(const std::vector<NamedStream>& streams,
                                       const std::vector<ReplayOptions>& rankers,
                                       const std::vector<std::string>& names) {
    check_args(rankers, names);
    auto t = make_table(streams, names);
    for (std::size_t s = 0; s < streams.size(); ++s)
        for (std::size_t r = 0; r < rankers.size(); ++r) t.rows[s].reports[r] = replay(streams[s].events, rankers[r]);
    finish(t);
    return t;
}

ComparisonTable compare_rankers(const std::vector<NamedStream>& streams, const std::vector<ReplayOptions>& rankers,
                                const std::vector<std::string>& names) {
    check_args(rankers, names);
    auto t = make_table(streams, names);
    const long jobs = static_cast<long>(streams.size() * rankers.size());
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (long job = 0; job < jobs; ++job) {
        const auto s = static_cast<std::size_t>(job) / rankers.size();
        const auto r = static_cast<std::size_t>(job) % rankers.size();
        try {
            t.rows[s].reports[r] = replay(streams[s].events, rankers[r]);
        } catch (...) {
#pragma omp critical(kbrank_compare_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    finish(t);
    return t;
}

std::vector<NamedStream> split_by_org(const std::vector<FeedbackEvent>& events) {
    std::vector<NamedStream> out;
    std::map<OrgId, std::size_t> slot;
    for (const auto& e : events) {
        auto [it, inserted] = slot.try_emplace(e.org, out.size());
        if (inserted) out.push_back({e.org.str(), {}});
        out[it->second].events.push_back(e);
    }
    return out;
}

std::string ComparisonTable::to_text() const {
    std::string s;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-14s", "stream");
    s += buf;
    for (const auto& r : rankers) {
        std::snprintf(buf, sizeof buf, " %12s %12s", (r + " F1").c_str(), (r + " MRR").c_str());
        s += buf;
    }
    if (rankers.size() >= 2) s += "    dF1%";
    s += '\n';
    auto line = [&](const std::string& label, const std::vector<double>& f1, const std::vector<double>& mrr) {
        std::snprintf(buf, sizeof buf, "%-14s", label.c_str());
        s += buf;
        for (std::size_t i = 0; i < f1.size(); ++i) {
            std::snprintf(buf, sizeof buf, " %12.4f %12.4f", f1[i], mrr[i]);
            s += buf;
        }
        if (f1.size() >= 2) s += "  " + delta_pct(f1[f1.size() - 2], f1.back());
        s += '\n';
    };
    for (const auto& row : rows) {
        std::vector<double> f1, mrr;
        for (const auto& rep : row.reports) {
            f1.push_back(rep.f1_at_1);
            mrr.push_back(rep.mrr);
        }
        line(row.stream, f1, mrr);
    }
    line("macro", macro_f1, macro_mrr);
    return s;
}

json ComparisonTable::to_json() const {
    json j{{"rankers", rankers}, {"macro_f1", macro_f1}, {"macro_mrr", macro_mrr}};
    json rs = json::array();
    for (const auto& row : rows) {
        json reports = json::array();
        for (const auto& rep : row.reports) reports.push_back(rep.to_json(false));
        rs.push_back(json{{"stream", row.stream}, {"reports", reports}});
    }
    j["rows"] = rs;
    return j;
}

}  // namespace kbrank::eval

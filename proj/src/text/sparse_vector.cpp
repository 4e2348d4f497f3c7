#include "kbrank/text/sparse_vector.hpp"

#include <algorithm>
#include <cmath>

namespace kbrank::text {

TermId term_id(std::string_view term) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : term) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

SparseVector SparseVector::from_entries(std::vector<Entry> entries) {
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVector v;
    v.entries_.reserve(entries.size());
    for (const auto& e : entries) {
        if (!v.entries_.empty() && v.entries_.back().first == e.first)
            v.entries_.back().second += e.second;
        else
            v.entries_.push_back(e);
    }
    std::erase_if(v.entries_, [](const Entry& e) { return e.second == 0.0; });
    return v;
}

double SparseVector::get(TermId id) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), id,
                               [](const Entry& e, TermId key) { return e.first < key; });
    return (it != entries_.end() && it->first == id) ? it->second : 0.0;
}

double SparseVector::squared_norm() const {
    double s = 0.0;
    for (const auto& [id, v] : entries_) s += v * v;
    return s;
}

double SparseVector::norm() const { return std::sqrt(squared_norm()); }

SparseVector SparseVector::scaled(double alpha) const {
    if (alpha == 0.0) return {};
    SparseVector out = *this;
    for (auto& e : out.entries_) e.second *= alpha;
    return out;
}

SparseVector SparseVector::normalized() const {
    double n = norm();
    return n > 0.0 ? scaled(1.0 / n) : SparseVector{};
}

void SparseVector::add_scaled(const SparseVector& other, double alpha) {
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + other.entries_.size());
    std::size_t i = 0, j = 0;
    while (i < entries_.size() || j < other.entries_.size()) {
        if (j == other.entries_.size() || (i < entries_.size() && entries_[i].first < other.entries_[j].first)) {
            merged.push_back(entries_[i++]);
        } else if (i == entries_.size() || other.entries_[j].first < entries_[i].first) {
            merged.emplace_back(other.entries_[j].first, alpha * other.entries_[j].second);
            ++j;
        } else {
            merged.emplace_back(entries_[i].first, entries_[i].second + alpha * other.entries_[j].second);
            ++i;
            ++j;
        }
    }
    std::erase_if(merged, [](const Entry& e) { return e.second == 0.0; });
    entries_ = std::move(merged);
}

double dot(const SparseVector& a, const SparseVector& b) {
    auto ea = a.entries();
    auto eb = b.entries();
    double s = 0.0;
    std::size_t i = 0, j = 0;
    while (i < ea.size() && j < eb.size()) {
        if (ea[i].first < eb[j].first) {
            ++i;
        } else if (eb[j].first < ea[i].first) {
            ++j;
        } else {
            s += ea[i].second * eb[j].second;
            ++i;
            ++j;
        }
    }
    return s;
}

double cosine_sim(const SparseVector& a, const SparseVector& b) {
    if (a.empty() || b.empty()) return 0.0;
    double denom = std::sqrt(a.squared_norm() * b.squared_norm());
    if (!(denom > 0.0)) return 0.0;
    double c = dot(a, b) / denom;
    return std::clamp(c, -1.0, 1.0);
}

}  // namespace kbrank::text

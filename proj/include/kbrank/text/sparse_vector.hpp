#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace kbrank::text {

using TermId = std::uint64_t;

/// Stable id for a term string (64-bit FNV-1a); independent of any vocabulary snapshot.
TermId term_id(std::string_view term);

/// Sparse vector sorted by term id with no zero entries.
class SparseVector {
public:
    using Entry = std::pair<TermId, double>;

    SparseVector() = default;
    /// Accepts unsorted entries with possible duplicates; duplicates are summed and zeros dropped.
    static SparseVector from_entries(std::vector<Entry> entries);

    std::span<const Entry> entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    double get(TermId id) const;

    double squared_norm() const;
    double norm() const;
    SparseVector scaled(double alpha) const;
    SparseVector normalized() const;

    /// this += alpha * other
    void add_scaled(const SparseVector& other, double alpha);

    bool operator==(const SparseVector&) const = default;

private:
    std::vector<Entry> entries_;
};

double dot(const SparseVector& a, const SparseVector& b);

/// Cosine similarity; 0 when either vector is empty.
double cosine_sim(const SparseVector& a, const SparseVector& b);

}  // namespace kbrank::text

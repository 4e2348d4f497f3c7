#pragma once

#include "kbrank/core/serialization.hpp"
#include "kbrank/core/types.hpp"

#include <array>

namespace kbrank::adaptive {

/// Update magnitude per (role, label). The default reproduces the mistake-driven rule:
/// expert positives move by delta_expert, user negatives by delta_user, everything else by 0.
/// Magnitudes are non-negative; the label selects which side (Q+ or Q-) receives them.
class DeltaPolicy {
public:
    DeltaPolicy() = default;
    static DeltaPolicy from_hyperparams(const Hyperparams& hp);

    double delta(Role role, Label label) const { return table_[index(role, label)]; }
    void set(Role role, Label label, double value);

    /// Overrides given as {"expert+": x, "user-": y, ...}.
    void apply_overrides(const json& overrides);
    json to_json() const;

    bool operator==(const DeltaPolicy&) const = default;

private:
    static std::size_t index(Role role, Label label) {
        return static_cast<std::size_t>(role) * 2 + static_cast<std::size_t>(label);
    }
    std::array<double, 4> table_{};
};

/// Applies one feedback to an article's model: adds the policy's delta to the query's weight in the
/// side chosen by the label (inserting it when new), then keeps the m most recently updated entries.
/// Zero-delta feedback leaves the model untouched. Returns true if the model changed.
bool apply_feedback(FeedbackModel& model, std::string_view query, Role role, Label label, const Hyperparams& hp,
                    const DeltaPolicy& policy, Timestamp now);

}  // namespace kbrank::adaptive

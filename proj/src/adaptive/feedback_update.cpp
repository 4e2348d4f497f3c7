#include "kbrank/adaptive/feedback_update.hpp"

#include "kbrank/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace kbrank::adaptive {

DeltaPolicy DeltaPolicy::from_hyperparams(const Hyperparams& hp) {
    DeltaPolicy p;
    p.set(Role::expert, Label::positive, hp.delta_expert);
    p.set(Role::user, Label::negative, hp.delta_user);
    return p;
}

void DeltaPolicy::set(Role role, Label label, double value) {
    if (!std::isfinite(value) || value < 0.0) throw ValidationError("delta must be finite and non-negative");
    table_[index(role, label)] = value;
}

void DeltaPolicy::apply_overrides(const json& overrides) {
    if (overrides.is_null()) return;
    if (!overrides.is_object()) throw ValidationError("delta overrides must be an object");
    for (const auto& [key, value] : overrides.items()) {
        if (key.size() < 2) throw ValidationError("bad delta override key: " + key);
        Role role = parse_role(key.substr(0, key.size() - 1));
        Label label = parse_label(key.substr(key.size() - 1));
        set(role, label, value.get<double>());
    }
}

json DeltaPolicy::to_json() const {
    return json{{"expert+", delta(Role::expert, Label::positive)},
                {"expert-", delta(Role::expert, Label::negative)},
                {"user+", delta(Role::user, Label::positive)},
                {"user-", delta(Role::user, Label::negative)}};
}

bool apply_feedback(FeedbackModel& model, std::string_view query, Role role, Label label, const Hyperparams& hp,
                    const DeltaPolicy& policy, Timestamp now) {
    const double delta = policy.delta(role, label);
    if (delta == 0.0) return false;

    auto& side = model.side(label);
    auto it = std::find_if(side.begin(), side.end(), [&](const WeightedQuery& wq) { return wq.query_text == query; });
    WeightedQuery entry;
    if (it != side.end()) {
        entry = std::move(*it);
        side.erase(it);
        entry.weight += delta;
    } else {
        entry.query_text = std::string(query);
        entry.weight = delta;
    }
    if (hp.weight_cap > 0.0) entry.weight = std::min(entry.weight, hp.weight_cap);
    entry.last_updated = std::max(now, entry.last_updated);
    entry.seq = model.next_seq++;
    // Entries stay ordered by (last_updated, seq), so the most recently updated sit at the back.
    auto pos = std::upper_bound(side.begin(), side.end(), entry, [](const WeightedQuery& a, const WeightedQuery& b) {
        return std::tie(a.last_updated, a.seq) < std::tie(b.last_updated, b.seq);
    });
    side.insert(pos, std::move(entry));

    const std::size_t m = hp.m;
    if (side.size() > m) side.erase(side.begin(), side.begin() + static_cast<std::ptrdiff_t>(side.size() - m));
    model.capacity = m;
    return true;
}

}  // namespace kbrank::adaptive

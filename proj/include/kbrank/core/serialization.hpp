#pragma once

#include "kbrank/core/types.hpp"

#include <json.hpp>

namespace kbrank {

using json = nlohmann::json;

json to_json(const KbArticle& article);
KbArticle article_from_json(const json& j, const OrgId& org);

json to_json(const WeightedQuery& wq);
WeightedQuery weighted_query_from_json(const json& j);

/// {article_id, positives: [{q, w, ts}], negatives: [...]}
json to_json(const FeedbackModel& model);
FeedbackModel feedback_model_from_json(const json& j, std::size_t capacity);

/// One event-log line: {ts, org, kind, payload} plus ground_truth on evaluation streams.
json to_json(const FeedbackEvent& event);
FeedbackEvent event_from_json(const json& j);

std::string to_json_line(const FeedbackEvent& event);
FeedbackEvent parse_json_line(std::string_view line);

}  // namespace kbrank

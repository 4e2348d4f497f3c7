#include "kbrank/core/serialization.hpp"

#include "kbrank/core/errors.hpp"

namespace kbrank {

namespace {

template <typename T>
T required(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field: ") + key);
    try {
        return it->get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad field ") + key + ": " + e.what());
    }
}

std::optional<std::string> optional_string(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw ParseError(std::string("field must be a string: ") + key);
    return it->get<std::string>();
}

}  // namespace

json to_json(const KbArticle& a) {
    json j;
    j["id"] = a.id;
    j["title"] = a.title;
    j["body"] = a.body;
    j["keywords"] = a.keywords;
    j["link"] = a.link ? json(*a.link) : json(nullptr);
    j["created_at"] = a.created_at;
    j["updated_at"] = a.updated_at;
    return j;
}

KbArticle article_from_json(const json& j, const OrgId& org) {
    if (!j.is_object()) throw ParseError("article must be an object");
    KbArticle a;
    a.org = org;
    a.id = required<std::string>(j, "id");
    a.title = required<std::string>(j, "title");
    a.body = j.value("body", std::string{});
    if (auto it = j.find("keywords"); it != j.end() && !it->is_null())
        a.keywords = it->get<std::vector<std::string>>();
    a.link = optional_string(j, "link");
    a.created_at = j.value("created_at", Timestamp{0});
    a.updated_at = j.value("updated_at", a.created_at);
    return a;
}

json to_json(const WeightedQuery& wq) {
    return json{{"q", wq.query_text}, {"w", wq.weight}, {"ts", wq.last_updated}, {"seq", wq.seq}};
}

WeightedQuery weighted_query_from_json(const json& j) {
    WeightedQuery wq;
    wq.query_text = required<std::string>(j, "q");
    wq.weight = required<double>(j, "w");
    wq.last_updated = required<Timestamp>(j, "ts");
    wq.seq = j.value("seq", std::uint64_t{0});
    if (wq.weight < 0.0) throw ParseError("negative query weight");
    return wq;
}

json to_json(const FeedbackModel& model) {
    json pos = json::array();
    json neg = json::array();
    for (const auto& wq : model.positives) pos.push_back(to_json(wq));
    for (const auto& wq : model.negatives) neg.push_back(to_json(wq));
    return json{{"article_id", model.article_id},
                {"positives", std::move(pos)},
                {"negatives", std::move(neg)},
                {"next_seq", model.next_seq}};
}

FeedbackModel feedback_model_from_json(const json& j, std::size_t capacity) {
    FeedbackModel model;
    model.capacity = capacity;
    model.article_id = required<std::string>(j, "article_id");
    for (const auto& e : j.at("positives")) model.positives.push_back(weighted_query_from_json(e));
    for (const auto& e : j.at("negatives")) model.negatives.push_back(weighted_query_from_json(e));
    model.next_seq = j.value("next_seq", std::uint64_t{0});
    return model;
}

json to_json(const FeedbackEvent& e) {
    json payload;
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, ArticleUpsert>) {
                payload = to_json(p.article);
            } else if constexpr (std::is_same_v<P, ArticleDeletion>) {
                payload = json{{"id", p.id}};
            } else if constexpr (std::is_same_v<P, SearchFeedback>) {
                payload = json{{"query", p.query},
                               {"article", p.article ? json(*p.article) : json(nullptr)},
                               {"role", to_string(p.role)},
                               {"label", to_string(p.label)}};
            } else {
                payload = json{{"query", p.query}, {"article", p.article}, {"label", "+"}};
            }
        },
        e.payload);
    json j{{"ts", e.ts}, {"org", e.org.str()}, {"kind", to_string(e.kind)}, {"payload", std::move(payload)}};
    if (e.ground_truth) j["ground_truth"] = *e.ground_truth;
    return j;
}

FeedbackEvent event_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("event must be an object");
    FeedbackEvent e;
    e.ts = required<Timestamp>(j, "ts");
    e.org = OrgId(required<std::string>(j, "org"));
    e.kind = parse_event_kind(required<std::string>(j, "kind"));
    const json& p = j.at("payload");
    switch (e.kind) {
        case EventKind::article_created:
        case EventKind::article_updated: {
            KbArticle a = article_from_json(p, e.org);
            if (!p.contains("created_at")) a.created_at = e.ts;
            if (!p.contains("updated_at")) a.updated_at = e.ts;
            e.payload = ArticleUpsert{std::move(a)};
            break;
        }
        case EventKind::article_deleted:
            e.payload = ArticleDeletion{required<std::string>(p, "id")};
            break;
        case EventKind::search_feedback: {
            SearchFeedback sf;
            sf.query = required<std::string>(p, "query");
            sf.article = optional_string(p, "article");
            sf.role = parse_role(p.value("role", std::string("user")));
            sf.label = parse_label(p.value("label", std::string("-")));
            e.payload = std::move(sf);
            break;
        }
        case EventKind::expert_answer:
            e.payload = ExpertAnswer{required<std::string>(p, "query"), required<std::string>(p, "article")};
            break;
    }
    e.ground_truth = optional_string(j, "ground_truth");
    return e;
}

std::string to_json_line(const FeedbackEvent& event) { return to_json(event).dump(); }

FeedbackEvent parse_json_line(std::string_view line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed event line: ") + e.what());
    }
    return event_from_json(j);
}

}  // namespace kbrank

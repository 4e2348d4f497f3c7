#include "kbrank/eval/generator.hpp"

#include "kbrank/core/errors.hpp"
#include "kbrank/core/event_log.hpp"
#include "kbrank/search/inverted_index.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <set>

namespace kbrank::eval {

namespace {

// Portable helpers on top of mt19937_64 so output does not depend on the standard library's
// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }
    std::size_t uniform(std::size_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % n);
    }
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return unit() < p; }
    template <class T>
    const T& pick(const std::vector<T>& v) { return v[uniform(v.size())]; }
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform(i)]);
    }

private:
    std::mt19937_64 gen_;
};

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Object {
    std::string name;       // as written in articles
    std::string long_form;  // expansion when name is an acronym
    std::vector<std::string> variants;
};

struct Action {
    std::string verb;
    std::string gerund;
    std::vector<std::string> variants;
};

struct Domain {
    std::string name;
    std::string team;
    std::vector<Object> objects;
    std::vector<std::string> sentences;
};

const std::vector<Action>& actions() {
    static const std::vector<Action> a{
        {"request", "requesting", {"ask for", "order", "get"}},
        {"reset", "resetting", {"recover", "change", "unlock"}},
        {"set up", "setting up", {"configure", "install", "activate"}},
        {"update", "updating", {"modify", "edit", "amend"}},
        {"cancel", "cancelling", {"terminate", "stop", "withdraw"}},
        {"find", "finding", {"locate", "look up", "see"}},
        {"submit", "submitting", {"file", "send in", "hand in"}},
        {"access", "accessing", {"open", "log into", "get into"}},
        {"renew", "renewing", {"extend", "prolong", "refresh"}},
        {"troubleshoot", "troubleshooting", {"fix", "repair", "debug"}},
        {"download", "downloading", {"save", "export", "get a copy of"}},
        {"approve", "approving", {"authorize", "sign off on", "okay"}},
    };
    return a;
}

const std::vector<Domain>& domains() {
    static const std::vector<Domain> d{
        {"it",
         "IT Helpdesk",
         {{"VPN", "Virtual Private Network", {"remote network", "tunnel", "remote connection"}},
          {"laptop", "", {"notebook", "computer", "machine"}},
          {"password", "", {"passcode", "login credentials", "passphrase"}},
          {"email account", "", {"mailbox", "inbox", "mail"}},
          {"printer", "", {"copier", "print queue", "printing"}},
          {"wifi", "", {"wireless", "internet connection", "network"}},
          {"monitor", "", {"display", "screen", "second screen"}},
          {"software license", "", {"app license", "license key", "seat"}}},
         {"Make sure your device is connected to the corporate network first.",
          "Restart your device if the problem persists.",
          "Most requests are processed within one business day.",
          "You can track the status of your ticket in the service portal."}},
        {"hr",
         "People Operations",
         {{"vacation", "", {"pto", "holiday", "time off"}},
          {"payroll", "", {"salary", "paycheck", "pay stub"}},
          {"health insurance", "", {"medical coverage", "health plan", "dental plan"}},
          {"retirement plan", "", {"401k", "pension", "savings plan"}},
          {"parental leave", "", {"maternity leave", "paternity leave", "baby leave"}},
          {"performance review", "", {"evaluation", "appraisal", "feedback cycle"}},
          {"tax form", "", {"w2", "tax document", "withholding"}},
          {"employee handbook", "", {"policy manual", "company policies", "code of conduct"}}},
         {"Changes take effect from the next pay period.",
          "Your manager is notified automatically.",
          "All records are kept confidential.",
          "Eligibility depends on your employment status."}},
        {"finance",
         "Finance",
         {{"expense report", "", {"reimbursement", "expense claim", "receipts"}},
          {"corporate card", "", {"company credit card", "amex", "card"}},
          {"invoice", "", {"bill", "vendor payment", "statement"}},
          {"budget", "", {"spending plan", "forecast", "allocation"}},
          {"PO", "Purchase Order", {"purchase request", "procurement request", "order form"}},
          {"travel booking", "", {"trip", "flight", "hotel reservation"}},
          {"per diem", "", {"daily allowance", "meal allowance", "stipend"}},
          {"vendor account", "", {"supplier account", "supplier", "vendor profile"}}},
         {"Keep the original receipts for at least seven years.",
          "Approvals over the spending limit go to your director.",
          "Payments are issued twice a month.",
          "Use the cost center assigned to your team."}},
        {"sales",
         "Sales Operations",
         {{"CRM", "Customer Relationship Management", {"customer database", "pipeline tool", "salesforce"}},
          {"sales quota", "", {"target", "sales goal", "number"}},
          {"commission", "", {"bonus", "incentive pay", "payout"}},
          {"price list", "", {"pricing sheet", "rate card", "price book"}},
          {"pitch deck", "", {"sales deck", "slides", "presentation"}},
          {"contract template", "", {"agreement", "msa", "order form template"}},
          {"discount", "", {"price reduction", "deal desk", "promo"}},
          {"lead", "", {"prospect", "opportunity", "contact"}}},
         {"Log every customer interaction the same day.",
          "Deal desk reviews non-standard terms.",
          "Quarter close deadlines are strict.",
          "Regional managers can grant exceptions."}},
        {"marketing",
         "Marketing",
         {{"brand assets", "", {"logo files", "logos", "artwork"}},
          {"press release", "", {"announcement", "news release", "media statement"}},
          {"social media account", "", {"twitter handle", "linkedin page", "social channel"}},
          {"newsletter", "", {"mailing list", "email campaign", "digest"}},
          {"campaign", "", {"promotion", "launch", "ad campaign"}},
          {"style guide", "", {"brand guidelines", "tone of voice", "writing guide"}},
          {"webinar", "", {"online event", "live session", "web event"}},
          {"website page", "", {"landing page", "web page", "site content"}}},
         {"All external content needs brand review.",
          "Use the shared drive for final versions.",
          "Requests need at least two weeks of lead time.",
          "Analytics are reported every Monday."}},
        {"facilities",
         "Workplace Services",
         {{"parking pass", "", {"parking permit", "garage access", "parking spot"}},
          {"conference room", "", {"meeting room", "boardroom", "huddle room"}},
          {"badge", "", {"keycard", "access card", "id card"}},
          {"desk", "", {"workstation", "hot desk", "seat assignment"}},
          {"office supplies", "", {"stationery", "pens", "notepads"}},
          {"locker", "", {"storage locker", "cubby", "cabinet"}},
          {"visitor pass", "", {"guest badge", "guest registration", "visitor registration"}},
          {"shuttle", "", {"bus", "commuter shuttle", "transport"}}},
         {"The front desk is staffed from eight to six.",
          "Report safety hazards immediately.",
          "Bookings can be made up to four weeks ahead.",
          "Building access is logged for security."}},
        {"security",
         "Security",
         {{"MFA", "Multi Factor Authentication", {"two factor", "authenticator app", "2fa"}},
          {"phishing report", "", {"suspicious email", "scam email", "spam report"}},
          {"encryption key", "", {"disk encryption", "recovery key", "bitlocker"}},
          {"security training", "", {"awareness course", "compliance training", "security course"}},
          {"firewall rule", "", {"port opening", "network rule", "allowlist"}},
          {"SSO", "Single Sign On", {"single login", "okta", "unified login"}},
          {"data classification", "", {"data labels", "sensitivity labels", "confidentiality level"}},
          {"incident", "", {"breach", "security event", "outage"}}},
         {"Never share your credentials with anyone.",
          "Security reviews can take up to three days.",
          "Report lost devices within one hour.",
          "All access is reviewed quarterly."}},
    };
    return d;
}

const std::vector<std::string>& codenames() {
    static const std::vector<std::string> c{
        "zephyr",   "atlas",   "orion",   "nimbus", "falcon",   "helix",   "quartz", "aurora",
        "titan",    "comet",   "vertex",  "ember",  "pulse",    "nova",    "summit", "beacon",
        "harbor",   "meridian", "sparrow", "cobalt", "willow",  "granite", "juniper", "lumen",
        "maple",    "onyx",    "pioneer", "raven",  "sequoia",  "tundra",  "velvet", "kestrel",
        "borealis", "cascade", "dynamo",  "fjord",  "glacier",  "hermes",  "indigo", "jasper",
        "lynx",     "mosaic",  "nebula",  "opal",   "prism",    "quasar",  "redwood", "saffron"};
    return c;
}

// FAQ-style lines most articles carry, so question phrasing is common vocabulary in the corpus.
const std::vector<std::string> kFaqLines{
    "How do I get help if I am unable to do this myself? Ask in our help channel.",
    "Is there a way to speed up the process? Who can I ask for help with it?",
    "What is the process if I have a question about this? Where can I find more help?",
    "I need to do this today: can someone help me with my problem? Reach out to the team.",
    "Can I do this for a colleague? Yes, with their approval, on their behalf."};
const std::vector<std::string> kDeterminers{"my", "the", "our", "a"};
const std::vector<std::string> kVerbTemplates{
    "how do i {a} {d} {o}",   "how can i {a} {d} {o}",     "i need to {a} {d} {o}",
    "where can i {a} {d} {o}", "{a} {o}",                   "what is the process to {a} {d} {o}",
    "help me {a} {d} {o}",    "is there a way to {a} {d} {o}", "unable to {a} {d} {o}",
    "{o} {a}",                "how to {a} {o}?",            "who can {a} {d} {o} for me"};
const std::vector<std::string> kGerundTemplates{"help with {g} {d} {o}", "question about {g} {d} {o}",
                                                "{g} {o}", "problem {g} {d} {o}"};
const std::vector<std::string> kPrefixes{"hi,", "quick question:", "hello", "hey team,"};
const std::vector<std::string> kSuffixes{"please", "asap", "thanks", "today", "again"};

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
    for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size())
        s.replace(pos, from.size(), to);
    return s;
}

std::string capitalize(std::string s) {
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

std::string lower(std::string s) {
    for (auto& c : s)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return s;
}

struct Topic {
    const Domain* domain;
    std::size_t object;
    std::size_t action;
};

struct PlannedArticle {
    KbArticle article;
    Topic topic;
    std::string codename;
};

std::string make_title(const Topic& t, Rng& rng) {
    const auto& o = t.domain->objects[t.object].name;
    const auto& a = actions()[t.action].verb;
    switch (rng.uniform(4)) {
        case 0: return "How to " + a + " your " + o;
        case 1: return capitalize(a) + " " + o;
        case 2: return capitalize(o) + ": how to " + a + " it";
        default: return "Guide: " + a + " the " + o;
    }
}

std::string make_body(const Topic& t, Rng& rng) {
    const auto& d = *t.domain;
    const auto& o = d.objects[t.object];
    const auto& a = actions()[t.action];
    std::string body = "Use this guide to " + a.verb + " your " + o.name + ".";
    if (!o.long_form.empty()) body += " The " + o.long_form + " (" + o.name + ") is run by " + d.team + ".";
    std::vector<std::string> sentences = d.sentences;
    rng.shuffle(sentences);
    for (std::size_t i = 0; i < 2; ++i) body += " " + sentences[i];
    std::vector<std::string> faq = kFaqLines;
    rng.shuffle(faq);
    for (std::size_t i = 0; i < 3; ++i) body += " " + faq[i];
    body += " Contact " + d.team + " if you have trouble " + a.gerund + " the " + o.name + ".";
    return body;
}

std::string make_query(const PlannedArticle& p, const GeneratorSpec& spec, Rng& rng) {
    const double noise = spec.paraphrase_noise;
    if (noise <= 0.0) return p.article.title;
    const auto& obj = p.topic.domain->objects[p.topic.object];
    const auto& act = actions()[p.topic.action];

    std::string o;
    if (!p.codename.empty() && rng.chance(spec.jargon_rate)) {
        o = p.codename;
    } else if (rng.chance(noise)) {
        o = rng.pick(obj.variants);
    } else if (!obj.long_form.empty() && rng.chance(noise / 2)) {
        o = lower(obj.long_form);
    } else {
        o = lower(obj.name);
        if (o.find(' ') == std::string::npos && rng.chance(noise / 3)) o += "s";
    }

    std::string q;
    const std::string d = rng.pick(kDeterminers);
    if (rng.chance(noise / 3)) {
        q = replace_all(replace_all(replace_all(rng.pick(kGerundTemplates), "{g}", act.gerund), "{d}", d), "{o}", o);
    } else {
        const std::string a = rng.chance(noise) ? rng.pick(act.variants) : act.verb;
        q = replace_all(replace_all(replace_all(rng.pick(kVerbTemplates), "{a}", a), "{d}", d), "{o}", o);
    }
    if (rng.chance(noise / 2)) {
        if (rng.chance(0.5))
            q = rng.pick(kPrefixes) + " " + q;
        else
            q += " " + rng.pick(kSuffixes);
    }
    return q;
}

void check_fraction(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(std::string(name) + " must be in [0, 1]");
}

}  // namespace

std::vector<std::string> generator_domains() {
    std::vector<std::string> names;
    for (const auto& d : domains()) names.push_back(d.name);
    return names;
}

void GeneratorSpec::validate() const {
    if (org.empty()) throw ValidationError("generator org must be non-empty");
    if (num_articles == 0) throw ValidationError("num_articles must be positive");
    if (!(queries_per_article >= 0.0) || !std::isfinite(queries_per_article))
        throw ValidationError("queries_per_article must be >= 0");
    check_fraction(paraphrase_noise, "paraphrase_noise");
    check_fraction(jargon_rate, "jargon_rate");
    check_fraction(repeat_rate, "repeat_rate");
    check_fraction(expert_fraction, "expert_fraction");
    check_fraction(late_article_fraction, "late_article_fraction");
    check_fraction(update_fraction, "update_fraction");
    check_fraction(delete_fraction, "delete_fraction");
    const auto known = generator_domains();
    for (const auto& d : domains)
        if (std::find(known.begin(), known.end(), d) == known.end()) throw ValidationError("unknown domain: " + d);
}

GeneratorSpec GeneratorSpec::from_json(const json& j) {
    GeneratorSpec s;
    try {
        s.seed = j.value("seed", s.seed);
        s.org = j.value("org", s.org);
        s.num_articles = j.value("num_articles", s.num_articles);
        s.queries_per_article = j.value("queries_per_article", s.queries_per_article);
        s.paraphrase_noise = j.value("paraphrase_noise", s.paraphrase_noise);
        s.domains = j.value("domains", s.domains);
        s.jargon_rate = j.value("jargon_rate", s.jargon_rate);
        s.repeat_rate = j.value("repeat_rate", s.repeat_rate);
        s.expert_fraction = j.value("expert_fraction", s.expert_fraction);
        s.late_article_fraction = j.value("late_article_fraction", s.late_article_fraction);
        s.update_fraction = j.value("update_fraction", s.update_fraction);
        s.delete_fraction = j.value("delete_fraction", s.delete_fraction);
        s.start_ts = j.value("start_ts", s.start_ts);
        s.hard_negatives = j.value("hard_negatives", s.hard_negatives);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("bad generator spec: ") + e.what());
    }
    s.validate();
    return s;
}

json GeneratorSpec::to_json() const {
    return json{{"seed", seed},
                {"org", org},
                {"num_articles", num_articles},
                {"queries_per_article", queries_per_article},
                {"paraphrase_noise", paraphrase_noise},
                {"domains", domains},
                {"jargon_rate", jargon_rate},
                {"repeat_rate", repeat_rate},
                {"expert_fraction", expert_fraction},
                {"late_article_fraction", late_article_fraction},
                {"update_fraction", update_fraction},
                {"delete_fraction", delete_fraction},
                {"start_ts", start_ts},
                {"hard_negatives", hard_negatives}};
}

std::size_t Dataset::query_count() const {
    return static_cast<std::size_t>(std::count_if(stream.begin(), stream.end(), [](const auto& e) { return e.is_query(); }));
}

std::size_t Dataset::article_event_count() const { return stream.size() - query_count(); }

Dataset generate_dataset(const GeneratorSpec& spec) {
    spec.validate();
    Rng rng(splitmix(spec.seed));
    const OrgId org(spec.org);

    std::vector<const Domain*> chosen;
    for (const auto& d : domains())
        if (spec.domains.empty() || std::find(spec.domains.begin(), spec.domains.end(), d.name) != spec.domains.end())
            chosen.push_back(&d);

    std::vector<Topic> topics;
    for (const auto* d : chosen)
        for (std::size_t o = 0; o < d->objects.size(); ++o)
            for (std::size_t a = 0; a < actions().size(); ++a) topics.push_back({d, o, a});
    if (spec.num_articles > topics.size())
        throw ValidationError("num_articles exceeds the " + std::to_string(topics.size()) + " topics of the chosen domains");
    rng.shuffle(topics);
    topics.resize(spec.num_articles);

    // The client's private names for the objects it uses.
    std::map<std::pair<const Domain*, std::size_t>, std::string> jargon;
    {
        std::vector<std::string> pool = codenames();
        rng.shuffle(pool);
        std::size_t next = 0;
        for (const auto& t : topics) {
            auto key = std::make_pair(t.domain, t.object);
            if (!jargon.count(key) && next < pool.size()) jargon[key] = pool[next++];
        }
    }

    std::vector<PlannedArticle> planned;
    for (std::size_t i = 0; i < topics.size(); ++i) {
        PlannedArticle p;
        p.topic = topics[i];
        char id[32];
        std::snprintf(id, sizeof id, "kb-%04zu", i + 1);
        p.article.id = id;
        p.article.org = org;
        p.article.title = make_title(p.topic, rng);
        p.article.body = make_body(p.topic, rng);
        const auto& obj = p.topic.domain->objects[p.topic.object];
        p.article.keywords = {lower(obj.name), actions()[p.topic.action].verb, p.topic.domain->name};
        if (auto it = jargon.find({p.topic.domain, p.topic.object}); it != jargon.end()) p.codename = it->second;
        planned.push_back(std::move(p));
    }

    // Queries per article: floor(mean) plus one more with probability frac(mean).
    const double whole = std::floor(spec.queries_per_article);
    const double frac = spec.queries_per_article - whole;
    std::vector<std::size_t> owners;
    for (std::size_t i = 0; i < planned.size(); ++i) {
        std::size_t n = static_cast<std::size_t>(whole) + (rng.chance(frac) ? 1 : 0);
        owners.insert(owners.end(), n, i);
    }
    rng.shuffle(owners);

    constexpr Timestamp kSlot = 10;
    const Timestamp t0 = spec.start_ts;
    const Timestamp q0 = t0 + static_cast<Timestamp>(planned.size()) * kSlot + kSlot;
    auto slot_ts = [&](std::size_t slot) { return q0 + static_cast<Timestamp>(slot) * kSlot; };

    std::vector<std::optional<std::size_t>> first_slot(planned.size()), last_slot(planned.size());
    for (std::size_t s = 0; s < owners.size(); ++s) {
        if (!first_slot[owners[s]]) first_slot[owners[s]] = s;
        last_slot[owners[s]] = s;
    }

    std::vector<FeedbackEvent> events;
    auto article_event = [&](EventKind kind, Timestamp ts, KbArticle a) {
        FeedbackEvent e;
        e.ts = ts;
        e.org = org;
        e.kind = kind;
        a.updated_at = ts;
        if (kind == EventKind::article_created) a.created_at = ts;
        e.payload = ArticleUpsert{std::move(a)};
        events.push_back(std::move(e));
    };

    for (std::size_t i = 0; i < planned.size(); ++i) {
        auto& p = planned[i];
        const bool late = first_slot[i] && *first_slot[i] > 0 && rng.chance(spec.late_article_fraction);
        Timestamp created = late ? slot_ts(*first_slot[i]) - 3 : t0 + static_cast<Timestamp>(i) * kSlot;
        p.article.created_at = p.article.updated_at = created;
        article_event(EventKind::article_created, created, p.article);

        if (rng.chance(spec.update_fraction)) {
            Timestamp ts = created + 1;
            if (first_slot[i]) {
                const std::size_t from = *first_slot[i], to = *last_slot[i];
                ts = std::max(ts, slot_ts(from + rng.uniform(to - from + 1)) - 2);
            }
            KbArticle updated = p.article;
            updated.body += " This article was reviewed and updated by " + p.topic.domain->team + ".";
            article_event(EventKind::article_updated, ts, updated);
        }
        if (rng.chance(spec.delete_fraction)) {
            const Timestamp ts = last_slot[i] ? slot_ts(*last_slot[i]) + 3 : created + 2;
            FeedbackEvent e;
            e.ts = ts;
            e.org = org;
            e.kind = EventKind::article_deleted;
            e.payload = ArticleDeletion{p.article.id};
            events.push_back(std::move(e));
        }
    }

    std::vector<std::vector<std::string>> asked(planned.size());
    for (std::size_t s = 0; s < owners.size(); ++s) {
        const auto& p = planned[owners[s]];
        auto& history = asked[owners[s]];
        FeedbackEvent e;
        e.ts = slot_ts(s);
        e.org = org;
        e.ground_truth = p.article.id;
        // Popular questions come back in the same words.
        std::string q = !history.empty() && rng.chance(spec.repeat_rate) ? rng.pick(history) : make_query(p, spec, rng);
        history.push_back(q);
        if (rng.chance(spec.expert_fraction)) {
            e.kind = EventKind::expert_answer;
            e.payload = ExpertAnswer{std::move(q), p.article.id};
        } else {
            e.kind = EventKind::search_feedback;
            e.payload = SearchFeedback{std::move(q), std::nullopt, Role::user, Label::negative};
        }
        events.push_back(std::move(e));
    }
    std::stable_sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.ts < b.ts; });

    Dataset ds;
    ds.org = org;
    for (const auto& p : planned) ds.articles.push_back(p.article);
    ds.stream = std::move(events);

    // Training examples: every query against its BM25-hardest wrong articles.
    search::InvertedIndex index;
    for (const auto& a : ds.articles) index.add(a);
    for (const auto& e : ds.stream) {
        if (!e.is_query()) continue;
        ranking::LabeledRankingExample ex;
        ex.query = e.query_text();
        ex.positive_article = *e.ground_truth;
        for (const auto& [id, score] : index.top_n(text::analyze(ex.query), spec.hard_negatives + 1)) {
            if (id != ex.positive_article && ex.candidate_articles.size() < spec.hard_negatives)
                ex.candidate_articles.push_back(id);
        }
        const std::size_t want = std::min(spec.hard_negatives, ds.articles.size() - 1);
        while (ex.candidate_articles.size() < want) {
            const auto& id = ds.articles[rng.uniform(ds.articles.size())].id;
            if (id != ex.positive_article &&
                std::find(ex.candidate_articles.begin(), ex.candidate_articles.end(), id) == ex.candidate_articles.end())
                ex.candidate_articles.push_back(id);
        }
        if (!ex.candidate_articles.empty()) ds.examples.push_back(std::move(ex));
    }
    return ds;
}

void write_dataset(const Dataset& dataset, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    EventLog::write_file(dir / "stream.jsonl", dataset.stream);
    {
        std::ofstream out(dir / "articles.jsonl");
        if (!out) throw Error("cannot write " + (dir / "articles.jsonl").string());
        for (const auto& a : dataset.articles) {
            json j = to_json(a);
            j["org"] = a.org.str();
            out << j.dump() << '\n';
        }
    }
    ranking::write_examples(dir / "examples.jsonl", dataset.examples);
}

std::vector<GeneratorSpec> benchmark_specs(std::uint64_t seed, std::size_t num_clients) {
    Rng rng(splitmix(seed ^ 0x6b62u));
    const auto names = generator_domains();
    std::vector<GeneratorSpec> specs;
    for (std::size_t i = 0; i < num_clients; ++i) {
        GeneratorSpec s;
        s.seed = splitmix(seed * 1000 + i);
        char org[32];
        std::snprintf(org, sizeof org, "client%02zu", i + 1);
        s.org = org;
        s.num_articles = 25 + rng.uniform(36);
        // Spread queries-per-article across clients like a real customer base.
        const double span = num_clients > 1 ? static_cast<double>(i) / static_cast<double>(num_clients - 1) : 0.5;
        s.queries_per_article = std::round((1.4 + 5.2 * span) * 10.0) / 10.0;
        std::vector<std::string> pool = names;
        rng.shuffle(pool);
        pool.resize(2 + rng.uniform(2));
        std::sort(pool.begin(), pool.end());
        s.domains = pool;
        s.paraphrase_noise = 0.45 + 0.05 * static_cast<double>(rng.uniform(5));
        s.jargon_rate = 0.4;
        s.repeat_rate = 0.3;
        s.expert_fraction = 0.5;
        s.late_article_fraction = 0.15;
        s.update_fraction = 0.1;
        s.delete_fraction = 0.03;
        s.start_ts = 1'600'000'000'000 + static_cast<Timestamp>(i) * 1'000'000'000;
        specs.push_back(std::move(s));
    }
    return specs;
}

std::vector<GeneratorSpec> load_generator_specs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open generator spec: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    if (j.contains("clients")) {
        std::vector<GeneratorSpec> specs;
        for (const auto& c : j.at("clients")) specs.push_back(GeneratorSpec::from_json(c));
        return specs;
    }
    if (j.contains("benchmark")) {
        const auto& b = j.at("benchmark");
        return benchmark_specs(b.value("seed", std::uint64_t{42}), b.value("num_clients", std::size_t{12}));
    }
    return {GeneratorSpec::from_json(j)};
}

}  // namespace kbrank::eval

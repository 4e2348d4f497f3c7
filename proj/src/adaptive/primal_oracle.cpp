#include "kbrank/adaptive/primal_oracle.hpp"

#include "kbrank/text/tokenizer.hpp"

namespace kbrank::adaptive {

text::SparseVector bag_of_words(std::string_view text) {
    std::vector<text::SparseVector::Entry> entries;
    for (const auto& tok : text::tokenize(text)) entries.emplace_back(text::term_id(tok), 1.0);
    return text::SparseVector::from_entries(std::move(entries));
}

text::SparseVector primal_weight_vector(const FeedbackModel& model, const Featurizer& featurize) {
    text::SparseVector theta;
    for (const auto& wq : model.positives) theta.add_scaled(featurize(wq.query_text).normalized(), wq.weight);
    for (const auto& wq : model.negatives) theta.add_scaled(featurize(wq.query_text).normalized(), -wq.weight);
    return theta;
}

double primal_equivalence_oracle(const FeedbackModel& model, std::string_view query, const Featurizer& featurize) {
    return text::dot(featurize(query).normalized(), primal_weight_vector(model, featurize));
}

}  // namespace kbrank::adaptive

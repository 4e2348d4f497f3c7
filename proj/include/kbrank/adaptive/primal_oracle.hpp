#pragma once

#include "kbrank/core/types.hpp"
#include "kbrank/text/sparse_vector.hpp"

#include <functional>
#include <string_view>

namespace kbrank::adaptive {

using Featurizer = std::function<text::SparseVector(std::string_view)>;

/// Raw term-count vector over unigrams (bag of words).
text::SparseVector bag_of_words(std::string_view text);

/// Explicit primal weight vector: sum over Q+ of w * phi(q') minus sum over Q- of w * phi(q''),
/// with phi the L2-normalized featurization.
text::SparseVector primal_weight_vector(const FeedbackModel& model, const Featurizer& featurize);

/// Primal score phi(query) . theta. Equals the dual score with g = sum, cosine kernel over the same
/// featurization and beta = gamma = 1.
double primal_equivalence_oracle(const FeedbackModel& model, std::string_view query,
                                 const Featurizer& featurize = bag_of_words);

}  // namespace kbrank::adaptive

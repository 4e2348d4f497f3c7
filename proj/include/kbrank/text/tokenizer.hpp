#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace kbrank::text {

/// Splits on anything that is not a letter or digit and lowercases.
/// Non-ASCII code points outside the common punctuation blocks count as letters.
std::vector<std::string> tokenize(std::string_view text);

/// Same split as tokenize() but keeps the original case (used for acronym detection).
std::vector<std::string> tokenize_cased(std::string_view text);

std::string to_lower(std::string_view token);

/// Unigrams followed by adjacent bigrams joined with '_'.
std::vector<std::string> unigrams_and_bigrams(const std::vector<std::string>& tokens);

std::vector<std::string> bigrams(const std::vector<std::string>& tokens);

/// Lightweight suffix-stripping stemmer (plural, -ing, -ed, trailing e).
std::string stem(std::string_view token);

/// Initialisms of every contiguous span of >= 2 capitalized tokens, lowercased, sorted and unique.
std::vector<std::string> capitalized_initialisms(const std::vector<std::string>& cased_tokens);

}  // namespace kbrank::text

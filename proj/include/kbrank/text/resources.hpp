#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace kbrank::text {

/// Pretrained lexical resources consumed by the match features. Either part may be empty.
class ResourceBundle {
public:
    ResourceBundle() = default;

    /// GloVe-style text: "word v1 ... vD" per line.
    static ResourceBundle load(const std::optional<std::filesystem::path>& embeddings_file,
                               const std::optional<std::filesystem::path>& synonyms_file);

    void add_embedding(std::string word, std::vector<double> vec);
    void add_synonym(const std::string& a, const std::string& b);

    std::size_t dimensionality() const { return dim_; }
    bool has_embeddings() const { return !embeddings_.empty(); }
    bool has_synonyms() const { return !synonyms_.empty(); }

    /// Unit-normalized embedding, or nullptr.
    const std::vector<double>* embedding(const std::string& word) const;
    bool are_synonyms(const std::string& a, const std::string& b) const;
    const std::vector<std::string>* synonyms_of(const std::string& word) const;

    std::size_t embedding_count() const { return embeddings_.size(); }
    std::size_t synonym_pair_count() const { return pair_count_; }

private:
    std::size_t dim_ = 0;
    std::unordered_map<std::string, std::vector<double>> embeddings_;
    std::unordered_map<std::string, std::vector<std::string>> synonyms_;
    std::size_t pair_count_ = 0;
};

}  // namespace kbrank::text

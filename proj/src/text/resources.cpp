#include "kbrank/text/resources.hpp"

#include "kbrank/core/errors.hpp"
#include "kbrank/text/tokenizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace kbrank::text {

ResourceBundle ResourceBundle::load(const std::optional<std::filesystem::path>& embeddings_file,
                                    const std::optional<std::filesystem::path>& synonyms_file) {
    ResourceBundle bundle;
    if (embeddings_file) {
        std::ifstream in(*embeddings_file);
        if (!in) throw Error("cannot open embeddings file: " + embeddings_file->string());
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::istringstream ss(line);
            std::string word;
            if (!(ss >> word)) continue;
            std::vector<double> vec;
            double x;
            while (ss >> x) vec.push_back(x);
            if (vec.empty()) continue;
            if (bundle.dim_ != 0 && vec.size() != bundle.dim_)
                throw ParseError(embeddings_file->string() + ":" + std::to_string(lineno) + ": dimensionality mismatch");
            bundle.add_embedding(to_lower(word), std::move(vec));
        }
    }
    if (synonyms_file) {
        std::ifstream in(*synonyms_file);
        if (!in) throw Error("cannot open synonyms file: " + synonyms_file->string());
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            auto tab = line.find('\t');
            if (tab == std::string::npos) continue;
            auto a = to_lower(line.substr(0, tab));
            auto b = to_lower(line.substr(tab + 1));
            if (!a.empty() && !b.empty() && a != b) bundle.add_synonym(a, b);
        }
    }
    return bundle;
}

void ResourceBundle::add_embedding(std::string word, std::vector<double> vec) {
    if (dim_ == 0) dim_ = vec.size();
    if (vec.size() != dim_) throw ValidationError("embedding dimensionality mismatch for " + word);
    double n = 0.0;
    for (double x : vec) n += x * x;
    n = std::sqrt(n);
    if (n > 0.0)
        for (double& x : vec) x /= n;
    embeddings_[std::move(word)] = std::move(vec);
}

void ResourceBundle::add_synonym(const std::string& a, const std::string& b) {
    auto link = [this](const std::string& x, const std::string& y) {
        auto& list = synonyms_[x];
        if (std::find(list.begin(), list.end(), y) == list.end()) {
            list.push_back(y);
            return true;
        }
        return false;
    };
    bool fresh = link(a, b);
    link(b, a);
    if (fresh) ++pair_count_;
}

const std::vector<double>* ResourceBundle::embedding(const std::string& word) const {
    auto it = embeddings_.find(word);
    return it == embeddings_.end() ? nullptr : &it->second;
}

bool ResourceBundle::are_synonyms(const std::string& a, const std::string& b) const {
    auto it = synonyms_.find(a);
    return it != synonyms_.end() && std::find(it->second.begin(), it->second.end(), b) != it->second.end();
}

const std::vector<std::string>* ResourceBundle::synonyms_of(const std::string& word) const {
    auto it = synonyms_.find(word);
    return it == synonyms_.end() ? nullptr : &it->second;
}

}  // namespace kbrank::text

#pragma once

#include "kbrank/core/types.hpp"

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <string>
#include <vector>

namespace kbrank::testing {

inline std::filesystem::path source_dir() { return KBRANK_SOURCE_DIR; }

inline std::filesystem::path fresh_dir(const std::string& name) {
    static std::atomic<int> counter{0};
    auto dir = std::filesystem::temp_directory_path() /
               ("kbrank-" + name + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline KbArticle article(std::string id, std::string title, std::string body = "",
                         std::vector<std::string> keywords = {}) {
    KbArticle a;
    a.id = std::move(id);
    a.title = std::move(title);
    a.body = std::move(body);
    a.keywords = std::move(keywords);
    return a;
}

}  // namespace kbrank::testing

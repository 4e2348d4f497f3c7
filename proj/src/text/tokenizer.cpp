#include "kbrank/text/tokenizer.hpp"

#include <algorithm>
#include <cstdint>

namespace kbrank::text {

namespace {

// Decodes one UTF-8 code point starting at i; invalid bytes decode as themselves.
char32_t decode(std::string_view s, std::size_t& i) {
    auto byte = static_cast<unsigned char>(s[i]);
    int extra = 0;
    char32_t cp = byte;
    if (byte >= 0xF0 && byte < 0xF8) {
        extra = 3;
        cp = byte & 0x07;
    } else if (byte >= 0xE0) {
        extra = 2;
        cp = byte & 0x0F;
    } else if (byte >= 0xC0) {
        extra = 1;
        cp = byte & 0x1F;
    } else {
        ++i;
        return byte;
    }
    if (i + extra >= s.size()) {
        ++i;
        return byte;
    }
    for (int k = 1; k <= extra; ++k) {
        auto c = static_cast<unsigned char>(s[i + k]);
        if ((c & 0xC0) != 0x80) {
            ++i;
            return byte;
        }
        cp = (cp << 6) | (c & 0x3F);
    }
    i += extra + 1;
    return cp;
}

void encode(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

bool is_word_char(char32_t cp) {
    if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
    if (cp >= 0x80 && cp <= 0xBF) return false;  // Latin-1 punctuation and symbols
    if (cp == 0xD7 || cp == 0xF7) return false;
    if (cp >= 0x2000 && cp <= 0x2BFF) return false;  // general punctuation, symbols, arrows
    if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
    if (cp >= 0xFE30 && cp <= 0xFE4F) return false;
    if (cp >= 0xFF00 && cp <= 0xFF0F) return false;
    if (cp >= 0x1F000) return false;  // emoji and pictographs
    return true;
}

char32_t lower(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 32;
    if ((cp >= 0xC0 && cp <= 0xDE && cp != 0xD7)) return cp + 32;                   // Latin-1
    if (cp >= 0x100 && cp <= 0x17F && cp % 2 == 0 && cp != 0x130) return cp + 1;     // Latin Extended-A (mostly)
    if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 32;                   // Greek
    if (cp >= 0x410 && cp <= 0x42F) return cp + 32;                                  // Cyrillic
    if (cp >= 0x400 && cp <= 0x40F) return cp + 80;
    return cp;
}

std::vector<std::string> split(std::string_view text, bool lowercase) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t i = 0;
    while (i < text.size()) {
        char32_t cp = decode(text, i);
        if (is_word_char(cp)) {
            encode(lowercase ? lower(cp) : cp, current);
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool has_vowel(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return is_vowel(c) || c == 'y'; });
}

void undouble(std::string& s) {
    if (s.size() >= 3) {
        char c = s.back();
        if (c == s[s.size() - 2] && !is_vowel(c) && c != 'l' && c != 's' && c != 'z') s.pop_back();
    }
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) { return split(text, true); }

std::vector<std::string> tokenize_cased(std::string_view text) { return split(text, false); }

std::string to_lower(std::string_view token) {
    std::string out;
    std::size_t i = 0;
    while (i < token.size()) encode(lower(decode(token, i)), out);
    return out;
}

std::vector<std::string> bigrams(const std::vector<std::string>& tokens) {
    std::vector<std::string> out;
    if (tokens.size() < 2) return out;
    out.reserve(tokens.size() - 1);
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i) out.push_back(tokens[i] + "_" + tokens[i + 1]);
    return out;
}

std::vector<std::string> unigrams_and_bigrams(const std::vector<std::string>& tokens) {
    std::vector<std::string> out = tokens;
    auto bi = bigrams(tokens);
    out.insert(out.end(), std::make_move_iterator(bi.begin()), std::make_move_iterator(bi.end()));
    return out;
}

std::string stem(std::string_view token) {
    std::string s(token);
    if (s.size() <= 3 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= 'a' && c <= 'z'; })) return s;

    if (ends_with(s, "sses")) {
        s.resize(s.size() - 2);
    } else if (ends_with(s, "ies") && s.size() > 4) {
        s.resize(s.size() - 3);
        s += 'y';
    } else if (ends_with(s, "s") && !ends_with(s, "ss") && !ends_with(s, "us") && !ends_with(s, "is")) {
        s.pop_back();
    }

    if (ends_with(s, "ing") && s.size() > 5 && has_vowel(std::string_view(s).substr(0, s.size() - 3))) {
        s.resize(s.size() - 3);
        undouble(s);
    } else if (ends_with(s, "ed") && s.size() > 4 && has_vowel(std::string_view(s).substr(0, s.size() - 2))) {
        s.resize(s.size() - 2);
        undouble(s);
    }

    if (s.size() > 4 && s.back() == 'e') s.pop_back();
    if (s.size() > 3 && s.back() == 'y' && !is_vowel(s[s.size() - 2])) s.back() = 'i';
    return s;
}

std::vector<std::string> capitalized_initialisms(const std::vector<std::string>& cased_tokens) {
    std::vector<std::string> out;
    auto capitalized = [](const std::string& t) { return !t.empty() && t[0] >= 'A' && t[0] <= 'Z'; };
    std::size_t i = 0;
    while (i < cased_tokens.size()) {
        if (!capitalized(cased_tokens[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < cased_tokens.size() && capitalized(cased_tokens[j])) ++j;
        for (std::size_t a = i; a < j; ++a) {
            std::string acronym(1, static_cast<char>(cased_tokens[a][0] + 32));
            for (std::size_t b = a + 1; b < j; ++b) {
                acronym.push_back(static_cast<char>(cased_tokens[b][0] + 32));
                out.push_back(acronym);
            }
        }
        i = j;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace kbrank::text

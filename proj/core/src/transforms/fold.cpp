// Slug folding: UTF-8 decode, NFKD decomposition over the generated table,
// combining-mark stripping, ASCII lowercasing. See scripts/gen_fold_table.py
// for the table provenance.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "chadkg/transforms/udf.hpp"

namespace chadkg::transforms {

namespace {

struct FoldEntry {
    char32_t cp;
    char32_t decomp[4];
};

#include "fold_table.inc"

const FoldEntry* find_fold(char32_t cp) {
    const FoldEntry* begin = kFoldTable;
    const FoldEntry* end = kFoldTable + sizeof(kFoldTable) / sizeof(FoldEntry);
    const FoldEntry* it = std::lower_bound(
        begin, end, cp, [](const FoldEntry& e, char32_t v) { return e.cp < v; });
    return (it != end && it->cp == cp) ? it : nullptr;
}

bool is_combining_mark(char32_t cp) {
    const char32_t* begin = kCombiningMarks;
    const char32_t* end = kCombiningMarks + sizeof(kCombiningMarks) / sizeof(char32_t);
    return std::binary_search(begin, end, cp);
}

std::vector<char32_t> decode_utf8(const std::string& s) {
    std::vector<char32_t> out;
    size_t i = 0;
    while (i < s.size()) {
        unsigned char c = s[i];
        char32_t cp = 0xFFFD;
        size_t len = 1;
        if (c < 0x80) {
            cp = c;
        } else if ((c & 0xE0) == 0xC0 && i + 1 < s.size()) {
            cp = (c & 0x1F) << 6 | (s[i + 1] & 0x3F);
            len = 2;
        } else if ((c & 0xF0) == 0xE0 && i + 2 < s.size()) {
            cp = (c & 0x0F) << 12 | (s[i + 1] & 0x3F) << 6 | (s[i + 2] & 0x3F);
            len = 3;
        } else if ((c & 0xF8) == 0xF0 && i + 3 < s.size()) {
            cp = (c & 0x07) << 18 | (s[i + 1] & 0x3F) << 12 | (s[i + 2] & 0x3F) << 6 |
                 (s[i + 3] & 0x3F);
            len = 4;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

}  // namespace

std::optional<std::string> slugify(const std::string& text) {
    // NFKD over the table, marks stripped.
    std::vector<char32_t> folded;
    for (char32_t cp : decode_utf8(text)) {
        if (const FoldEntry* e = find_fold(cp)) {
            for (int k = 0; k < 4 && e->decomp[k]; ++k) {
                if (!is_combining_mark(e->decomp[k])) folded.push_back(e->decomp[k]);
            }
        } else if (!is_combining_mark(cp)) {
            folded.push_back(cp);
        }
    }

    std::string slug;
    bool pending_dash = false;
    for (char32_t cp : folded) {
        char c = 0;
        if (cp >= 'A' && cp <= 'Z') c = static_cast<char>(cp + 32);
        else if ((cp >= 'a' && cp <= 'z') || (cp >= '0' && cp <= '9')) c = static_cast<char>(cp);
        if (c) {
            if (pending_dash && !slug.empty()) slug += '-';
            pending_dash = false;
            slug += c;
        } else {
            pending_dash = true;
        }
    }
    if (slug.empty()) return std::nullopt;
    return slug;
}

}  // namespace chadkg::transforms

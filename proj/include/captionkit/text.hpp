// text.hpp - small UTF-8 helpers; the grid measures code points, not bytes
#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace captionkit {

// One monospaced cell per code point. Combining marks are not handled;
// the corpus only uses Latin, Cyrillic and a few punctuation glyphs.
inline std::size_t cell_width(std::string_view utf8) {
    std::size_t n = 0;
    for (unsigned char c : utf8)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return std::string(s.substr(b, e - b));
}

inline constexpr std::string_view kNoBreakSpace = " ";

// Output mapping: non-breaking spaces become plain spaces in the grid.
inline std::string flatten_spaces(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        if (s.compare(i, kNoBreakSpace.size(), kNoBreakSpace) == 0) {
            out += ' ';
            i += kNoBreakSpace.size();
        } else {
            out += s[i++];
        }
    }
    return out;
}

}  // namespace captionkit

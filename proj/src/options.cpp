#include "captionkit/options.hpp"

#include "captionkit/diagnostics.hpp"
#include "captionkit/text.hpp"

namespace captionkit {

namespace {

[[noreturn]] void unbalanced(std::size_t pos) {
    throw OptionParseError(OptionParseError::Kind::UnbalancedBraces, pos,
                           "unbalanced braces in option list at position " +
                               std::to_string(pos));
}

[[noreturn]] void empty_key(std::size_t pos) {
    throw OptionParseError(OptionParseError::Kind::EmptyKey, pos,
                           "option value without a key at position " +
                               std::to_string(pos));
}

// True when the whole string is one braced group, e.g. "{a,b}" but not
// "{a},{b}".
bool is_single_group(std::string_view s) {
    if (s.size() < 2 || s.front() != '{' || s.back() != '}') return false;
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '{') ++depth;
        else if (s[i] == '}') {
            --depth;
            if (depth == 0) return i + 1 == s.size();
        }
    }
    return false;
}

bool balanced(std::string_view s) {
    int depth = 0;
    for (char c : s) {
        if (c == '{') ++depth;
        else if (c == '}' && --depth < 0) return false;
    }
    return depth == 0;
}

}  // namespace

OptionList parse_option_list(std::string_view text) {
    OptionList out;
    std::size_t i = 0;
    const std::size_t n = text.size();

    while (i <= n) {
        // one segment up to the next top-level comma
        std::size_t seg_start = i;
        int depth = 0;
        std::size_t eq = std::string_view::npos;
        while (i < n) {
            char c = text[i];
            if (c == '{') ++depth;
            else if (c == '}') {
                if (--depth < 0) unbalanced(i);
            } else if (c == ',' && depth == 0) {
                break;
            } else if (c == '=' && depth == 0 && eq == std::string_view::npos) {
                eq = i;
            }
            ++i;
        }
        if (depth != 0) unbalanced(i);

        std::string_view segment = text.substr(seg_start, i - seg_start);
        if (eq == std::string_view::npos) {
            std::string key = trim(segment);
            if (!key.empty()) out.add(std::move(key));
        } else {
            std::string key = trim(text.substr(seg_start, eq - seg_start));
            if (key.empty()) empty_key(seg_start);
            std::string value = trim(text.substr(eq + 1, i - eq - 1));
            if (is_single_group(value))
                value = value.substr(1, value.size() - 2);  // strip once, keep spaces
            out.add(std::move(key), std::move(value));
        }

        if (i >= n) break;
        ++i;  // skip the comma
    }
    return out;
}

std::string serialize(const OptionList& opts) {
    std::string out;
    bool first = true;
    for (const auto& e : opts.entries) {
        if (!first) out += ',';
        first = false;
        out += e.key;
        if (!e.value) continue;
        const std::string& v = *e.value;
        int depth = 0;
        bool needs_group = v.empty() || v != trim(v) || is_single_group(v);
        for (char c : v) {
            if (c == '{') ++depth;
            else if (c == '}') --depth;
            else if (c == ',' && depth == 0) needs_group = true;
        }
        out += '=';
        if (needs_group) {
            out += '{';
            out += v;
            out += '}';
        } else {
            out += v;
        }
    }
    return out;
}

bool parse_bool(std::string_view raw) {
    const std::string text = trim(raw);
    if (text == "true" || text == "yes" || text == "on" || text == "1") return true;
    if (text == "false" || text == "no" || text == "off" || text == "0") return false;
    fail(msg::undefined_boolean(text));
}

OptionList value_as_option_list(const std::optional<std::string>& value) {
    if (!value) return {};
    if (!balanced(*value)) unbalanced(0);
    return parse_option_list(*value);
}

}  // namespace captionkit

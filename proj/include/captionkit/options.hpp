// options.hpp - the comma separated key=value option language, brace aware
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "captionkit/dimension.hpp"

namespace captionkit {

// One parsed entry. `value` is the raw text with one level of outer braces
// stripped; absent means the flag form (`oneside`). Nested lists are not
// decoded here - callers re-parse a raw value on demand.
struct OptionEntry {
    std::string key;
    std::optional<std::string> value;

    bool operator==(const OptionEntry&) const = default;
};

struct OptionList {
    std::vector<OptionEntry> entries;

    bool empty() const { return entries.empty(); }
    void append(const OptionList& other) {
        entries.insert(entries.end(), other.entries.begin(), other.entries.end());
    }
    void add(std::string key, std::optional<std::string> value = std::nullopt) {
        entries.push_back({std::move(key), std::move(value)});
    }

    bool operator==(const OptionList&) const = default;
};

// Raised for malformed option text. `position` is a byte offset into the
// input.
class OptionParseError : public std::runtime_error {
public:
    enum class Kind { UnbalancedBraces, EmptyKey };

    OptionParseError(Kind kind, std::size_t position, const std::string& what)
        : std::runtime_error(what), kind_(kind), position_(position) {}

    Kind kind() const { return kind_; }
    std::size_t position() const { return position_; }

private:
    Kind kind_;
    std::size_t position_;
};

// Entries keep source order; duplicate keys are retained (later-wins is a
// resolution rule, not a parse rule). Whitespace around keys, `=` and commas
// is trimmed; whitespace inside braced values is kept verbatim. Empty
// segments between commas are skipped.
OptionList parse_option_list(std::string_view text);

// Inverse of parse_option_list: parse(serialize(v)) == v for any list whose
// raw values have balanced braces.
std::string serialize(const OptionList& opts);

// Exactly eight literals: true/yes/on/1 and false/no/off/0. Anything else
// throws CaptionError (undefined-boolean).
bool parse_bool(std::string_view text);

// Convenience for values that are themselves option lists (font={small,it}).
OptionList value_as_option_list(const std::optional<std::string>& value);

}  // namespace captionkit

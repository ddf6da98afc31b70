#include "captionkit/dimension.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "captionkit/diagnostics.hpp"
#include "captionkit/text.hpp"

namespace captionkit {

namespace {

bool parse_decimal(std::string_view s, std::size_t& i, double& out) {
    std::size_t start = i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        ++i;
        ++digits;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            ++i;
            ++digits;
        }
    }
    if (digits == 0) {
        i = start;
        return false;
    }
    out = std::strtod(std::string(s.substr(start, i - start)).c_str(), nullptr);
    return true;
}

}  // namespace

Dimension parse_dimension(std::string_view raw) {
    const std::string text = trim(raw);
    std::string_view s = text;

    std::size_t i = 0;
    double value = 1.0;
    bool have_number = parse_decimal(s, i, value);

    while (i < s.size() && s[i] == ' ') ++i;
    std::string_view rest = s.substr(i);

    if (rest == "\\linewidth" || rest == "\\textwidth") return Dimension::frac(value);

    if (!have_number) fail(msg::bad_dimension(text));

    double factor = 0.0;
    if (rest == "pt") factor = 1.0;
    else if (rest == "in") factor = kPtPerIn;
    else if (rest == "cm") factor = kPtPerCm;
    else if (rest == "mm") factor = kPtPerMm;
    else if (rest == "em") factor = kPtPerEm;
    else fail(msg::bad_dimension(text));

    return Dimension::pt(value * factor);
}

std::string dimension_to_string(const Dimension& d) {
    char buf[64];
    if (d.relative) {
        if (d.points != 0.0) {
            std::snprintf(buf, sizeof buf, "%gpt+%g\\textwidth", d.points, *d.relative);
        } else {
            std::snprintf(buf, sizeof buf, "%g\\textwidth", *d.relative);
        }
    } else {
        std::snprintf(buf, sizeof buf, "%gpt", d.points);
    }
    return buf;
}

}  // namespace captionkit

// dimension.hpp - absolute lengths in points plus container-relative fractions
#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace captionkit {

// A length: absolute points, an optional fraction of the container width,
// or (representable, never parsed) the sum of both.
struct Dimension {
    double points = 0.0;
    std::optional<double> relative;

    static Dimension pt(double p) { return {p, std::nullopt}; }
    static Dimension frac(double f) { return {0.0, f}; }

    bool operator==(const Dimension&) const = default;
};

// Fixed conversion table; em is pinned to 12pt so parsing stays
// font-independent.
inline constexpr double kPtPerIn = 72.27;
inline constexpr double kPtPerCm = 28.45;
inline constexpr double kPtPerMm = 2.845;
inline constexpr double kPtPerEm = 12.0;

// Accepts a single term: "<decimal><unit>" or "<decimal>\linewidth" /
// "<decimal>\textwidth" (bare \linewidth/\textwidth reads as fraction 1).
// Glue syntax ("2pt plus 1pt") is rejected. Throws CaptionError
// (bad-dimension) otherwise.
Dimension parse_dimension(std::string_view text);

// Canonical source form, used when templates are rendered back to text.
std::string dimension_to_string(const Dimension& d);

}  // namespace captionkit

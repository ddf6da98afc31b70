// fontspec.hpp - resolved font attributes for caption parts
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace captionkit {

// Fonts never change cell metrics; they surface as span annotations in the
// annotated output format only.
struct FontSpec {
    std::optional<std::string> size;    // scriptsize..Large
    std::optional<std::string> family;  // rm|sf|tt
    std::optional<std::string> series;  // md|bf
    std::optional<std::string> shape;   // up|it|sl|sc
    std::optional<std::string> color;
    std::optional<double> stretch;      // line spacing factor, default 1.0

    bool empty() const {
        return !size && !family && !series && !shape && !color && !stretch;
    }
    double effective_stretch() const { return stretch.value_or(1.0); }

    bool operator==(const FontSpec&) const = default;
};

// A named font entry is a short program over a FontSpec. Reset ops are what
// make `normalfont`/`normal` expressible as merges.
struct FontOp {
    enum class Kind { Size, Family, Series, Shape, Color, Stretch, ResetFont, ResetColor };
    Kind kind;
    std::string arg;
    double number = 0.0;
};

void apply_font_op(FontSpec& spec, const FontOp& op);
void apply_font_ops(FontSpec& spec, const std::vector<FontOp>& ops);

// "small,bf,color=red,stretch=0.8" - fixed component order, empty for the
// default spec. Used by the annotated renderer.
std::string to_attr_string(const FontSpec& spec);

}  // namespace captionkit

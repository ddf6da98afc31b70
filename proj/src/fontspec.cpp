#include "captionkit/fontspec.hpp"

#include <cstdio>

namespace captionkit {

void apply_font_op(FontSpec& spec, const FontOp& op) {
    using Kind = FontOp::Kind;
    switch (op.kind) {
        case Kind::Size: spec.size = op.arg; break;
        case Kind::Family: spec.family = op.arg; break;
        case Kind::Series: spec.series = op.arg; break;
        case Kind::Shape: spec.shape = op.arg; break;
        case Kind::Color: spec.color = op.arg; break;
        case Kind::Stretch: spec.stretch = op.number; break;
        case Kind::ResetFont:
            spec.family.reset();
            spec.series.reset();
            spec.shape.reset();
            break;
        case Kind::ResetColor: spec.color.reset(); break;
    }
}

void apply_font_ops(FontSpec& spec, const std::vector<FontOp>& ops) {
    for (const auto& op : ops) apply_font_op(spec, op);
}

std::string to_attr_string(const FontSpec& spec) {
    std::string out;
    auto add = [&out](const std::string& piece) {
        if (!out.empty()) out += ',';
        out += piece;
    };
    if (spec.size) add(*spec.size);
    if (spec.family) add(*spec.family);
    if (spec.series) add(*spec.series);
    if (spec.shape) add(*spec.shape);
    if (spec.color) add("color=" + *spec.color);
    if (spec.stretch && *spec.stretch != 1.0) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "stretch=%g", *spec.stretch);
        add(buf);
    }
    return out;
}

}  // namespace captionkit

#include "captionkit/render.hpp"

#include "captionkit/text.hpp"

namespace captionkit {

std::vector<std::string> render_box_rows(const LayoutBox& box, bool annotated) {
    std::vector<std::string> rows;
    if (box.lines.empty()) return rows;

    for (int i = 0; i < box.skip_above; ++i) rows.emplace_back();
    for (const auto& line : box.lines) {
        if (line.runs.empty()) {
            rows.emplace_back();
            continue;
        }
        std::string row(static_cast<std::size_t>(line.indent), ' ');
        for (const auto& run : line.runs) {
            std::string attrs = to_attr_string(run.font);
            std::string text = flatten_spaces(run.text);
            if (annotated && !attrs.empty())
                row += "«" + attrs + ":" + text + "»";
            else
                row += text;
        }
        rows.push_back(std::move(row));
    }
    for (int i = 0; i < box.skip_below; ++i) rows.emplace_back();
    return rows;
}

std::string render_box(const LayoutBox& box, bool annotated) {
    std::string out;
    for (const auto& row : render_box_rows(box, annotated)) {
        out += row;
        out += '\n';
    }
    return out;
}

std::string render_diagnostic(const Diagnostic& d) {
    const char* kind = d.severity == Severity::Warning ? "Warning" : "Error";
    return std::string("Package caption ") + kind + ": " + d.message;
}

}  // namespace captionkit

// render.hpp - LayoutBox and diagnostics to text
#pragma once

#include <string>
#include <vector>

#include "captionkit/diagnostics.hpp"
#include "captionkit/layout.hpp"

namespace captionkit {

// One row per line, leading margins as spaces, skips as blank rows. A box
// without lines renders as nothing. Annotated output wraps font spans in
// guillemet markers.
std::vector<std::string> render_box_rows(const LayoutBox& box, bool annotated);
std::string render_box(const LayoutBox& box, bool annotated);

std::string render_diagnostic(const Diagnostic& d);

}  // namespace captionkit

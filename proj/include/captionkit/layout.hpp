// layout.hpp - composing, breaking and placing captions on the cell grid
#pragma once

#include <string>
#include <vector>

#include "captionkit/metrics.hpp"
#include "captionkit/registry.hpp"
#include "captionkit/settings.hpp"
#include "captionkit/template.hpp"

namespace captionkit {

struct ComposedCaption {
    StyledStream label;
    StyledStream separator;  // empty when label or text is empty
    std::vector<StyledStream> text_paragraphs;
    std::string format_name;
    FormatEntry format;
    VarEnv vars;
};

struct StyledRun {
    std::string text;  // UTF-8
    FontSpec font;
};

struct LayoutLine {
    int indent = 0;  // leading blank cells, margins included
    std::vector<StyledRun> runs;

    std::string plain_text() const;
    int content_width() const;
};

struct LayoutBox {
    std::vector<LayoutLine> lines;  // empty-run lines are blank rows (parskip)
    int skip_above = 0;
    int skip_below = 0;
};

struct ResolvedMargins {
    int left = 0;
    int right = 0;
    int usable = 1;
};

// Converts margin or width settings to cells; min/maxmargin clamp here so
// container-relative bounds work too.
ResolvedMargins margins_in_cells(const CaptionSettings& settings, const CellMetrics& metrics);

// Builds label, separator and text streams through the active templates.
// Throws the labelsep/format incompatibility error and propagates registry
// lookups.
ComposedCaption compose(const Registries& regs, const CaptionSettings& settings,
                        const std::string& float_name, const std::string& number,
                        const std::vector<std::string>& heading_paragraphs,
                        const VarEnv& vars);

// True when the whole caption fits one line and the check is enabled.
bool single_line_check(const ComposedCaption& composed, const CaptionSettings& settings,
                       const CellMetrics& metrics);

// Standalone paragraph breaker used by tests and by the engine: greedy
// first-fit on spaces, then per-mode placement. Returns lines of plain text
// positioned at absolute cells.
std::vector<LayoutLine> break_paragraph(const std::string& text, JustificationMode mode,
                                        int usable_cells, int first_indent, int hang_indent);

// Full caption layout. `at_top` drives which side carries the skip.
LayoutBox layout_caption(const Registries& regs, const ComposedCaption& composed,
                         const CaptionSettings& settings, const CellMetrics& metrics,
                         bool at_top, bool single_line);

}  // namespace captionkit

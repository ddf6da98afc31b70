#include "captionkit/layout.hpp"

#include <algorithm>

#include "captionkit/diagnostics.hpp"
#include "captionkit/text.hpp"

namespace captionkit {

namespace {

FontSpec merge_fonts(FontSpec base, const FontSpec& over) {
    if (over.size) base.size = over.size;
    if (over.family) base.family = over.family;
    if (over.series) base.series = over.series;
    if (over.shape) base.shape = over.shape;
    if (over.color) base.color = over.color;
    if (over.stretch) base.stretch = over.stretch;
    return base;
}

// ---------------------------------------------------------------------------
// cell buffer: lines are painted at absolute positions, then compacted

struct Cell {
    std::string glyph;
    FontSpec font;
    bool set = false;
};

class LineBuffer {
public:
    explicit LineBuffer(int cells) : cells_(std::max(cells, 1)) {}

    void paint(int x, std::string_view glyph, const FontSpec& font) {
        if (x < 0 || x >= static_cast<int>(cells_.size())) return;  // clipped at the walls
        cells_[x] = {std::string(glyph), font, true};
    }

    void paint_text(int x, std::string_view utf8, const FontSpec& font) {
        std::size_t i = 0;
        while (i < utf8.size()) {
            std::size_t len = 1;
            while (i + len < utf8.size() &&
                   (static_cast<unsigned char>(utf8[i + len]) & 0xC0) == 0x80)
                ++len;
            std::string_view glyph = utf8.substr(i, len);
            paint(x++, glyph == kNoBreakSpace ? " " : glyph, font);
            i += len;
        }
    }

    LayoutLine finish() const {
        LayoutLine line;
        int first = -1, last = -1;
        for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
            if (!cells_[i].set || cells_[i].glyph == " ") continue;
            if (first < 0) first = i;
            last = i;
        }
        if (first < 0) return line;  // blank row
        line.indent = first;
        StyledRun run;
        FontSpec current;
        bool have_run = false;
        for (int i = first; i <= last; ++i) {
            std::string glyph = cells_[i].set ? cells_[i].glyph : " ";
            FontSpec font = cells_[i].set ? cells_[i].font : FontSpec{};
            if (glyph == " " && !cells_[i].set) font = FontSpec{};
            if (!have_run || !(font == current)) {
                if (have_run && !run.text.empty()) line.runs.push_back(run);
                run = {std::string(), font};
                current = font;
                have_run = true;
            }
            run.text += glyph;
        }
        if (have_run && !run.text.empty()) line.runs.push_back(run);
        return line;
    }

private:
    std::vector<Cell> cells_;
};

// ---------------------------------------------------------------------------
// atoms and glue

struct Piece {
    enum class Kind { Runs, Pad, Box, Llap };
    Kind kind;
    std::vector<StyledRun> runs;  // Runs, Box and Llap content
    int width = 0;                // advance in cells (Llap advances nothing)
    int content_width = 0;        // Box/Llap painted width
    char align = 'l';
};

struct Atom {
    std::vector<Piece> pieces;
    int width = 0;

    bool empty() const { return pieces.empty(); }
    std::string plain_text() const {
        std::string out;
        for (const auto& p : pieces)
            for (const auto& r : p.runs) out += r.text;
        return out;
    }
};

struct Token {
    enum class Kind { AtomTok, Glue, Break };
    Kind kind = Kind::AtomTok;
    Atom atom;
    // glue fields
    int glue_width = 1;
    bool fill = false;
    bool keep_at_start = false;  // fixed spaces survive after a forced break
};

int runs_width(const std::vector<StyledRun>& runs) {
    int w = 0;
    for (const auto& r : runs) w += static_cast<int>(cell_width(r.text));
    return w;
}

std::vector<StyledRun> flatten_stream(const StyledStream& s, const CellMetrics& metrics) {
    std::vector<StyledRun> runs;
    auto pad = [&runs](int cells) {
        if (cells > 0) runs.push_back({std::string(static_cast<std::size_t>(cells), ' '), {}});
    };
    for (const auto& item : s) {
        if (item.kind == StyledItem::Kind::Text && !item.text.empty()) {
            runs.push_back({item.text, item.font});
        } else if (item.kind == StyledItem::Kind::HSpace) {
            pad(metrics.to_cells(item.dim));
        } else if (item.kind == StyledItem::Kind::Llap) {
            auto inner = flatten_stream(item.inner, metrics);
            runs.insert(runs.end(), inner.begin(), inner.end());
        } else if (item.kind == StyledItem::Kind::MakeBox) {
            auto inner = flatten_stream(item.inner, metrics);
            int content = runs_width(inner);
            int width = std::max(metrics.to_cells(item.dim), content);
            int lead = item.align == 'r' ? width - content
                     : item.align == 'c' ? (width - content) / 2
                                         : 0;
            pad(lead);
            runs.insert(runs.end(), inner.begin(), inner.end());
            pad(width - content - lead);
        }
    }
    return runs;
}

// Splits a paragraph stream into indivisible atoms separated by breakable
// glue. Words fuse with adjacent punctuation and boxes; spaces, fills and
// fixed spaces are glue.
std::vector<Token> tokenize(const StyledStream& stream, const CellMetrics& metrics) {
    std::vector<Token> tokens;
    Atom current;

    auto flush_atom = [&] {
        if (current.empty()) return;
        Token t;
        t.kind = Token::Kind::AtomTok;
        t.atom = std::move(current);
        tokens.push_back(std::move(t));
        current = {};
    };
    auto push_glue = [&](int width, bool fill, bool keep) {
        flush_atom();
        Token t;
        t.kind = Token::Kind::Glue;
        t.glue_width = width;
        t.fill = fill;
        t.keep_at_start = keep;
        tokens.push_back(std::move(t));
    };

    for (const auto& item : stream) {
        switch (item.kind) {
            case StyledItem::Kind::Text: {
                const std::string& text = item.text;
                std::size_t i = 0;
                while (i < text.size()) {
                    if (text[i] == ' ') {
                        push_glue(1, false, false);
                        while (i < text.size() && text[i] == ' ') ++i;
                        continue;
                    }
                    std::size_t j = i;
                    while (j < text.size() && text[j] != ' ') ++j;
                    std::string word = text.substr(i, j - i);
                    int w = static_cast<int>(cell_width(word));
                    if (!current.pieces.empty() &&
                        current.pieces.back().kind == Piece::Kind::Runs) {
                        current.pieces.back().runs.push_back({word, item.font});
                        current.pieces.back().width += w;
                    } else {
                        current.pieces.push_back({Piece::Kind::Runs, {{word, item.font}}, w, w});
                    }
                    current.width += w;
                    i = j;
                }
                break;
            }
            case StyledItem::Kind::HSpace:
                push_glue(std::max(0, metrics.to_cells(item.dim)), false, true);
                break;
            case StyledItem::Kind::MakeBox: {
                auto runs = flatten_stream(item.inner, metrics);
                int content = runs_width(runs);
                int w = std::max(metrics.to_cells(item.dim), content);
                current.pieces.push_back(
                    {Piece::Kind::Box, std::move(runs), w, content, item.align});
                current.width += w;
                break;
            }
            case StyledItem::Kind::Llap: {
                auto runs = flatten_stream(item.inner, metrics);
                int content = runs_width(runs);
                current.pieces.push_back({Piece::Kind::Llap, std::move(runs), 0, content});
                break;
            }
            case StyledItem::Kind::Fill: push_glue(0, true, true); break;
            case StyledItem::Kind::LineBreak: {
                flush_atom();
                Token t;
                t.kind = Token::Kind::Break;
                tokens.push_back(std::move(t));
                break;
            }
            case StyledItem::Kind::ParBreak: break;  // callers split paragraphs first
        }
    }
    flush_atom();
    return tokens;
}

struct Gap {
    bool fill = false;
    int width = 1;  // natural width; fills start at zero
};

struct PendingLine {
    std::vector<Atom> atoms;
    std::vector<Gap> gaps;  // gaps[i] sits between atoms[i] and atoms[i+1]
    bool forced_end = false;

    bool empty() const { return atoms.empty(); }
    int natural_width() const {
        int w = 0;
        for (const auto& a : atoms) w += a.width;
        for (const auto& g : gaps) w += g.width;
        return w;
    }
    bool has_fill() const {
        for (const auto& g : gaps)
            if (g.fill) return true;
        return false;
    }
};

struct PlacedLine {
    PendingLine line;
    int start = 0;   // absolute cell where flowing begins
    int target = 0;  // right boundary for justification
    bool last_of_paragraph = false;
};

// Greedy first-fit. Glue at a chosen break point is discarded; fixed spaces
// and fills survive at the start of a line.
std::vector<PlacedLine> flow_paragraph(const std::vector<Token>& tokens, int first_start,
                                       int cont_start, int right_bound) {
    std::vector<PlacedLine> lines;
    PendingLine current;
    const Token* pending = nullptr;

    auto line_start = [&] { return lines.empty() ? first_start : cont_start; };
    auto avail = [&] { return right_bound - line_start(); };

    auto close_line = [&](bool forced) {
        current.forced_end = forced;
        PlacedLine placed;
        placed.start = line_start();
        placed.target = right_bound;
        placed.line = std::move(current);
        lines.push_back(std::move(placed));
        current = {};
        pending = nullptr;
    };

    auto start_line_with = [&](const Atom& atom, const Token* lead) {
        Atom head = atom;
        if (lead && lead->keep_at_start && !lead->fill && lead->glue_width > 0) {
            head.pieces.insert(head.pieces.begin(),
                               {Piece::Kind::Pad, {}, lead->glue_width, 0});
            head.width += lead->glue_width;
        }
        if (head.width > avail()) fail(msg::word_too_wide(atom.plain_text()));
        if (lead && lead->keep_at_start && lead->fill) {
            current.atoms.push_back({});
            current.gaps.push_back({true, 0});
        }
        current.atoms.push_back(std::move(head));
    };

    for (const auto& token : tokens) {
        switch (token.kind) {
            case Token::Kind::Glue:
                if (!current.empty() || token.keep_at_start) pending = &token;
                break;
            case Token::Kind::Break: close_line(true); break;
            case Token::Kind::AtomTok: {
                if (current.empty()) {
                    start_line_with(token.atom, pending);
                } else {
                    int gap_w = pending ? (pending->fill ? 0 : pending->glue_width) : 0;
                    bool fill_gap = pending && pending->fill;
                    if (current.natural_width() + gap_w + token.atom.width > avail()) {
                        close_line(false);  // the pending glue is the break point
                        start_line_with(token.atom, nullptr);
                    } else {
                        current.gaps.push_back({fill_gap, fill_gap ? 0 : gap_w});
                        current.atoms.push_back(token.atom);
                    }
                }
                pending = nullptr;
                break;
            }
        }
    }
    if (!current.empty()) close_line(false);
    if (lines.empty()) {
        PlacedLine placed;  // an empty paragraph still occupies one blank row
        placed.start = first_start;
        placed.target = right_bound;
        placed.last_of_paragraph = true;
        lines.push_back(placed);
    } else {
        lines.back().last_of_paragraph = true;
    }
    return lines;
}

void paint_piece(LineBuffer& buf, int& x, const Piece& piece) {
    switch (piece.kind) {
        case Piece::Kind::Runs:
            for (const auto& r : piece.runs) {
                buf.paint_text(x, r.text, r.font);
                x += static_cast<int>(cell_width(r.text));
            }
            break;
        case Piece::Kind::Pad: x += piece.width; break;
        case Piece::Kind::Box: {
            int offset = 0;
            if (piece.align == 'c') offset = (piece.width - piece.content_width) / 2;
            else if (piece.align == 'r') offset = piece.width - piece.content_width;
            int bx = x + offset;
            for (const auto& r : piece.runs) {
                buf.paint_text(bx, r.text, r.font);
                bx += static_cast<int>(cell_width(r.text));
            }
            x += piece.width;
            break;
        }
        case Piece::Kind::Llap: {
            int bx = x - piece.content_width;  // may clip at cell 0
            for (const auto& r : piece.runs) {
                buf.paint_text(bx, r.text, r.font);
                bx += static_cast<int>(cell_width(r.text));
            }
            break;
        }
    }
}

// Per-mode horizontal placement of one flowed line. Fill markers trump the
// justification mode and soak up all slack on their line.
LayoutLine place_line(const PlacedLine& placed, JustificationMode mode, int cells_per_line,
                      bool first_of_paragraph) {
    const PendingLine& line = placed.line;
    LineBuffer buf(cells_per_line);
    int natural = line.natural_width();
    int slack = std::max(0, placed.target - placed.start - natural);

    std::vector<int> gap_widths;
    gap_widths.reserve(line.gaps.size());
    for (const auto& g : line.gaps) gap_widths.push_back(g.width);
    int start = placed.start;

    if (line.has_fill()) {
        int fills = 0;
        for (const auto& g : line.gaps) fills += g.fill ? 1 : 0;
        int share = slack / fills, extra = slack % fills;
        int seen = 0;
        for (std::size_t i = 0; i < line.gaps.size(); ++i) {
            if (!line.gaps[i].fill) continue;
            gap_widths[i] += share + (seen < extra ? 1 : 0);
            ++seen;
        }
    } else {
        bool justify_this = false;
        switch (mode) {
            case JustificationMode::Justified:
                justify_this = !line.forced_end && !placed.last_of_paragraph;
                break;
            case JustificationMode::CenterLast:
                if (placed.last_of_paragraph) start += slack / 2;
                else justify_this = !line.forced_end;
                break;
            case JustificationMode::CenterFirst:
                if (first_of_paragraph) start += slack / 2;
                else justify_this = !line.forced_end;
                break;
            case JustificationMode::Centering: start += slack / 2; break;
            case JustificationMode::RaggedRight: break;
            case JustificationMode::RaggedLeft: start += slack; break;
        }
        if (justify_this && !line.gaps.empty()) {
            int gaps = static_cast<int>(line.gaps.size());
            int share = slack / gaps, extra = slack % gaps;
            for (int i = 0; i < gaps; ++i) gap_widths[i] += share + (i < extra ? 1 : 0);
        }
    }

    int x = start;
    for (std::size_t i = 0; i < line.atoms.size(); ++i) {
        if (i > 0) x += gap_widths[i - 1];
        for (const auto& piece : line.atoms[i].pieces) paint_piece(buf, x, piece);
    }
    return buf.finish();
}

StyledStream format_stream(const ComposedCaption& composed) {
    std::vector<StyledStream> args = {composed.label, composed.separator, {}};
    StyledStream& text = args[2];
    for (std::size_t i = 0; i < composed.text_paragraphs.size(); ++i) {
        if (i > 0) text.push_back({StyledItem::Kind::ParBreak});
        const StyledStream& para = composed.text_paragraphs[i];
        text.insert(text.end(), para.begin(), para.end());
    }
    StyledStream out = eval_template(composed.format.tpl, args, composed.vars, FontSpec{});
    while (!out.empty() && out.back().kind == StyledItem::Kind::ParBreak) out.pop_back();
    return out;
}

std::vector<StyledStream> split_paragraphs(const StyledStream& stream) {
    std::vector<StyledStream> paragraphs(1);
    for (const auto& item : stream) {
        if (item.kind == StyledItem::Kind::ParBreak) paragraphs.emplace_back();
        else paragraphs.back().push_back(item);
    }
    return paragraphs;
}

bool stream_has_break(const StyledStream& s) {
    for (const auto& item : s)
        if (item.kind == StyledItem::Kind::LineBreak ||
            item.kind == StyledItem::Kind::ParBreak)
            return true;
    return false;
}

}  // namespace

std::string LayoutLine::plain_text() const {
    std::string out;
    for (const auto& r : runs) out += r.text;
    return out;
}

int LayoutLine::content_width() const {
    int w = 0;
    for (const auto& r : runs) w += static_cast<int>(cell_width(r.text));
    return w;
}

ResolvedMargins margins_in_cells(const CaptionSettings& settings, const CellMetrics& metrics) {
    const int cells = metrics.cells_per_line;
    ResolvedMargins m;
    if (settings.width) {
        int w = std::clamp(metrics.to_cells(*settings.width), 1, cells);
        int remaining = cells - w;
        m.left = remaining / 2;
        m.right = remaining - m.left;
    } else {
        m.left = std::clamp(metrics.to_cells(settings.margin_left), 0, cells);
        m.right = std::clamp(metrics.to_cells(settings.margin_right), 0, cells);
    }
    if (settings.maxmargin) {
        int bound = std::max(0, metrics.to_cells(*settings.maxmargin));
        m.left = std::min(m.left, bound);
        m.right = std::min(m.right, bound);
    }
    if (settings.minmargin) {
        int bound = std::max(0, metrics.to_cells(*settings.minmargin));
        m.left = std::max(m.left, bound);
        m.right = std::max(m.right, bound);
    }
    m.usable = std::max(1, cells - m.left - m.right);
    return m;
}

ComposedCaption compose(const Registries& regs, const CaptionSettings& settings,
                        const std::string& float_name, const std::string& number,
                        const std::vector<std::string>& heading_paragraphs,
                        const VarEnv& vars) {
    ComposedCaption out;
    out.vars = vars;
    out.format_name = settings.format;
    out.format = regs.format(settings.format);

    const FontSpec label_font = merge_fonts(settings.font, settings.labelfont);
    const FontSpec text_font = merge_fonts(settings.font, settings.textfont);

    const LabelFormatEntry& lf = regs.label_format(settings.labelformat);
    std::vector<StyledStream> label_args = {
        {StyledItem::make_text(float_name, label_font)},
        {StyledItem::make_text(number, label_font)},
    };
    out.label = eval_template(lf.tpl, label_args, vars, label_font);

    const TextFormatEntry& tf = regs.text_format(settings.textformat);
    bool text_empty = true;
    for (std::size_t i = 0; i < heading_paragraphs.size(); ++i) {
        if (!heading_paragraphs[i].empty()) text_empty = false;
        std::vector<StyledStream> text_args = {
            {StyledItem::make_text(heading_paragraphs[i], text_font)}};
        Template tpl = tf.tpl;
        if (i + 1 < heading_paragraphs.size() && !tpl.tokens.empty()) {
            // terminator literals (the period form) attach to the final
            // paragraph only
            std::size_t last_param = 0;
            for (std::size_t t = 0; t < tpl.tokens.size(); ++t)
                if (tpl.tokens[t].kind == TemplateToken::Kind::Param) last_param = t;
            tpl.tokens.resize(last_param + 1);
        }
        out.text_paragraphs.push_back(eval_template(tpl, text_args, vars, text_font));
    }

    // the separator is dropped when label or text is empty
    if (!stream_empty(out.label) && !text_empty) {
        const SeparatorEntry& sep = regs.separator(settings.labelsep);
        const FontSpec& sep_font = sep.exempt_labelfont ? settings.font : label_font;
        out.separator = eval_template(sep.tpl, {}, vars, sep_font);
    }

    if (out.format.hang && stream_has_break(out.separator))
        fail(msg::labelsep_vs_hang(settings.labelsep));
    return out;
}

bool single_line_check(const ComposedCaption& composed, const CaptionSettings& settings,
                       const CellMetrics& metrics) {
    if (!settings.singlelinecheck) return false;
    if (composed.text_paragraphs.size() > 1) return false;
    StyledStream one_line = format_stream(composed);
    if (stream_has_break(one_line)) return false;
    ResolvedMargins m = margins_in_cells(settings, metrics);
    return stream_width(one_line, metrics.cells_per_line) <= m.usable;
}

std::vector<LayoutLine> break_paragraph(const std::string& text, JustificationMode mode,
                                        int usable_cells, int first_indent, int hang_indent) {
    StyledStream stream = {StyledItem::make_text(text)};
    CellMetrics metrics{usable_cells};
    auto tokens = tokenize(stream, metrics);
    auto placed = flow_paragraph(tokens, std::max(0, first_indent),
                                 std::max(0, hang_indent), usable_cells);
    std::vector<LayoutLine> lines;
    for (std::size_t i = 0; i < placed.size(); ++i)
        lines.push_back(place_line(placed[i], mode, usable_cells, i == 0));
    return lines;
}

LayoutBox layout_caption(const Registries& regs, const ComposedCaption& composed,
                         const CaptionSettings& settings, const CellMetrics& metrics,
                         bool at_top, bool single_line) {
    ResolvedMargins margins = margins_in_cells(settings, metrics);
    const int right_bound = metrics.cells_per_line - margins.right;
    const JustificationMode mode = regs.justification(settings.justification).mode;

    LayoutBox box;
    const int skip_cells = std::max(0, metrics.to_cells(settings.skip));
    const int below_cells = std::max(0, metrics.to_cells(settings.belowskip));
    box.skip_above = at_top ? below_cells : skip_cells;
    box.skip_below = at_top ? skip_cells : below_cells;

    StyledStream stream = format_stream(composed);
    if (stream_empty(stream) && !stream_has_break(stream)) return box;

    const int indention_cells =
        composed.format.vertical ? 0 : metrics.to_cells(settings.indention);
    const int hangindent_cells = metrics.to_cells(settings.hangindent);
    const int parindent_cells = std::max(0, metrics.to_cells(settings.parindent));
    const int parskip_rows = std::max(0, metrics.to_cells(settings.parskip));
    const int hang_extra =
        composed.format.hang
            ? stream_width(composed.label, metrics.cells_per_line) +
                  stream_width(composed.separator, metrics.cells_per_line)
            : 0;

    auto clamp_start = [&](int x) { return std::clamp(x, 0, right_bound - 1); };

    if (single_line) {
        auto tokens = tokenize(stream, metrics);
        auto placed =
            flow_paragraph(tokens, margins.left, margins.left, right_bound);
        for (std::size_t i = 0; i < placed.size(); ++i)
            box.lines.push_back(place_line(placed[i], mode, metrics.cells_per_line, i == 0));
        return box;
    }

    auto paragraphs = split_paragraphs(stream);
    for (std::size_t p = 0; p < paragraphs.size(); ++p) {
        if (p > 0)
            for (int row = 0; row < parskip_rows; ++row) box.lines.emplace_back();

        int first = clamp_start(margins.left + (p == 0 ? 0 : parindent_cells));
        int cont = clamp_start(margins.left + hang_extra + hangindent_cells +
                               (p == 0 ? indention_cells : 0));

        auto tokens = tokenize(paragraphs[p], metrics);
        auto placed = flow_paragraph(tokens, first, cont, right_bound);
        for (std::size_t i = 0; i < placed.size(); ++i)
            box.lines.push_back(place_line(placed[i], mode, metrics.cells_per_line, i == 0));
    }
    return box;
}

}  // namespace captionkit

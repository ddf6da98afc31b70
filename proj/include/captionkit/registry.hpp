// registry.hpp - the named template tables behind every *format/*sep/... key
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "captionkit/fontspec.hpp"
#include "captionkit/options.hpp"
#include "captionkit/template.hpp"

namespace captionkit {

struct FormatEntry {
    Template tpl;          // slots: #1 label, #2 separator, #3 text
    bool vertical = false; // declared with the starred registrar; ignores indention
    bool hang = false;     // continuation lines hang by the label+sep width
};

struct LabelFormatEntry {
    Template tpl;  // slots: #1 float name, #2 number
};

struct SeparatorEntry {
    Template tpl;                  // no slots
    bool exempt_labelfont = false; // starred declaration: labelfont does not apply
};

struct TextFormatEntry {
    Template tpl;  // slot: #1 caption text
};

enum class JustificationMode {
    Justified,
    Centering,
    CenterLast,
    CenterFirst,
    RaggedRight,
    RaggedLeft,
};

struct JustificationEntry {
    JustificationMode mode = JustificationMode::Justified;
};

struct FontEntry {
    std::vector<FontOp> ops;
};

struct StyleEntry {
    OptionList options;             // applied on top of the defaults
    OptionList singleline_options;  // applied when the single-line check fires
};

struct ListFormatEntry {
    Template tpl;  // slots: #1 prefix, #2 number
};

// All tables in one bag. Mutable while a document declares things; every
// eval works on a snapshot by const reference.
struct Registries {
    std::map<std::string, FormatEntry> formats;
    std::map<std::string, LabelFormatEntry> label_formats;
    std::map<std::string, SeparatorEntry> separators;
    std::map<std::string, TextFormatEntry> text_formats;
    std::map<std::string, JustificationEntry> justifications;
    std::map<std::string, FontEntry> fonts;
    std::map<std::string, StyleEntry> styles;
    std::map<std::string, ListFormatEntry> list_formats;
    std::set<std::string> custom_options;

    // Lookups throw CaptionError with the catalog's "Undefined ..." text.
    const FormatEntry& format(const std::string& name) const;
    const LabelFormatEntry& label_format(const std::string& name) const;
    const SeparatorEntry& separator(const std::string& name) const;
    const TextFormatEntry& text_format(const std::string& name) const;
    const JustificationEntry& justification(const std::string& name) const;
    const FontEntry& font(const std::string& name) const;
    const StyleEntry& style(const std::string& name) const;
    const ListFormatEntry& list_format(const std::string& name) const;

    // Registrars; redeclaring replaces. Template sources are parsed here and
    // arity-checked against the slot count.
    void declare_format(const std::string& name, std::string_view source, bool vertical);
    void declare_label_format(const std::string& name, std::string_view source);
    void declare_label_separator(const std::string& name, std::string_view source,
                                 bool exempt_labelfont);
    void declare_text_format(const std::string& name, std::string_view source);
    void declare_justification(const std::string& name, const std::string& strategy);
    void declare_font(const std::string& name, const OptionList& options);
    void declare_style(const std::string& name, OptionList options,
                       OptionList singleline_options);
    void declare_list_format(const std::string& name, std::string_view source);
    void declare_option(const std::string& name);

    // Builds a FontSpec program from a font option list; items resolve
    // through the fonts table, plus the parameterised color=/stretch= forms.
    std::vector<FontOp> font_ops_from_options(const OptionList& options) const;
};

// All built-in names, wired for the standard document classes
// (plain/simple/colon/justified, empty fonts).
Registries builtin_registries();

// Emptiness-tested concatenation, also available as template tokens.
std::string both_if_first(const std::string& a, const std::string& b);
std::string both_if_second(const std::string& a, const std::string& b);

}  // namespace captionkit

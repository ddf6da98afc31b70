#include "captionkit/registry.hpp"

#include <charconv>
#include <cstdlib>

#include "captionkit/diagnostics.hpp"

namespace captionkit {

namespace {

Template parse_with_arity(std::string_view source, int arity, const char* slot) {
    Template tpl = parse_template(source);
    if (tpl.max_param > arity)
        throw TemplateParseError(std::string(slot) + " template accepts at most " +
                                     std::to_string(arity) + " parameters",
                                 "#" + std::to_string(tpl.max_param));
    return tpl;
}

}  // namespace

const FormatEntry& Registries::format(const std::string& name) const {
    auto it = formats.find(name);
    if (it == formats.end()) fail(msg::undefined_format(name));
    return it->second;
}

const LabelFormatEntry& Registries::label_format(const std::string& name) const {
    auto it = label_formats.find(name);
    if (it == label_formats.end()) fail(msg::undefined_label_format(name));
    return it->second;
}

const SeparatorEntry& Registries::separator(const std::string& name) const {
    auto it = separators.find(name);
    if (it == separators.end()) fail(msg::undefined_label_separator(name));
    return it->second;
}

const TextFormatEntry& Registries::text_format(const std::string& name) const {
    auto it = text_formats.find(name);
    if (it == text_formats.end()) fail(msg::undefined_text_format(name));
    return it->second;
}

const JustificationEntry& Registries::justification(const std::string& name) const {
    auto it = justifications.find(name);
    if (it == justifications.end()) fail(msg::undefined_justification(name));
    return it->second;
}

const FontEntry& Registries::font(const std::string& name) const {
    auto it = fonts.find(name);
    if (it == fonts.end()) fail(msg::undefined_font(name));
    return it->second;
}

const StyleEntry& Registries::style(const std::string& name) const {
    auto it = styles.find(name);
    if (it == styles.end()) fail(msg::undefined_style(name));
    return it->second;
}

const ListFormatEntry& Registries::list_format(const std::string& name) const {
    auto it = list_formats.find(name);
    if (it == list_formats.end()) fail(msg::undefined_list_format(name));
    return it->second;
}

void Registries::declare_format(const std::string& name, std::string_view source,
                                bool vertical) {
    formats[name] = {parse_with_arity(source, 3, "format"), vertical, false};
}

void Registries::declare_label_format(const std::string& name, std::string_view source) {
    label_formats[name] = {parse_with_arity(source, 2, "label format")};
}

void Registries::declare_label_separator(const std::string& name, std::string_view source,
                                         bool exempt_labelfont) {
    separators[name] = {parse_with_arity(source, 0, "label separator"), exempt_labelfont};
}

void Registries::declare_text_format(const std::string& name, std::string_view source) {
    text_formats[name] = {parse_with_arity(source, 1, "text format")};
}

void Registries::declare_justification(const std::string& name, const std::string& strategy) {
    justifications[name] = justification(strategy);
}

void Registries::declare_font(const std::string& name, const OptionList& options) {
    fonts[name] = {font_ops_from_options(options)};
}

void Registries::declare_style(const std::string& name, OptionList options,
                               OptionList singleline_options) {
    styles[name] = {std::move(options), std::move(singleline_options)};
}

void Registries::declare_list_format(const std::string& name, std::string_view source) {
    list_formats[name] = {parse_with_arity(source, 2, "list format")};
}

void Registries::declare_option(const std::string& name) { custom_options.insert(name); }

std::vector<FontOp> Registries::font_ops_from_options(const OptionList& options) const {
    std::vector<FontOp> ops;
    for (const auto& entry : options.entries) {
        if (entry.value) {
            if (entry.key == "stretch") {
                char* end = nullptr;
                double amount = std::strtod(entry.value->c_str(), &end);
                if (end == entry.value->c_str() || *end != '\0' || amount < 0.0)
                    fail(msg::undefined_font("stretch=" + *entry.value));
                ops.push_back({FontOp::Kind::Stretch, "", amount});
            } else if (entry.key == "color") {
                ops.push_back({FontOp::Kind::Color, *entry.value});
            } else {
                fail(msg::undefined_font(entry.key));
            }
            continue;
        }
        const FontEntry& named = font(entry.key);
        ops.insert(ops.end(), named.ops.begin(), named.ops.end());
    }
    return ops;
}

namespace {

void add_builtin_fonts(Registries& r) {
    using K = FontOp::Kind;
    auto one = [&r](const char* name, FontOp op) { r.fonts[name] = {{op}}; };

    for (const char* size :
         {"scriptsize", "footnotesize", "small", "normalsize", "large", "Large"})
        one(size, {K::Size, size});
    for (const char* shape : {"up", "it", "sl", "sc"}) one(shape, {K::Shape, shape});
    for (const char* series : {"md", "bf"}) one(series, {K::Series, series});
    for (const char* family : {"rm", "sf", "tt"}) one(family, {K::Family, family});

    one("normalfont", {K::ResetFont, ""});
    one("normalcolor", {K::ResetColor, ""});
    one("singlespacing", {K::Stretch, "", 1.0});
    one("onehalfspacing", {K::Stretch, "", 1.5});
    one("doublespacing", {K::Stretch, "", 2.0});
    r.fonts["normal"] = {{{K::ResetColor, ""},
                          {K::ResetFont, ""},
                          {K::Size, "normalsize"},
                          {K::Stretch, "", 1.0}}};
    r.fonts["default"] = {{}};  // standard classes set no caption font
}

OptionList opts(std::string_view text) { return parse_option_list(text); }

}  // namespace

Registries builtin_registries() {
    Registries r;

    r.declare_format("plain", "#1#2#3\\par", false);
    r.declare_format("hang", "#1#2#3\\par", false);
    r.formats["hang"].hang = true;

    r.declare_label_format("empty", "");
    r.declare_label_format("simple", "\\bothIfFirst{#1}{~}#2");
    r.declare_label_format("brace", "\\bothIfFirst{#1}{~}#2)");
    r.declare_label_format("parens", "\\bothIfFirst{#1}{~}(#2)");

    r.declare_label_separator("none", "", false);
    r.declare_label_separator("colon", ": ", false);
    r.declare_label_separator("period", ". ", false);
    r.declare_label_separator("space", " ", false);
    r.declare_label_separator("quad", "\\quad", true);
    r.declare_label_separator("newline", "\\\\", true);
    r.declare_label_separator("endash", " – ", true);

    r.declare_text_format("simple", "#1");
    r.declare_text_format("period", "#1.");

    r.justifications["justified"] = {JustificationMode::Justified};
    r.justifications["centering"] = {JustificationMode::Centering};
    r.justifications["centerlast"] = {JustificationMode::CenterLast};
    r.justifications["centerfirst"] = {JustificationMode::CenterFirst};
    r.justifications["raggedright"] = {JustificationMode::RaggedRight};
    // no hyphenation anywhere, so the ragged2e variant is a plain alias
    r.justifications["RaggedRight"] = {JustificationMode::RaggedRight};
    r.justifications["raggedleft"] = {JustificationMode::RaggedLeft};

    add_builtin_fonts(r);

    r.declare_list_format("empty", "");
    r.declare_list_format("simple", "#1#2");
    r.declare_list_format("parens", "#1(#2)");
    r.declare_list_format("subsimple", "#2");
    r.declare_list_format("subparens", "(#2)");

    // `default` entries follow the standard-classes profile.
    r.formats["default"] = r.formats["plain"];
    r.label_formats["default"] = r.label_formats["simple"];
    r.separators["default"] = r.separators["colon"];
    r.text_formats["default"] = r.text_formats["simple"];
    r.justifications["default"] = r.justifications["justified"];
    r.list_formats["default"] = r.list_formats["subsimple"];

    const OptionList singleline = opts("justification=centering,indention=0pt");
    r.declare_style("base", OptionList{}, singleline);
    r.declare_style("default", OptionList{}, singleline);

    return r;
}

std::string both_if_first(const std::string& a, const std::string& b) {
    return a.empty() ? std::string() : a + b;
}

std::string both_if_second(const std::string& a, const std::string& b) {
    return b.empty() ? std::string() : a + b;
}

}  // namespace captionkit

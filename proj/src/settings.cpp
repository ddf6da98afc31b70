#include "captionkit/settings.hpp"

#include <algorithm>
#include <array>

#include "captionkit/text.hpp"

namespace captionkit {

namespace {

const std::map<std::string, std::string, std::less<>>& legacy_table() {
    static const std::map<std::string, std::string, std::less<>> table = {
        // caption v1.x
        {"normal", "format=plain"},
        {"hang", "format=hang"},
        {"isu", "format=hang"},
        {"center", "justification=centering"},
        {"centerlast", "justification=centerlast"},
        {"nooneline", "singlelinecheck=off"},
        {"scriptsize", "font=scriptsize"},
        {"footnotesize", "font=footnotesize"},
        {"small", "font=small"},
        {"normalsize", "font=normalsize"},
        {"large", "font=large"},
        {"Large", "font=Large"},
        {"up", "labelfont=up"},
        {"it", "labelfont=it"},
        {"sl", "labelfont=sl"},
        {"sc", "labelfont=sc"},
        {"md", "labelfont=md"},
        {"bf", "labelfont=bf"},
        {"rm", "labelfont=rm"},
        {"sf", "labelfont=sf"},
        {"tt", "labelfont=tt"},
        // caption2 emulation
        {"flushleft", "justification=raggedright"},
        {"flushright", "justification=raggedleft"},
        {"oneline", "singlelinecheck=on"},
    };
    return table;
}

// Styles bring every key back to the class defaults before their own
// options apply.
constexpr std::string_view kStyleResetOptions =
    "format=default,labelformat=default,labelsep=default,"
    "justification=default,font=default,labelfont=default,"
    "textfont=default,margin=0pt,indention=0pt,"
    "parindent=0pt,hangindent=0pt,singlelinecheck=true";

constexpr std::string_view kDefaultSinglelineOptions =
    "justification=centering,indention=0pt";

// Keys accepted and stored but without any modeled effect (interop and
// hyperlink machinery has no counterpart in the cell grid).
bool inert_key(const std::string& key) {
    return key == "compatibility" || key == "hypcap" || key == "hypcapspace" ||
           key == "FPlist" || key == "FPref" || key == "subtype" || key == "strut";
}

bool bool_key(const std::string& key) {
    return key == "singlelinecheck" || key == "list" || key == "strut" ||
           key == "compatibility" || key == "hypcap";
}

bool dimension_key(const std::string& key) {
    return key == "width" || key == "indention" || key == "hangindent" ||
           key == "parindent" || key == "parskip" || key == "skip" ||
           key == "belowskip" || key == "hypcapspace";
}

Position parse_position(const std::string& value) {
    if (value == "top" || value == "above") return Position::Top;
    if (value == "bottom" || value == "below") return Position::Bottom;
    if (value == "auto") return Position::Auto;
    fail(msg::undefined_position(value));
}

bool is_false_literal(const std::string& value) {
    return value == "false" || value == "no" || value == "off" || value == "0";
}

std::string value_or_empty(const OptionEntry& e) { return e.value.value_or(""); }

// margin / margin* accept one amount or a {left,right} pair.
std::pair<Dimension, Dimension> parse_margin_pair(const OptionEntry& e) {
    const std::string text = value_or_empty(e);
    OptionList parts = value_as_option_list(e.value);
    std::vector<Dimension> dims;
    for (const auto& part : parts.entries) {
        if (part.value) fail(msg::bad_dimension(text));
        dims.push_back(parse_dimension(part.key));
    }
    if (dims.size() == 1) return {dims[0], dims[0]};
    if (dims.size() == 2) return {dims[0], dims[1]};
    fail(msg::bad_dimension(text));
}

}  // namespace

bool is_legacy_option(const std::string& key) { return legacy_table().count(key) != 0; }

OptionList map_legacy(const std::string& key) {
    auto it = legacy_table().find(key);
    if (it == legacy_table().end())
        fail({Severity::Error, "not-legacy", "Undefined option `" + key + "'."});
    return parse_option_list(it->second);
}

SettingsStore::Scope& SettingsStore::type_scope(const std::string& name) {
    auto it = type_scopes_.find(name);
    if (it == type_scopes_.end()) {
        it = type_scopes_.emplace(name, Scope{}).first;
        type_scope_order_.push_back(name);
    }
    return it->second;
}

bool SettingsStore::type_declared(const std::string& name) const {
    if (type_exists_) return type_exists_(name);
    return name == "figure" || name == "table";
}

bool SettingsStore::known_key(const std::string& key) const {
    static const std::array<std::string_view, 36> fixed = {
        "format",     "labelformat", "labelsep",   "textformat", "justification",
        "font",       "font+",       "labelfont",  "labelfont+", "textfont",
        "textfont+",  "margin",      "margin*",    "width",      "minmargin",
        "maxmargin",  "indention",   "hangindent", "parindent",  "parskip",
        "skip",       "belowskip",   "position",   "singlelinecheck",
        "list",       "listformat",  "strut",      "oneside",    "twoside",
        "name",       "type",        "type*",      "compatibility",
        "hypcap",     "hypcapspace", "subtype",
    };
    if (std::find(fixed.begin(), fixed.end(), key) != fixed.end()) return true;
    if (key == "FPlist" || key == "FPref") return true;

    // <type>name / list<type>name / <type>within for declared float types
    auto ends_with = [&key](std::string_view suffix) {
        return key.size() > suffix.size() &&
               key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with("name")) {
        std::string t = key.substr(0, key.size() - 4);
        if (t.rfind("list", 0) == 0 && type_declared(t.substr(4))) return true;
        if (type_declared(t)) return true;
    }
    if (ends_with("within") && type_declared(key.substr(0, key.size() - 6))) return true;
    return false;
}

void SettingsStore::validate_value(const OptionEntry& entry) const {
    const std::string& key = entry.key;
    const std::string value = value_or_empty(entry);

    if (key == "format") { regs_->format(value); return; }
    if (key == "labelformat") { regs_->label_format(value); return; }
    if (key == "labelsep") { regs_->separator(value); return; }
    if (key == "textformat") { regs_->text_format(value); return; }
    if (key == "justification") { regs_->justification(value); return; }
    if (key == "listformat") { regs_->list_format(value); return; }
    if (key == "font" || key == "font+" || key == "labelfont" || key == "labelfont+" ||
        key == "textfont" || key == "textfont+") {
        regs_->font_ops_from_options(value_as_option_list(entry.value));
        return;
    }
    if (key == "margin" || key == "margin*") { parse_margin_pair(entry); return; }
    if (key == "minmargin" || key == "maxmargin") {
        if (!is_false_literal(value)) parse_dimension(value);
        return;
    }
    if (dimension_key(key)) { parse_dimension(value); return; }
    if (key == "position") { parse_position(value); return; }
    if (bool_key(key)) { parse_bool(value); return; }
    if (key == "type" || key == "type*") {
        if (!type_declared(value)) fail(msg::no_float_type(value));
        return;
    }
    // names, within targets and the interop keys take free-form values
}

void SettingsStore::process_entry(OptionList& target, const OptionEntry& raw,
                                  DiagnosticList& diags) {
    try {
        OptionEntry entry = raw;

        if (entry.key == "labelseparator") entry.key = "labelsep";
        if (entry.key == "aboveskip") entry.key = "skip";

        if (entry.key == "figureposition" || entry.key == "tableposition") {
            parse_position(value_or_empty(entry));
            Scope& scope = type_scope(entry.key == "figureposition" ? "figure" : "table");
            scope.options.add("position", entry.value);
            scope.warn_unused = true;
            return;
        }
        if (entry.key == "options") {
            process_into(target, value_as_option_list(entry.value), diags);
            return;
        }
        if (entry.key == "style") {
            const StyleEntry& style = regs_->style(value_or_empty(entry));
            process_into(target, parse_option_list(kStyleResetOptions), diags);
            process_into(target, style.options, diags);
            OptionList singleline;
            process_into(singleline, style.singleline_options, diags);
            target.add("@singleline", serialize(singleline));
            return;
        }
        if (known_key(entry.key)) {
            validate_value(entry);
            target.entries.push_back(std::move(entry));
            return;
        }
        if (!entry.value && is_legacy_option(entry.key)) {
            process_into(target, map_legacy(entry.key), diags);
            return;
        }
        if (regs_->custom_options.count(entry.key)) {
            target.entries.push_back(std::move(entry));
            return;
        }
        fail(msg::undefined_option(entry.key));
    } catch (const CaptionError& e) {
        diags.push_back(e.diag());
    }
}

void SettingsStore::process_into(OptionList& target, const OptionList& raw,
                                 DiagnosticList& diags) {
    for (const auto& entry : raw.entries) process_entry(target, entry, diags);
}

void SettingsStore::setup(ScopeLevel level, const std::string& type_name,
                          const OptionList& raw, bool starred, DiagnosticList& diags) {
    Scope* scope = nullptr;
    switch (level) {
        case ScopeLevel::Package: scope = &package_; break;
        case ScopeLevel::Global: scope = &global_; break;
        case ScopeLevel::Type: scope = &type_scope(type_name); break;
        case ScopeLevel::Local: return;  // local lists are owned by the document
    }
    process_into(scope->options, raw, diags);
    if (level == ScopeLevel::Type && !starred) scope->warn_unused = true;
}

void SettingsStore::clear_setup(const std::string& list_name,
                                const std::vector<std::string>& keys, bool starred,
                                DiagnosticList& diags) {
    Scope* scope = nullptr;
    if (list_name == "package") scope = &package_;
    else if (list_name == "global") scope = &global_;
    else {
        auto it = type_scopes_.find(list_name);
        if (it != type_scopes_.end()) scope = &it->second;
    }
    if (!scope) {
        if (!starred) diags.push_back(msg::option_list_undefined(list_name));
        return;
    }
    if (keys.empty()) {
        scope->options.entries.clear();
        return;
    }
    for (const auto& key : keys) {
        auto& entries = scope->options.entries;
        std::size_t before = entries.size();
        entries.erase(std::remove_if(entries.begin(), entries.end(),
                                     [&key](const OptionEntry& e) { return e.key == key; }),
                      entries.end());
        if (entries.size() == before && !starred)
            diags.push_back(msg::option_not_in_list(key, list_name));
    }
}

void SettingsStore::apply_entry(CaptionSettings& s, const OptionEntry& entry) const {
    const std::string& key = entry.key;
    const std::string value = value_or_empty(entry);

    if (key == "format") { s.format = value; return; }
    if (key == "labelformat") { s.labelformat = value; return; }
    if (key == "labelsep") { s.labelsep = value; return; }
    if (key == "textformat") { s.textformat = value; return; }
    if (key == "justification") { s.justification = value; return; }
    if (key == "listformat") { s.listformat = value; return; }

    if (key == "font" || key == "labelfont" || key == "textfont" || key == "font+" ||
        key == "labelfont+" || key == "textfont+") {
        bool additive = key.back() == '+';
        std::string base = additive ? key.substr(0, key.size() - 1) : key;
        FontSpec* spec = base == "font" ? &s.font
                       : base == "labelfont" ? &s.labelfont
                                             : &s.textfont;
        if (!additive) *spec = FontSpec{};
        apply_font_ops(*spec, regs_->font_ops_from_options(value_as_option_list(entry.value)));
        return;
    }

    if (key == "margin") {
        auto [left, right] = parse_margin_pair(entry);
        s.margin_left = left;
        s.margin_right = right;
        s.width.reset();
        return;
    }
    if (key == "margin*") {
        if (!s.width) {
            auto [left, right] = parse_margin_pair(entry);
            s.margin_left = left;
            s.margin_right = right;
        }
        return;
    }
    if (key == "width") { s.width = parse_dimension(value); return; }
    if (key == "minmargin" || key == "maxmargin") {
        auto& slot = key == "minmargin" ? s.minmargin : s.maxmargin;
        if (is_false_literal(value)) slot.reset();
        else slot = parse_dimension(value);
        return;
    }
    if (key == "indention") { s.indention = parse_dimension(value); return; }
    if (key == "hangindent") { s.hangindent = parse_dimension(value); return; }
    if (key == "parindent") { s.parindent = parse_dimension(value); return; }
    if (key == "parskip") { s.parskip = parse_dimension(value); return; }
    if (key == "skip") { s.skip = parse_dimension(value); return; }
    if (key == "belowskip") { s.belowskip = parse_dimension(value); return; }
    if (key == "position") { s.position = parse_position(value); return; }
    if (key == "singlelinecheck") { s.singlelinecheck = parse_bool(value); return; }
    if (key == "list") { s.list = parse_bool(value); return; }
    if (key == "oneside") { s.sidedness = Sidedness::OneSide; return; }
    if (key == "twoside") { s.sidedness = Sidedness::TwoSide; return; }
    if (key == "name") { s.name_override = value; return; }
    if (key == "type" || key == "type*") { s.type_override = value; return; }
    if (key == "@singleline") { s.singleline_options = parse_option_list(value); return; }
    if (key == "strut") { s.strut = parse_bool(value); return; }

    if (inert_key(key)) return;

    auto ends_with = [&key](std::string_view suffix) {
        return key.size() > suffix.size() &&
               key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with("name")) {
        std::string t = key.substr(0, key.size() - 4);
        if (t.rfind("list", 0) == 0 && type_declared(t.substr(4))) {
            s.list_names[t.substr(4)] = value;
            return;
        }
        if (type_declared(t)) {
            s.names[t] = value;
            return;
        }
    }
    if (ends_with("within")) return;  // counter wiring reads the scopes directly

    if (regs_->custom_options.count(key)) {
        s.vars[key] = value;
        return;
    }
    // entries are validated when stored, so nothing should reach this point
}

void SettingsStore::apply_options(CaptionSettings& s, const OptionList& opts) const {
    for (const auto& entry : opts.entries) apply_entry(s, entry);
}

CaptionSettings SettingsStore::resolve(const std::string& float_type,
                                       const OptionList& local, const ResolveContext& ctx) {
    CaptionSettings s;
    s.sidedness = ctx.sidedness;
    s.singleline_options = parse_option_list(kDefaultSinglelineOptions);

    apply_options(s, package_.options);
    apply_options(s, global_.options);
    auto it = type_scopes_.find(float_type);
    if (it != type_scopes_.end()) {
        apply_options(s, it->second.options);
        it->second.consumed = true;
    }
    apply_options(s, local);

    if (s.sidedness == Sidedness::TwoSide && ctx.page % 2 == 0)
        std::swap(s.margin_left, s.margin_right);

    // absolute-valued bounds clamp here; relative ones clamp in cell space
    auto clamp_margin = [&s](Dimension& m) {
        if (m.relative) return;
        if (s.maxmargin && !s.maxmargin->relative)
            m.points = std::min(m.points, s.maxmargin->points);
        if (s.minmargin && !s.minmargin->relative)
            m.points = std::max(m.points, s.minmargin->points);
    };
    clamp_margin(s.margin_left);
    clamp_margin(s.margin_right);
    return s;
}

std::optional<std::string> SettingsStore::within_override(const std::string& float_type) const {
    const std::string key = float_type + "within";
    std::optional<std::string> found;
    for (const Scope* scope : {&package_, &global_}) {
        for (const auto& entry : scope->options.entries)
            if (entry.key == key) found = entry.value.value_or("");
    }
    if (found && *found == "none") return std::string();
    return found;
}

std::optional<std::string> SettingsStore::pending_type(const OptionList& local) const {
    std::optional<std::string> found;
    for (const OptionList* opts : {&package_.options, &global_.options, &local}) {
        for (const auto& entry : opts->entries)
            if (entry.key == "type" || entry.key == "type*") found = entry.value.value_or("");
    }
    return found;
}

std::string SettingsStore::show_setup(const std::string& list_name,
                                      DiagnosticList& diags) const {
    const Scope* scope = nullptr;
    if (list_name == "package") scope = &package_;
    else if (list_name == "global" || list_name.empty()) scope = &global_;
    else {
        auto it = type_scopes_.find(list_name);
        if (it != type_scopes_.end()) scope = &it->second;
    }
    if (!scope) {
        diags.push_back(msg::option_list_undefined(list_name));
        return {};
    }
    std::string shown = list_name.empty() ? "global" : list_name;
    return "Option list `" + shown + "' = {" + serialize(scope->options) + "}";
}

DiagnosticList SettingsStore::unused_setups() const {
    DiagnosticList diags;
    for (const auto& name : type_scope_order_) {
        const Scope& scope = type_scopes_.at(name);
        if (scope.warn_unused && !scope.consumed)
            diags.push_back(msg::unused_captionsetup(name));
    }
    return diags;
}

CaptionSettings SettingsStore::with_singleline_overrides(CaptionSettings s) const {
    apply_options(s, s.singleline_options);
    return s;
}

}  // namespace captionkit

#include "captionkit/document.hpp"

#include <cctype>

#include "captionkit/diagnostics.hpp"

namespace captionkit {

namespace {

std::string capitalized(const std::string& name) {
    std::string out = name;
    if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

}  // namespace

DocumentSession::DocumentSession() : regs_(builtin_registries()), store_(regs_) {
    store_.set_type_checker([this](const std::string& name) { return type_declared(name); });
    declare_type("figure", "Figure", "List of Figures", "");
    declare_type("table", "Table", "List of Tables", "");
}

const FloatType& DocumentSession::float_type(const std::string& name) const {
    auto it = float_types_.find(name);
    if (it == float_types_.end()) fail(msg::no_float_type(name));
    return it->second;
}

void DocumentSession::declare_type(const std::string& name, const std::string& display_name,
                                   const std::string& list_heading, const std::string& within) {
    FloatType ft;
    ft.name = name;
    ft.display_name = display_name.empty() ? capitalized(name) : display_name;
    ft.list_heading = list_heading.empty() ? "List of " + ft.display_name + "s" : list_heading;
    ft.within = within == "none" ? std::string() : within;
    float_types_[name] = std::move(ft);
}

void DocumentSession::begin_float(const std::string& type) {
    if (open_)
        fail({Severity::Error, "nested-float",
              "Nested float `" + type + "' inside `" + open_->type + "'."});
    float_type(type);  // must be declared
    open_ = OpenFloat{};
    open_->type = type;
}

void DocumentSession::mark_content() {
    if (open_) open_->content_seen = true;
}

void DocumentSession::end_float() {
    if (!open_) fail({Severity::Error, "no-open-float", "No float environment is open."});
    last_closed_type_ = open_->type;
    open_.reset();
}

void DocumentSession::local_setup(const OptionList& opts, DiagnosticList& diags) {
    if (!open_) {
        store_.setup(ScopeLevel::Global, "", opts, false, diags);
        return;
    }
    store_.process_into(open_->local_options, opts, diags);
}

void DocumentSession::continued_float() {
    if (!open_) fail(msg::continued_outside_float());
    if (!last_closed_type_.empty() && last_closed_type_ != open_->type)
        fail(msg::continued_after_other(open_->type, last_closed_type_));
    open_->continued = true;
}

std::string DocumentSession::effective_within(const std::string& type) const {
    if (auto override = store_.within_override(type)) return *override;
    return float_type(type).within;
}

std::string DocumentSession::format_number(const std::string& type) const {
    const FloatType& ft = float_type(type);
    const std::string within = effective_within(type);
    std::string out;
    if (!within.empty()) out = std::to_string(counter_value(within)) + ".";
    out += std::to_string(ft.counter);
    return out;
}

std::string DocumentSession::step_float_counter(const std::string& type) {
    float_types_.at(type).counter += 1;
    return format_number(type);
}

void DocumentSession::step_counter(const std::string& name) {
    counters_[name] += 1;
    for (auto& [type_name, ft] : float_types_)
        if (effective_within(type_name) == name) ft.counter = 0;
}

int DocumentSession::counter_value(const std::string& name) const {
    auto it = counters_.find(name);
    return it == counters_.end() ? 0 : it->second;
}

VarEnv DocumentSession::number_vars() const {
    VarEnv vars;
    for (const auto& [name, ft] : float_types_) {
        vars[name + "name"] = ft.display_name;
        vars["the" + name] = format_number(name);
    }
    return vars;
}

CaptionResult DocumentSession::render_caption(const std::string& type,
                                              const CaptionRequest& req,
                                              const OptionList& extra_local,
                                              DiagnosticList& diags) {
    OptionList local;
    if (open_) local = open_->local_options;
    local.append(extra_local);

    ResolveContext ctx;
    ctx.page = page_;
    CaptionSettings settings = store_.resolve(type, local, ctx);

    // numbering
    std::string number;
    if (!req.starred) {
        if (open_ && open_->type == type) {
            if (open_->numbered_captions > 0) {
                number = open_->number;
            } else if (open_->continued) {
                number = format_number(type);  // reuse, no increment
                open_->number = number;
            } else {
                number = step_float_counter(type);
                open_->number = number;
            }
            open_->numbered_captions += 1;
        } else {
            number = step_float_counter(type);
        }
    }

    // list entry
    if (!req.starred) {
        bool suppressed = !settings.list;
        std::string entry_text;
        if (req.list_entry) {
            if (req.list_entry->empty()) suppressed = true;
            entry_text = *req.list_entry;
        } else {
            if (req.heading_paragraphs.size() > 1) {
                diags.push_back(msg::paragraph_before_caption_complete());
                suppressed = true;
            }
            entry_text = req.heading_paragraphs.empty() ? std::string()
                                                        : req.heading_paragraphs.front();
        }
        float_types_.at(type).list_entries.push_back({number, entry_text, suppressed});
    }

    // display name: local name= wins over <type>name= scopes, then the
    // declared name
    std::string display = float_type(type).display_name;
    if (auto it = settings.names.find(type); it != settings.names.end()) display = it->second;
    if (settings.name_override) display = *settings.name_override;

    if (req.starred) settings.labelformat = "empty";

    VarEnv vars = number_vars();
    for (const auto& [key, value] : settings.vars) vars[key] = value;

    ComposedCaption composed =
        compose(regs_, settings, display, number, req.heading_paragraphs, vars);

    bool single = single_line_check(composed, settings, metrics_);
    CaptionSettings active = single ? store_.with_singleline_overrides(settings) : settings;

    bool at_top = false;
    switch (active.position) {
        case Position::Top: at_top = true; break;
        case Position::Bottom: at_top = false; break;
        case Position::Auto:
            at_top = open_ && !open_->content_seen;
            break;
    }

    CaptionResult result;
    result.box = layout_caption(regs_, composed, active, metrics_, at_top, single);
    result.settings = active;
    result.produced = true;
    return result;
}

CaptionResult DocumentSession::caption(const CaptionRequest& req, DiagnosticList& diags) {
    std::string type;
    if (open_) {
        type = open_->type;
    } else {
        auto pending = store_.pending_type(OptionList{});
        if (!pending) fail(msg::caption_outside_float());
        type = *pending;
    }
    return render_caption(type, req, OptionList{}, diags);
}

CaptionResult DocumentSession::caption_of(const std::string& type, const CaptionRequest& req,
                                          DiagnosticList& diags) {
    if (!type_declared(type)) fail(msg::no_float_type(type));
    OptionList one_shot;
    one_shot.add("type", type);
    return render_caption(type, req, one_shot, diags);
}

std::string DocumentSession::caption_list_entry(const std::string& type,
                                                const std::string& text,
                                                DiagnosticList& diags) {
    if (!type_declared(type)) fail(msg::no_float_type(type));
    std::string number = step_float_counter(type);

    OptionList local;
    if (open_) local = open_->local_options;
    ResolveContext ctx;
    ctx.page = page_;
    CaptionSettings settings = store_.resolve(type, local, ctx);
    (void)diags;

    float_types_.at(type).list_entries.push_back({number, text, !settings.list});
    return number;
}

std::vector<std::string> DocumentSession::list_of(const std::string& type,
                                                  DiagnosticList& diags) {
    if (!type_declared(type)) fail(msg::no_float_type(type));
    ResolveContext ctx;
    ctx.page = page_;
    CaptionSettings settings = store_.resolve(type, OptionList{}, ctx);
    (void)diags;

    const FloatType& ft = float_type(type);
    std::string heading = ft.list_heading;
    if (auto it = settings.list_names.find(type); it != settings.list_names.end())
        heading = it->second;

    std::vector<std::string> lines;
    lines.push_back(heading);

    const ListFormatEntry& lf = regs_.list_format(settings.listformat);
    VarEnv vars = number_vars();
    for (const auto& entry : ft.list_entries) {
        if (entry.suppressed) continue;
        std::vector<StyledStream> args = {{StyledItem::make_text("")},
                                          {StyledItem::make_text(entry.number)}};
        StyledStream rendered = eval_template(lf.tpl, args, vars, FontSpec{});
        lines.push_back(stream_text(rendered) + "  " + entry.text);
    }
    return lines;
}

DiagnosticList DocumentSession::finish() { return store_.unused_setups(); }

}  // namespace captionkit

// settings.hpp - option scopes and their composition into caption settings
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "captionkit/diagnostics.hpp"
#include "captionkit/dimension.hpp"
#include "captionkit/fontspec.hpp"
#include "captionkit/options.hpp"
#include "captionkit/registry.hpp"
#include "captionkit/template.hpp"

namespace captionkit {

enum class Position { Top, Bottom, Auto };
enum class Sidedness { OneSide, TwoSide };

// Everything a single caption layout depends on, fully composed.
struct CaptionSettings {
    std::string format = "plain";
    std::string labelformat = "simple";
    std::string labelsep = "colon";
    std::string textformat = "simple";
    std::string justification = "justified";
    FontSpec font, labelfont, textfont;

    Dimension margin_left, margin_right;
    std::optional<Dimension> width;  // set => margins derive from it, both equal
    std::optional<Dimension> minmargin, maxmargin;

    Dimension indention, hangindent, parindent, parskip;
    Dimension skip = Dimension::pt(10.0);
    Dimension belowskip;  // second skip; swaps sides with `skip` under position=top
    Position position = Position::Auto;

    bool singlelinecheck = true;
    bool list = true;
    std::string listformat = "subsimple";
    bool strut = true;  // stored only; the grid has uniform line height
    Sidedness sidedness = Sidedness::OneSide;

    std::map<std::string, std::string> names;       // display-name overrides per type
    std::map<std::string, std::string> list_names;  // list-heading overrides per type
    std::optional<std::string> name_override;       // `name=` for this resolution
    std::optional<std::string> type_override;       // `type=` / `type*=`

    OptionList singleline_options;  // the active style's single-line list
    VarEnv vars;                    // custom-option bindings

    bool operator==(const CaptionSettings&) const = default;
};

struct ResolveContext {
    int page = 1;
    Sidedness sidedness = Sidedness::OneSide;
};

enum class ScopeLevel { Package, Global, Type, Local };

// Legacy option rows (caption v1.x and the caption2 emulation). Throws
// CaptionError when the key has no legacy meaning.
bool is_legacy_option(const std::string& key);
OptionList map_legacy(const std::string& key);

class SettingsStore {
public:
    explicit SettingsStore(Registries& regs) : regs_(&regs) {}

    // Used to validate `type=` values eagerly; wired by the document session.
    void set_type_checker(std::function<bool(const std::string&)> fn) {
        type_exists_ = std::move(fn);
    }

    // Appends to the package / global / named type scope. Alias rewriting,
    // legacy mapping, style expansion and value validation all happen here;
    // invalid entries are reported and dropped.
    void setup(ScopeLevel level, const std::string& type_name, const OptionList& raw,
               bool starred, DiagnosticList& diags);

    // Local options live with the open float; the document owns the list and
    // routes it through the same preprocessing.
    void process_into(OptionList& target, const OptionList& raw, DiagnosticList& diags);

    // Removes keys (or everything, when `keys` is empty) from a named option
    // list. Missing keys and missing lists warn unless starred.
    void clear_setup(const std::string& list_name, const std::vector<std::string>& keys,
                     bool starred, DiagnosticList& diags);

    CaptionSettings resolve(const std::string& float_type, const OptionList& local,
                            const ResolveContext& ctx);

    // Last `<type>within=` assignment in the package/global scopes, if any.
    // "none" reads as an empty counter name.
    std::optional<std::string> within_override(const std::string& float_type) const;

    // Last `type=`/`type*=` assignment visible without an open float.
    std::optional<std::string> pending_type(const OptionList& local) const;

    std::string show_setup(const std::string& list_name, DiagnosticList& diags) const;
    DiagnosticList unused_setups() const;

    // Re-applies the active style's single-line option list on top of
    // already-resolved settings; explicit caption options do not win here.
    CaptionSettings with_singleline_overrides(CaptionSettings s) const;

    const Registries& registries() const { return *regs_; }

private:
    struct Scope {
        OptionList options;
        bool consumed = false;
        bool warn_unused = false;
    };

    Registries* regs_;
    std::function<bool(const std::string&)> type_exists_;
    Scope package_;
    Scope global_;
    std::map<std::string, Scope> type_scopes_;
    std::vector<std::string> type_scope_order_;

    Scope& type_scope(const std::string& name);
    bool known_key(const std::string& key) const;
    bool type_declared(const std::string& name) const;
    void process_entry(OptionList& target, const OptionEntry& entry, DiagnosticList& diags);
    void validate_value(const OptionEntry& entry) const;
    void apply_entry(CaptionSettings& s, const OptionEntry& entry) const;
    void apply_options(CaptionSettings& s, const OptionList& opts) const;
};

}  // namespace captionkit

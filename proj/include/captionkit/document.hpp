// document.hpp - float types, counters, the caption commands and float lists
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "captionkit/layout.hpp"
#include "captionkit/metrics.hpp"
#include "captionkit/registry.hpp"
#include "captionkit/settings.hpp"

namespace captionkit {

struct ListEntry {
    std::string number;
    std::string text;
    bool suppressed = false;
};

struct FloatType {
    std::string name;
    std::string display_name;   // "Figure"
    std::string list_heading;   // "List of Figures"
    std::string within;         // parent counter name, "" = free running
    int counter = 0;
    std::vector<ListEntry> list_entries;
};

struct CaptionRequest {
    std::string type;
    std::vector<std::string> heading_paragraphs;
    std::optional<std::string> list_entry;  // absent | "" (suppress) | text
    bool starred = false;
};

struct CaptionResult {
    LayoutBox box;
    CaptionSettings settings;  // as used for the layout, after overrides
    bool produced = false;
};

// One document session: counters, the open float, and the settings store.
// Single-threaded by contract.
class DocumentSession {
public:
    DocumentSession();

    Registries& registries() { return regs_; }
    const Registries& registries() const { return regs_; }
    SettingsStore& settings() { return store_; }
    CellMetrics& metrics() { return metrics_; }
    const CellMetrics& metrics() const { return metrics_; }

    void set_page(int page) { page_ = page; }
    int page() const { return page_; }

    bool type_declared(const std::string& name) const { return float_types_.count(name) != 0; }
    const FloatType& float_type(const std::string& name) const;

    // Missing display name capitalises the type; missing list heading reads
    // "List of <Name>s". Redeclaring zeroes the counter.
    void declare_type(const std::string& name, const std::string& display_name,
                      const std::string& list_heading, const std::string& within);

    void begin_float(const std::string& type);
    void mark_content();
    void end_float();
    bool float_open() const { return open_.has_value(); }
    std::string open_float_type() const { return open_ ? open_->type : std::string(); }

    // Local options for the open float (a \captionsetup inside the
    // environment); routed through the store's preprocessing.
    void local_setup(const OptionList& opts, DiagnosticList& diags);

    void continued_float();

    CaptionResult caption(const CaptionRequest& req, DiagnosticList& diags);
    CaptionResult caption_of(const std::string& type, const CaptionRequest& req,
                             DiagnosticList& diags);

    // Steps the counter and records the entry without rendering anything.
    std::string caption_list_entry(const std::string& type, const std::string& text,
                                   DiagnosticList& diags);

    void step_counter(const std::string& name);
    int counter_value(const std::string& name) const;

    std::vector<std::string> list_of(const std::string& type, DiagnosticList& diags);

    DiagnosticList finish();  // unused-setup warnings

    // Numbering is "<within value>.<counter>"; a single function so other
    // schemes can slot in.
    std::string format_number(const std::string& type) const;

private:
    struct OpenFloat {
        std::string type;
        bool continued = false;
        bool content_seen = false;
        int numbered_captions = 0;
        std::string number;  // frozen by the first numbered caption
        OptionList local_options;
    };

    Registries regs_;
    SettingsStore store_;
    CellMetrics metrics_;
    std::map<std::string, FloatType> float_types_;
    std::map<std::string, int> counters_;
    std::optional<OpenFloat> open_;
    std::string last_closed_type_;
    int page_ = 1;

    std::string effective_within(const std::string& type) const;
    std::string step_float_counter(const std::string& type);
    VarEnv number_vars() const;
    CaptionResult render_caption(const std::string& type, const CaptionRequest& req,
                                 const OptionList& extra_local, DiagnosticList& diags);
};

}  // namespace captionkit

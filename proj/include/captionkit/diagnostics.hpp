// diagnostics.hpp - diagnostic records and the exact message catalog
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace captionkit {

enum class Severity { Warning, Error };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;     // stable identifier, e.g. "undefined-style"
    std::string message;  // exact catalog text, placeholders substituted
};

using DiagnosticList = std::vector<Diagnostic>;

// Thrown by engine operations; the scenario runner converts it into a
// diagnostic and keeps going.
class CaptionError : public std::runtime_error {
public:
    explicit CaptionError(Diagnostic d)
        : std::runtime_error(d.message), diag_(std::move(d)) {}
    const Diagnostic& diag() const { return diag_; }

private:
    Diagnostic diag_;
};

// Message builders. The texts are user-visible contract; golden tests
// compare them byte for byte, so edit with care.
namespace msg {

// warnings
Diagnostic option_not_in_list(std::string_view option, std::string_view list);
Diagnostic option_list_undefined(std::string_view list);
Diagnostic unused_captionsetup(std::string_view type);

// errors
Diagnostic caption_outside_float();
Diagnostic continued_outside_float();
Diagnostic continued_after_other(std::string_view type, std::string_view prev);
Diagnostic no_float_type(std::string_view type);
Diagnostic labelsep_vs_hang(std::string_view labelsep);
Diagnostic undefined_boolean(std::string_view value);
Diagnostic undefined_format(std::string_view name);
Diagnostic undefined_label_format(std::string_view name);
Diagnostic undefined_label_separator(std::string_view name);
Diagnostic undefined_list_format(std::string_view name);
Diagnostic undefined_position(std::string_view name);
Diagnostic undefined_style(std::string_view name);
Diagnostic undefined_text_format(std::string_view name);
Diagnostic undefined_justification(std::string_view name);
Diagnostic undefined_font(std::string_view name);
Diagnostic undefined_option(std::string_view key);
Diagnostic paragraph_before_caption_complete();
Diagnostic unbound_variable(std::string_view name);
Diagnostic word_too_wide(std::string_view word);
Diagnostic bad_dimension(std::string_view text);

}  // namespace msg

[[noreturn]] inline void fail(Diagnostic d) { throw CaptionError(std::move(d)); }

}  // namespace captionkit

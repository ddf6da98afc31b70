#include "captionkit/diagnostics.hpp"

namespace captionkit::msg {

namespace {

std::string cat(std::initializer_list<std::string_view> parts) {
    std::string out;
    for (auto p : parts) out += p;
    return out;
}

Diagnostic warn(std::string code, std::string message) {
    return {Severity::Warning, std::move(code), std::move(message)};
}

Diagnostic err(std::string code, std::string message) {
    return {Severity::Error, std::move(code), std::move(message)};
}

}  // namespace

Diagnostic option_not_in_list(std::string_view option, std::string_view list) {
    return warn("option-not-in-list",
                cat({"Option `", option, "' was not in list `", list, "'."}));
}

Diagnostic option_list_undefined(std::string_view list) {
    return warn("option-list-undefined",
                cat({"Option list `", list, "' undefined."}));
}

Diagnostic unused_captionsetup(std::string_view type) {
    return warn("unused-captionsetup",
                cat({"Unused \\captionsetup[", type, "]."}));
}

Diagnostic caption_outside_float() {
    return err("caption-outside-float", "\\caption outside float.");
}

Diagnostic continued_outside_float() {
    return err("continuedfloat-outside-float", "\\ContinuedFloat outside float.");
}

Diagnostic continued_after_other(std::string_view type, std::string_view prev) {
    return err("continued-after-other",
               cat({"Continued `", type, "' after `", prev, "'."}));
}

Diagnostic no_float_type(std::string_view type) {
    return err("no-float-type", cat({"No float type '", type, "' defined."}));
}

Diagnostic labelsep_vs_hang(std::string_view labelsep) {
    return err("labelsep-vs-hang",
               cat({"The option `labelsep=", labelsep,
                    "' does not work with `format=hang'."}));
}

Diagnostic undefined_boolean(std::string_view value) {
    return err("undefined-boolean",
               cat({"Undefined boolean value `", value, "'."}));
}

Diagnostic undefined_format(std::string_view name) {
    return err("undefined-format", cat({"Undefined format `", name, "'."}));
}

Diagnostic undefined_label_format(std::string_view name) {
    return err("undefined-label-format",
               cat({"Undefined label format `", name, "'."}));
}

Diagnostic undefined_label_separator(std::string_view name) {
    return err("undefined-label-separator",
               cat({"Undefined label separator `", name, "'."}));
}

Diagnostic undefined_list_format(std::string_view name) {
    return err("undefined-list-format",
               cat({"Undefined list format `", name, "'."}));
}

Diagnostic undefined_position(std::string_view name) {
    return err("undefined-position", cat({"Undefined position `", name, "'."}));
}

Diagnostic undefined_style(std::string_view name) {
    return err("undefined-style", cat({"Undefined style `", name, "'."}));
}

Diagnostic undefined_text_format(std::string_view name) {
    return err("undefined-text-format",
               cat({"Undefined text format `", name, "'."}));
}

Diagnostic undefined_justification(std::string_view name) {
    return err("undefined-justification",
               cat({"Undefined justification `", name, "'."}));
}

Diagnostic undefined_font(std::string_view name) {
    return err("undefined-font", cat({"Undefined font `", name, "'."}));
}

Diagnostic undefined_option(std::string_view key) {
    return err("undefined-option", cat({"Undefined option `", key, "'."}));
}

Diagnostic paragraph_before_caption_complete() {
    return err("paragraph-before-caption-complete",
               "Paragraph ended before \\@caption was complete.");
}

Diagnostic unbound_variable(std::string_view name) {
    return err("unbound-variable",
               cat({"Undefined variable `", name, "'."}));
}

Diagnostic word_too_wide(std::string_view word) {
    return err("word-too-wide",
               cat({"Word `", word, "' is wider than the usable line width."}));
}

Diagnostic bad_dimension(std::string_view text) {
    return err("bad-dimension", cat({"Bad dimension `", text, "'."}));
}

}  // namespace captionkit::msg

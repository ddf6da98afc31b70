// template.hpp - the closed template language behind the declare commands
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "captionkit/dimension.hpp"
#include "captionkit/fontspec.hpp"

namespace captionkit {

// Token set: literals, #1..#3 parameters, forced breaks, fill glue, fixed
// spaces, left-overlapped and fixed-width boxes, variable references, font
// spans and the two emptiness-tested pairs. Anything else is rejected when
// the template is declared.
struct TemplateToken {
    enum class Kind {
        Literal,
        Param,
        LineBreak,  // "\\"
        ParBreak,   // \par
        Fill,       // \hfill
        HSpace,     // \hspace{...}, \hspace*{...}, \hspace\var, \quad
        Llap,       // \llap{...}
        MakeBox,    // \makebox[width][align]{...}
        Var,        // \name -> looked up in the variable environment
        FontSpan,   // \textbf{...} and friends; annotation only
        BothIf,     // \bothIfFirst / \bothIfSecond
    };

    Kind kind;
    std::string text;      // Literal text | Var name | FontSpan font name | HSpace var
    int param = 0;         // Param index, 1-based
    Dimension dim;         // HSpace amount, MakeBox width
    std::string src_form;  // original spelling when it matters ("\\quad", "\\hspace*")
    char align = 'l';      // MakeBox alignment: l|r|c
    bool test_second = false;  // BothIf: test the second argument instead
    std::vector<TemplateToken> inner;
    std::vector<TemplateToken> inner2;  // BothIf only

    bool operator==(const TemplateToken&) const = default;
};

struct Template {
    std::vector<TemplateToken> tokens;
    int max_param = 0;

    bool operator==(const Template&) const = default;
};

class TemplateParseError : public std::runtime_error {
public:
    TemplateParseError(const std::string& what, std::string offender)
        : std::runtime_error(what), offender_(std::move(offender)) {}
    const std::string& offender() const { return offender_; }

private:
    std::string offender_;
};

Template parse_template(std::string_view src);

// Renders tokens back to declaration syntax; parse(template_source(t)) == t.
std::string template_source(const Template& tpl);

// ---------------------------------------------------------------------------
// Evaluated form: what layout consumes. Fill and box tokens survive as
// markers; fonts ride along on text items and never affect widths.

struct StyledItem {
    enum class Kind { Text, LineBreak, ParBreak, Fill, HSpace, Llap, MakeBox };

    Kind kind;
    std::string text;  // Text (UTF-8; may contain non-breaking spaces)
    FontSpec font;     // Text
    Dimension dim;     // HSpace amount, MakeBox width
    char align = 'l';  // MakeBox
    std::vector<StyledItem> inner;  // Llap, MakeBox contents

    static StyledItem make_text(std::string t, FontSpec f = {}) {
        StyledItem it;
        it.kind = Kind::Text;
        it.text = std::move(t);
        it.font = std::move(f);
        return it;
    }
};

using StyledStream = std::vector<StyledItem>;

// Visible emptiness, the test behind \bothIfFirst/\bothIfSecond and the
// separator suppression rule.
bool stream_empty(const StyledStream& s);

// Total advance in cells assuming no line breaks; llap contributes nothing.
int stream_width(const StyledStream& s, int cells_per_line);

// All text of a stream as one string (markers skipped).
std::string stream_text(const StyledStream& s);

// Custom-option variables plus the per-type bindings (<type>name, the<type>).
using VarEnv = std::map<std::string, std::string>;

// Substitutes #n with args[n-1], resolves variables, applies font spans on
// top of the fonts the argument streams already carry. Throws CaptionError
// for unbound variables and malformed dimension-valued variables.
StyledStream eval_template(const Template& tpl, const std::vector<StyledStream>& args,
                           const VarEnv& vars, const FontSpec& literal_font);

}  // namespace captionkit

#include "captionkit/template.hpp"

#include <cctype>

#include "captionkit/diagnostics.hpp"
#include "captionkit/metrics.hpp"
#include "captionkit/text.hpp"

namespace captionkit {

namespace {

const std::map<std::string, FontOp, std::less<>>& span_font_ops() {
    using K = FontOp::Kind;
    static const std::map<std::string, FontOp, std::less<>> table = {
        {"bf", {K::Series, "bf"}}, {"md", {K::Series, "md"}},
        {"it", {K::Shape, "it"}},  {"sl", {K::Shape, "sl"}},
        {"sc", {K::Shape, "sc"}},  {"up", {K::Shape, "up"}},
        {"rm", {K::Family, "rm"}}, {"sf", {K::Family, "sf"}},
        {"tt", {K::Family, "tt"}},
    };
    return table;
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Template parse() {
        Template tpl;
        tpl.tokens = parse_tokens(/*inside_group=*/false);
        if (pos_ < src_.size())
            error("unexpected `}' in template", "}");
        collect_max_param(tpl.tokens, tpl.max_param);
        return tpl;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    [[noreturn]] void error(const std::string& what, std::string offender) {
        throw TemplateParseError(what + " (at byte " + std::to_string(pos_) + ")",
                                 std::move(offender));
    }

    bool eof() const { return pos_ >= src_.size(); }
    char peek() const { return src_[pos_]; }

    std::vector<TemplateToken> parse_tokens(bool inside_group) {
        std::vector<TemplateToken> out;
        std::string literal;
        auto flush = [&] {
            if (literal.empty()) return;
            TemplateToken t;
            t.kind = TemplateToken::Kind::Literal;
            t.text = std::move(literal);
            literal.clear();
            out.push_back(std::move(t));
        };

        while (!eof()) {
            char c = peek();
            if (c == '}') {
                if (!inside_group) break;
                flush();
                return out;
            }
            if (c == '{') error("stray group in template", "{");
            if (c == '#') {
                ++pos_;
                if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
                    error("`#' must be followed by a parameter digit", "#");
                flush();
                TemplateToken t;
                t.kind = TemplateToken::Kind::Param;
                t.param = peek() - '0';
                ++pos_;
                if (t.param < 1) error("parameter index must be positive", "#0");
                out.push_back(std::move(t));
                continue;
            }
            if (c == '~') {
                ++pos_;
                literal += kNoBreakSpace;
                continue;
            }
            if (c == '\\') {
                flush();
                out.push_back(parse_control());
                continue;
            }
            literal += c;
            ++pos_;
        }
        if (inside_group) error("unterminated group", "{");
        flush();
        return out;
    }

    TemplateToken parse_control() {
        ++pos_;  // consume backslash
        if (eof()) error("dangling `\\'", "\\");

        char c = peek();
        if (!std::isalpha(static_cast<unsigned char>(c))) {
            ++pos_;
            TemplateToken t;
            if (c == '\\') {
                t.kind = TemplateToken::Kind::LineBreak;
                return t;
            }
            // escaped specials become literal characters
            if (c == '&' || c == '#' || c == '%' || c == '_' || c == '{' || c == '}') {
                t.kind = TemplateToken::Kind::Literal;
                t.text = std::string(1, c);
                return t;
            }
            error("unsupported control symbol", std::string("\\") + c);
        }

        std::string name;
        while (!eof() && std::isalpha(static_cast<unsigned char>(peek()))) {
            name += peek();
            ++pos_;
        }
        bool starred = !eof() && peek() == '*';
        if (starred) ++pos_;
        skip_spaces();  // control words gobble following spaces
        if (starred && name != "hspace")
            error("unsupported starred command", "\\" + name + "*");

        if (name == "par") return {TemplateToken::Kind::ParBreak};
        if (name == "hfill") return {TemplateToken::Kind::Fill};
        if (name == "quad") {
            TemplateToken t;
            t.kind = TemplateToken::Kind::HSpace;
            t.dim = Dimension::pt(kPtPerEm);
            t.src_form = "\\quad";
            return t;
        }
        if (name == "hspace") return parse_hspace(starred);
        if (name == "llap") {
            TemplateToken t;
            t.kind = TemplateToken::Kind::Llap;
            t.inner = parse_group();
            return t;
        }
        if (name == "makebox") return parse_makebox();
        if (name == "bothIfFirst" || name == "bothIfSecond") {
            TemplateToken t;
            t.kind = TemplateToken::Kind::BothIf;
            t.test_second = (name == "bothIfSecond");
            t.inner = parse_group();
            t.inner2 = parse_group();
            return t;
        }
        if (name.size() == 6 && name.compare(0, 4, "text") == 0) {
            auto span = span_font_ops().find(name.substr(4));
            if (span != span_font_ops().end()) {
                TemplateToken t;
                t.kind = TemplateToken::Kind::FontSpan;
                t.text = name.substr(4);
                t.inner = parse_group();
                return t;
            }
        }

        // anything else reads as a variable reference, resolved at eval time
        TemplateToken t;
        t.kind = TemplateToken::Kind::Var;
        t.text = name;
        return t;
    }

    void skip_spaces() {
        while (!eof() && peek() == ' ') ++pos_;
    }

    std::vector<TemplateToken> parse_group() {
        if (eof() || peek() != '{') error("expected `{'", "{");
        ++pos_;
        auto tokens = parse_tokens(/*inside_group=*/true);
        if (eof() || peek() != '}') error("unterminated group", "}");
        ++pos_;
        return tokens;
    }

    std::string read_balanced_group() {
        if (eof() || peek() != '{') error("expected `{'", "{");
        ++pos_;
        std::string content;
        int depth = 1;
        while (!eof()) {
            char c = peek();
            if (c == '{') ++depth;
            if (c == '}' && --depth == 0) {
                ++pos_;
                return content;
            }
            content += c;
            ++pos_;
        }
        error("unterminated group", "}");
    }

    std::string read_bracket_arg() {
        ++pos_;  // consume '['
        std::string content;
        while (!eof() && peek() != ']') {
            content += peek();
            ++pos_;
        }
        if (eof()) error("unterminated `['", "]");
        ++pos_;
        return content;
    }

    TemplateToken parse_hspace(bool starred) {
        TemplateToken t;
        t.kind = TemplateToken::Kind::HSpace;
        if (starred) t.src_form = "\\hspace*";
        if (!eof() && peek() == '\\') {
            ++pos_;
            std::string var;
            while (!eof() && std::isalpha(static_cast<unsigned char>(peek()))) {
                var += peek();
                ++pos_;
            }
            if (var.empty()) error("expected a length variable", "\\");
            skip_spaces();
            t.text = var;
            return t;
        }
        std::string arg = read_balanced_group();
        bool identifier = !arg.empty();
        for (char c : arg)
            if (!std::isalpha(static_cast<unsigned char>(c))) identifier = false;
        if (!arg.empty() && arg[0] == '\\') {
            t.text = arg.substr(1);
        } else if (identifier) {
            t.text = arg;  // a length variable written without the backslash
        } else {
            t.dim = parse_dimension(arg);
        }
        return t;
    }

    TemplateToken parse_makebox() {
        TemplateToken t;
        t.kind = TemplateToken::Kind::MakeBox;
        if (eof() || peek() != '[') error("\\makebox needs a width", "[");
        t.dim = parse_dimension(read_bracket_arg());
        t.align = 'c';
        if (!eof() && peek() == '[') {
            std::string a = trim(read_bracket_arg());
            if (a != "l" && a != "r" && a != "c")
                error("unsupported \\makebox alignment", a);
            t.align = a[0];
        }
        t.inner = parse_group();
        return t;
    }

    static void collect_max_param(const std::vector<TemplateToken>& tokens, int& max) {
        for (const auto& t : tokens) {
            if (t.kind == TemplateToken::Kind::Param && t.param > max) max = t.param;
            collect_max_param(t.inner, max);
            collect_max_param(t.inner2, max);
        }
    }
};

void render_tokens(const std::vector<TemplateToken>& tokens, std::string& out);

void render_literal(std::string_view text, std::string& out) {
    for (std::size_t i = 0; i < text.size();) {
        if (text.compare(i, kNoBreakSpace.size(), kNoBreakSpace) == 0) {
            out += '~';
            i += kNoBreakSpace.size();
            continue;
        }
        char c = text[i++];
        if (c == '&' || c == '#' || c == '%' || c == '_' || c == '{' || c == '}')
            out += '\\';
        out += c;
    }
}

void render_one(const TemplateToken& t, std::string& out) {
    using Kind = TemplateToken::Kind;
    switch (t.kind) {
        case Kind::Literal: render_literal(t.text, out); break;
        case Kind::Param:
            out += '#';
            out += static_cast<char>('0' + t.param);
            break;
        case Kind::LineBreak: out += "\\\\"; break;
        case Kind::ParBreak: out += "\\par "; break;
        case Kind::Fill: out += "\\hfill "; break;
        case Kind::HSpace:
            if (t.src_form == "\\quad") {
                out += "\\quad ";
            } else {
                out += t.src_form.empty() ? "\\hspace" : t.src_form;
                out += '{';
                if (!t.text.empty()) {
                    out += '\\';
                    out += t.text;
                } else {
                    out += dimension_to_string(t.dim);
                }
                out += '}';
            }
            break;
        case Kind::Llap:
            out += "\\llap{";
            render_tokens(t.inner, out);
            out += '}';
            break;
        case Kind::MakeBox:
            out += "\\makebox[";
            out += dimension_to_string(t.dim);
            out += "][";
            out += t.align;
            out += "]{";
            render_tokens(t.inner, out);
            out += '}';
            break;
        case Kind::Var:
            out += '\\';
            out += t.text;
            out += ' ';
            break;
        case Kind::FontSpan:
            out += "\\text";
            out += t.text;
            out += '{';
            render_tokens(t.inner, out);
            out += '}';
            break;
        case Kind::BothIf:
            out += t.test_second ? "\\bothIfSecond{" : "\\bothIfFirst{";
            render_tokens(t.inner, out);
            out += "}{";
            render_tokens(t.inner2, out);
            out += '}';
            break;
    }
}

void render_tokens(const std::vector<TemplateToken>& tokens, std::string& out) {
    for (const auto& t : tokens) render_one(t, out);
}

class Evaluator {
public:
    Evaluator(const std::vector<StyledStream>& args, const VarEnv& vars,
              const FontSpec& literal_font)
        : args_(args), vars_(vars), literal_font_(literal_font) {}

    StyledStream eval(const std::vector<TemplateToken>& tokens) {
        StyledStream out;
        eval_into(tokens, {}, out);
        return out;
    }

private:
    const std::vector<StyledStream>& args_;
    const VarEnv& vars_;
    const FontSpec& literal_font_;

    FontSpec styled(const std::vector<FontOp>& mods, FontSpec base) const {
        apply_font_ops(base, mods);
        return base;
    }

    void splice(const StyledStream& items, const std::vector<FontOp>& mods,
                StyledStream& out) const {
        for (const auto& item : items) {
            StyledItem copy = item;
            if (copy.kind == StyledItem::Kind::Text && !mods.empty())
                copy.font = styled(mods, copy.font);
            out.push_back(std::move(copy));
        }
    }

    std::string lookup_var(const std::string& name) const {
        auto it = vars_.find(name);
        if (it == vars_.end()) fail(msg::unbound_variable(name));
        return it->second;
    }

    void eval_into(const std::vector<TemplateToken>& tokens,
                   const std::vector<FontOp>& mods, StyledStream& out) {
        using Kind = TemplateToken::Kind;
        for (const auto& t : tokens) {
            switch (t.kind) {
                case Kind::Literal:
                    out.push_back(StyledItem::make_text(t.text, styled(mods, literal_font_)));
                    break;
                case Kind::Param:
                    if (t.param >= 1 && t.param <= static_cast<int>(args_.size()))
                        splice(args_[t.param - 1], mods, out);
                    break;
                case Kind::LineBreak: out.push_back({StyledItem::Kind::LineBreak}); break;
                case Kind::ParBreak: out.push_back({StyledItem::Kind::ParBreak}); break;
                case Kind::Fill: out.push_back({StyledItem::Kind::Fill}); break;
                case Kind::HSpace: {
                    StyledItem item;
                    item.kind = StyledItem::Kind::HSpace;
                    item.dim = t.text.empty() ? t.dim : parse_dimension(lookup_var(t.text));
                    out.push_back(std::move(item));
                    break;
                }
                case Kind::Llap: {
                    StyledItem item;
                    item.kind = StyledItem::Kind::Llap;
                    eval_into(t.inner, mods, item.inner);
                    out.push_back(std::move(item));
                    break;
                }
                case Kind::MakeBox: {
                    StyledItem item;
                    item.kind = StyledItem::Kind::MakeBox;
                    item.dim = t.dim;
                    item.align = t.align;
                    eval_into(t.inner, mods, item.inner);
                    out.push_back(std::move(item));
                    break;
                }
                case Kind::Var:
                    out.push_back(StyledItem::make_text(lookup_var(t.text),
                                                        styled(mods, literal_font_)));
                    break;
                case Kind::FontSpan: {
                    std::vector<FontOp> next = mods;
                    next.push_back(span_font_ops().at(t.text));
                    eval_into(t.inner, next, out);
                    break;
                }
                case Kind::BothIf: {
                    StyledStream first, second;
                    eval_into(t.inner, mods, first);
                    eval_into(t.inner2, mods, second);
                    const StyledStream& tested = t.test_second ? second : first;
                    if (!stream_empty(tested)) {
                        for (auto& i : first) out.push_back(std::move(i));
                        for (auto& i : second) out.push_back(std::move(i));
                    }
                    break;
                }
            }
        }
    }
};

}  // namespace

Template parse_template(std::string_view src) { return Parser(src).parse(); }

std::string template_source(const Template& tpl) {
    std::string out;
    render_tokens(tpl.tokens, out);
    return out;
}

bool stream_empty(const StyledStream& s) {
    for (const auto& item : s) {
        switch (item.kind) {
            case StyledItem::Kind::Text:
                if (!item.text.empty()) return false;
                break;
            case StyledItem::Kind::Llap:
            case StyledItem::Kind::MakeBox:
                if (!stream_empty(item.inner)) return false;
                break;
            default: return false;
        }
    }
    return true;
}

int stream_width(const StyledStream& s, int cells_per_line) {
    CellMetrics metrics{cells_per_line};
    int total = 0;
    for (const auto& item : s) {
        switch (item.kind) {
            case StyledItem::Kind::Text:
                total += static_cast<int>(cell_width(item.text));
                break;
            case StyledItem::Kind::HSpace: total += std::max(0, metrics.to_cells(item.dim)); break;
            case StyledItem::Kind::MakeBox:
                total += std::max(metrics.to_cells(item.dim),
                                  stream_width(item.inner, cells_per_line));
                break;
            case StyledItem::Kind::Llap: break;  // renders leftward, no advance
            default: break;                      // breaks and fill take no space here
        }
    }
    return total;
}

std::string stream_text(const StyledStream& s) {
    std::string out;
    for (const auto& item : s) {
        if (item.kind == StyledItem::Kind::Text) out += item.text;
        else if (item.kind == StyledItem::Kind::Llap ||
                 item.kind == StyledItem::Kind::MakeBox)
            out += stream_text(item.inner);
    }
    return out;
}

StyledStream eval_template(const Template& tpl, const std::vector<StyledStream>& args,
                           const VarEnv& vars, const FontSpec& literal_font) {
    return Evaluator(args, vars, literal_font).eval(tpl.tokens);
}

}  // namespace captionkit

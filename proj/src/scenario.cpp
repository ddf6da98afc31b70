#include "captionkit/scenario.hpp"

#include <fstream>
#include <sstream>

#include "captionkit/document.hpp"
#include "captionkit/render.hpp"
#include "captionkit/text.hpp"

namespace captionkit {

namespace {

class LineCursor {
public:
    explicit LineCursor(std::string_view line) : line_(line) {}

    void skip_ws() {
        while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t')) ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= line_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < line_.size() ? line_[pos_] : '\0';
    }

    std::string word() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < line_.size() && line_[pos_] != ' ' && line_[pos_] != '\t') ++pos_;
        return std::string(line_.substr(start, pos_ - start));
    }

    // [ ... ] - returns content; no nesting
    std::string bracket() {
        ++pos_;  // consume '['
        std::size_t start = pos_;
        while (pos_ < line_.size() && line_[pos_] != ']') ++pos_;
        if (pos_ >= line_.size()) throw std::runtime_error("unterminated `['");
        std::string out(line_.substr(start, pos_ - start));
        ++pos_;
        return out;
    }

    // " ... " with \" and \\ escapes
    std::string quoted() {
        skip_ws();
        if (pos_ >= line_.size() || line_[pos_] != '"')
            throw std::runtime_error("expected a quoted string");
        ++pos_;
        std::string out;
        while (pos_ < line_.size() && line_[pos_] != '"') {
            if (line_[pos_] == '\\' && pos_ + 1 < line_.size() &&
                (line_[pos_ + 1] == '"' || line_[pos_ + 1] == '\\')) {
                out += line_[pos_ + 1];
                pos_ += 2;
                continue;
            }
            out += line_[pos_++];
        }
        if (pos_ >= line_.size()) throw std::runtime_error("unterminated quote");
        ++pos_;
        return out;
    }

    // { ... } balanced
    std::string braced() {
        skip_ws();
        if (pos_ >= line_.size() || line_[pos_] != '{')
            throw std::runtime_error("expected a braced argument");
        ++pos_;
        std::string out;
        int depth = 1;
        while (pos_ < line_.size()) {
            char c = line_[pos_];
            if (c == '{') ++depth;
            if (c == '}' && --depth == 0) {
                ++pos_;
                return out;
            }
            out += c;
            ++pos_;
        }
        throw std::runtime_error("unterminated `{'");
    }

    std::string rest() {
        skip_ws();
        std::string out(line_.substr(pos_));
        pos_ = line_.size();
        return trim(out);
    }

private:
    std::string_view line_;
    std::size_t pos_ = 0;
};

// `\par` inside a heading splits paragraphs
std::vector<std::string> split_heading(const std::string& heading) {
    std::vector<std::string> paragraphs;
    std::size_t pos = 0;
    while (true) {
        std::size_t hit = heading.find("\\par", pos);
        if (hit == std::string::npos) {
            paragraphs.push_back(trim(heading.substr(pos)));
            break;
        }
        paragraphs.push_back(trim(heading.substr(pos, hit - pos)));
        pos = hit + 4;
    }
    if (paragraphs.empty()) paragraphs.emplace_back();
    return paragraphs;
}

class Runner {
public:
    explicit Runner(const RunOptions& options) : options_(options) {
        session_.metrics().cells_per_line = options.width;
    }

    RunResult run(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            std::string stripped = trim(line);
            if (stripped.empty() || stripped[0] == '#') continue;
            execute_line(stripped, line_no);
        }
        for (auto& d : session_.finish()) result_.diagnostics.push_back(std::move(d));

        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            if (i > 0) result_.output += "\n";
            result_.output += blocks_[i];
        }
        result_.exit_code =
            result_.has_errors() || (options_.strict && result_.has_warnings()) ? 1 : 0;
        return std::move(result_);
    }

private:
    RunOptions options_;
    DocumentSession session_;
    RunResult result_;
    std::vector<std::string> blocks_;

    void parse_error(int line_no, const std::string& what) {
        result_.diagnostics.push_back({Severity::Error, "scenario-parse",
                                       "line " + std::to_string(line_no) + ": " + what});
    }

    void push_rows(const std::vector<std::string>& rows) {
        if (rows.empty()) return;
        std::string block;
        for (const auto& row : rows) {
            block += row;
            block += '\n';
        }
        blocks_.push_back(std::move(block));
    }

    void emit_caption(const CaptionResult& res) {
        if (!options_.render) return;
        push_rows(render_box_rows(res.box, options_.annotated));
    }

    void execute_line(const std::string& line, int line_no) {
        LineCursor cur(line);
        std::string verb = cur.word();
        bool starred = !verb.empty() && verb.back() == '*';
        if (starred) verb.pop_back();

        DiagnosticList diags;
        try {
            dispatch(verb, starred, cur, diags);
        } catch (const CaptionError& e) {
            diags.push_back(e.diag());
        } catch (const OptionParseError& e) {
            parse_error(line_no, e.what());
        } catch (const TemplateParseError& e) {
            parse_error(line_no, e.what());
        } catch (const std::exception& e) {
            parse_error(line_no, e.what());
        }
        for (auto& d : diags) result_.diagnostics.push_back(std::move(d));
    }

    void dispatch(const std::string& verb, bool starred, LineCursor& cur,
                  DiagnosticList& diags) {
        auto& store = session_.settings();
        auto& regs = session_.registries();

        if (verb == "usepackage") {
            store.setup(ScopeLevel::Package, "", parse_option_list(cur.rest()), false, diags);
        } else if (verb == "setup") {
            std::string scope;
            if (cur.peek() == '[') scope = trim(cur.bracket());
            OptionList opts = parse_option_list(cur.rest());
            if (scope.empty()) session_.local_setup(opts, diags);
            else if (scope == "global") store.setup(ScopeLevel::Global, "", opts, starred, diags);
            else store.setup(ScopeLevel::Type, scope, opts, starred, diags);
        } else if (verb == "clearsetup") {
            std::string scope;
            if (cur.peek() == '[') scope = trim(cur.bracket());
            else throw std::runtime_error("clearsetup needs an [option list] name");
            std::vector<std::string> keys;
            while (!cur.done()) {
                for (const auto& entry : parse_option_list(cur.word()).entries)
                    keys.push_back(entry.key);
            }
            store.clear_setup(scope, keys, starred, diags);
        } else if (verb == "showsetup") {
            std::string scope;
            if (cur.peek() == '[') scope = trim(cur.bracket());
            std::string listing = store.show_setup(scope, diags);
            if (!listing.empty() && options_.render) push_rows({listing});
        } else if (verb == "declareformat") {
            std::string name = cur.word();
            regs.declare_format(name, cur.braced(), starred);
        } else if (verb == "declarelabelformat") {
            std::string name = cur.word();
            regs.declare_label_format(name, cur.braced());
        } else if (verb == "declarelabelseparator") {
            std::string name = cur.word();
            regs.declare_label_separator(name, cur.braced(), starred);
        } else if (verb == "declaretextformat") {
            std::string name = cur.word();
            regs.declare_text_format(name, cur.braced());
        } else if (verb == "declarejustification") {
            std::string name = cur.word();
            std::string strategy = cur.word();
            regs.declare_justification(name, strategy);
        } else if (verb == "declarefont") {
            std::string name = cur.word();
            regs.declare_font(name, parse_option_list(cur.braced()));
        } else if (verb == "declarestyle") {
            std::string name = cur.word();
            OptionList singleline;
            if (cur.peek() == '[') singleline = parse_option_list(cur.bracket());
            OptionList main = parse_option_list(cur.braced());
            regs.declare_style(name, std::move(main), std::move(singleline));
        } else if (verb == "declarelistformat") {
            std::string name = cur.word();
            regs.declare_list_format(name, cur.braced());
        } else if (verb == "declareoption") {
            regs.declare_option(cur.word());
        } else if (verb == "declaretype") {
            std::string name = cur.word();
            std::string display, heading, within;
            if (cur.peek() == '"') display = cur.quoted();
            if (cur.peek() == '"') heading = cur.quoted();
            for (const auto& entry : parse_option_list(cur.rest()).entries)
                if (entry.key == "within") within = entry.value.value_or("");
            session_.declare_type(name, display, heading, within);
        } else if (verb == "begin") {
            session_.begin_float(cur.word());
        } else if (verb == "content") {
            session_.mark_content();
        } else if (verb == "end") {
            session_.end_float();
        } else if (verb == "continuedfloat") {
            session_.continued_float();
        } else if (verb == "caption" || verb == "captionof") {
            CaptionRequest req;
            req.starred = starred;
            std::string type;
            if (verb == "captionof") type = cur.word();
            if (cur.peek() == '[') req.list_entry = cur.bracket();
            req.heading_paragraphs = split_heading(cur.quoted());
            CaptionResult res = verb == "captionof"
                                    ? session_.caption_of(type, req, diags)
                                    : session_.caption(req, diags);
            emit_caption(res);
        } else if (verb == "captionlistentry") {
            std::string type;
            if (cur.peek() == '[') type = trim(cur.bracket());
            std::string text = cur.quoted();
            if (type.empty()) {
                if (!session_.float_open())
                    throw CaptionError(msg::caption_outside_float());
                type = session_.open_float_type();
            }
            session_.caption_list_entry(type, text, diags);
        } else if (verb == "stepcounter") {
            session_.step_counter(cur.word());
        } else if (verb == "listof") {
            auto lines = session_.list_of(cur.word(), diags);
            if (options_.render) push_rows(lines);
        } else if (verb == "page") {
            session_.set_page(std::max(1, std::atoi(cur.word().c_str())));
        } else if (verb == "width") {
            session_.metrics().cells_per_line = std::max(4, std::atoi(cur.word().c_str()));
        } else {
            throw std::runtime_error("unknown directive `" + verb + "'");
        }
        if (!cur.done()) throw std::runtime_error("trailing text after directive");
    }
};

}  // namespace

RunResult run_scenario_text(const std::string& text, const RunOptions& options) {
    return Runner(options).run(text);
}

RunResult run_scenario_file(const std::string& path, const RunOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        RunResult result;
        result.diagnostics.push_back(
            {Severity::Error, "scenario-io", "cannot open scenario file `" + path + "'"});
        result.exit_code = 1;
        return result;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return run_scenario_text(buffer.str(), options);
}

}  // namespace captionkit

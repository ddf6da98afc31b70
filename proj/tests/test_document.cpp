#include <doctest.h>

#include <random>

#include "captionkit/document.hpp"

using namespace captionkit;

namespace {

struct Doc {
    DocumentSession session;
    DiagnosticList diags;

    std::string numbered_caption(const std::string& type, const std::string& heading) {
        session.begin_float(type);
        session.mark_content();
        CaptionRequest req;
        req.heading_paragraphs = {heading};
        session.caption(req, diags);
        std::string number = session.float_type(type).list_entries.back().number;
        session.end_float();
        return number;
    }
};

}  // namespace

TEST_CASE("numbering: consecutive floats count up") {
    Doc d;
    CHECK(d.numbered_caption("figure", "one") == "1");
    CHECK(d.numbered_caption("figure", "two") == "2");
    CHECK(d.numbered_caption("table", "first table") == "1");
    CHECK(d.numbered_caption("figure", "three") == "3");
}

TEST_CASE("numbering: within resets and prefixes") {
    Doc d;
    d.session.settings().setup(ScopeLevel::Global, "",
                               parse_option_list("figurewithin=section"), false, d.diags);
    d.session.step_counter("section");
    CHECK(d.numbered_caption("figure", "a") == "1.1");
    CHECK(d.numbered_caption("figure", "b") == "1.2");
    d.session.step_counter("section");
    CHECK(d.numbered_caption("figure", "c") == "2.1");
    CHECK(d.numbered_caption("table", "t") == "1");  // tables are unaffected
}

TEST_CASE("numbering: random caption/step sequences stay monotone and reset to one") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> action(0, 3);
    Doc d;
    d.session.settings().setup(ScopeLevel::Global, "",
                               parse_option_list("figurewithin=section"), false, d.diags);
    int last = 0;
    for (int i = 0; i < 1000; ++i) {
        if (action(rng) == 0) {
            d.session.step_counter("section");
            last = 0;
            continue;
        }
        std::string num = d.numbered_caption("figure", "x");
        std::size_t dot = num.find('.');
        REQUIRE(dot != std::string::npos);
        int trailing = std::stoi(num.substr(dot + 1));
        REQUIRE(trailing == last + 1);
        last = trailing;
    }
}

TEST_CASE("caption outside float errors; type= enables it") {
    Doc d;
    CaptionRequest req;
    req.heading_paragraphs = {"stray"};
    try {
        d.session.caption(req, d.diags);
        FAIL("expected an error");
    } catch (const CaptionError& e) {
        CHECK(e.diag().message == "\\caption outside float.");
    }

    d.session.settings().setup(ScopeLevel::Global, "", parse_option_list("type=figure"),
                               false, d.diags);
    CaptionResult res = d.session.caption(req, d.diags);
    CHECK(res.produced);
    CHECK(d.session.float_type("figure").counter == 1);
}

TEST_CASE("captionof works without a float and validates the type") {
    Doc d;
    CaptionRequest req;
    req.heading_paragraphs = {"A table"};
    d.session.caption_of("table", req, d.diags);
    CHECK(d.session.float_type("table").counter == 1);
    CHECK(d.session.float_type("table").list_entries.size() == 1);

    try {
        d.session.caption_of("diagram", req, d.diags);
        FAIL("expected an error");
    } catch (const CaptionError& e) {
        CHECK(e.diag().message == "No float type 'diagram' defined.");
    }

    // starred: no number, no list entry
    CaptionRequest starred;
    starred.heading_paragraphs = {"A table"};
    starred.starred = true;
    d.session.caption_of("table", starred, d.diags);
    CHECK(d.session.float_type("table").counter == 1);
    CHECK(d.session.float_type("table").list_entries.size() == 1);
}

TEST_CASE("starred captions never disturb numbering") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> starred(0, 1);
    Doc with, without;
    std::vector<std::string> with_numbers, without_numbers;
    for (int i = 0; i < 1000; ++i) {
        bool star = starred(rng) == 1;
        // the "with" document interleaves starred captions, the other skips them
        with.session.begin_float("figure");
        CaptionRequest req;
        req.heading_paragraphs = {"x"};
        if (star) {
            CaptionRequest s;
            s.heading_paragraphs = {"ignored"};
            s.starred = true;
            with.session.caption(s, with.diags);
            with.session.end_float();
            continue;
        }
        with.session.caption(req, with.diags);
        with_numbers.push_back(with.session.float_type("figure").list_entries.back().number);
        with.session.end_float();

        without.session.begin_float("figure");
        without.session.caption(req, without.diags);
        without_numbers.push_back(
            without.session.float_type("figure").list_entries.back().number);
        without.session.end_float();
    }
    CHECK(with_numbers == without_numbers);
}

TEST_CASE("continued floats reuse the previous number") {
    Doc d;
    CHECK(d.numbered_caption("figure", "first") == "1");

    d.session.begin_float("figure");
    d.session.continued_float();
    CaptionRequest req;
    req.heading_paragraphs = {"continued"};
    d.session.caption(req, d.diags);
    CHECK(d.session.float_type("figure").list_entries.back().number == "1");
    d.session.end_float();

    CHECK(d.numbered_caption("figure", "next") == "2");
}

TEST_CASE("continued float error paths") {
    Doc d;
    try {
        d.session.continued_float();
        FAIL("expected an error");
    } catch (const CaptionError& e) {
        CHECK(e.diag().message == "\\ContinuedFloat outside float.");
    }

    d.numbered_caption("figure", "fig");
    d.numbered_caption("table", "tab");
    d.session.begin_float("figure");
    try {
        d.session.continued_float();
        FAIL("expected an error");
    } catch (const CaptionError& e) {
        CHECK(e.diag().message == "Continued `figure' after `table'.");
    }
    d.session.end_float();
}

TEST_CASE("second caption in a float reuses the number") {
    Doc d;
    d.session.begin_float("figure");
    CaptionRequest req;
    req.heading_paragraphs = {"one"};
    d.session.caption(req, d.diags);
    d.session.caption(req, d.diags);
    const auto& entries = d.session.float_type("figure").list_entries;
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].number == "1");
    CHECK(entries[1].number == "1");
    d.session.end_float();
}

TEST_CASE("list entries: suppression forms") {
    Doc d;
    d.session.begin_float("figure");
    CaptionRequest plain;
    plain.heading_paragraphs = {"stays"};
    d.session.caption(plain, d.diags);

    CaptionRequest suppressed;
    suppressed.heading_paragraphs = {"hidden"};
    suppressed.list_entry = "";  // the empty optional argument
    d.session.caption(suppressed, d.diags);

    CaptionRequest shortform;
    shortform.heading_paragraphs = {"long heading"};
    shortform.list_entry = "short";
    d.session.caption(shortform, d.diags);
    d.session.end_float();

    auto lines = d.session.list_of("figure", d.diags);
    REQUIRE(lines.size() == 3);  // heading + two entries
    CHECK(lines[0] == "List of Figures");
    CHECK(lines[1] == "1  stays");
    CHECK(lines[2] == "1  short");
}

TEST_CASE("list=false suppresses entries, captionlistentry still counts") {
    Doc d;
    d.session.settings().setup(ScopeLevel::Global, "", parse_option_list("list=no"), false,
                               d.diags);
    d.numbered_caption("figure", "x");
    d.session.caption_list_entry("figure", "manual entry", d.diags);
    CHECK(d.session.float_type("figure").counter == 2);
    auto lines = d.session.list_of("figure", d.diags);
    CHECK(lines.size() == 1);  // heading only
}

TEST_CASE("multi-paragraph heading without a list entry errors and is suppressed") {
    Doc d;
    d.session.begin_float("figure");
    CaptionRequest req;
    req.heading_paragraphs = {"one", "two"};
    d.session.caption(req, d.diags);
    d.session.end_float();
    REQUIRE(d.diags.size() == 1);
    CHECK(d.diags[0].message == "Paragraph ended before \\@caption was complete.");
    auto lines = d.session.list_of("figure", d.diags);
    CHECK(lines.size() == 1);
}

TEST_CASE("captionlistentry: the shared-caption pattern") {
    Doc d;
    d.session.registries().declare_label_format(
        "andtable", "#1~#2 \\& \\tablename~\\thetable");
    d.session.begin_float("figure");
    d.session.mark_content();
    d.session.caption_list_entry("table", "shared entry", d.diags);
    d.session.local_setup(parse_option_list("labelformat=andtable"), d.diags);
    CaptionRequest req;
    req.heading_paragraphs = {"shared heading"};
    CaptionResult res = d.session.caption(req, d.diags);
    d.session.end_float();

    REQUIRE(!res.box.lines.empty());
    std::string first;
    for (const auto& run : res.box.lines[0].runs) first += run.text;
    CHECK(first.find("Figure") != std::string::npos);
    CHECK(first.find("& Table") != std::string::npos);
    CHECK(d.session.float_type("table").counter == 1);
    CHECK(d.session.float_type("figure").counter == 1);

    auto tables = d.session.list_of("table", d.diags);
    REQUIRE(tables.size() == 2);
    CHECK(tables[1] == "1  shared entry");
}

TEST_CASE("declare_type defaults and custom names") {
    Doc d;
    d.session.declare_type("diagram", "", "", "");
    CHECK(d.session.float_type("diagram").display_name == "Diagram");
    CHECK(d.session.float_type("diagram").list_heading == "List of Diagrams");

    d.session.declare_type("chart", "Диаграмма", "Список диаграмм", "section");
    CHECK(d.session.float_type("chart").display_name == "Диаграмма");
    d.session.step_counter("section");
    CHECK(d.numbered_caption("chart", "пример") == "1.1");
}

TEST_CASE("name overrides pick the right precedence") {
    Doc d;
    d.session.settings().setup(ScopeLevel::Type, "figure",
                               parse_option_list("name=Fig."), false, d.diags);
    d.session.begin_float("figure");
    d.session.mark_content();
    CaptionRequest req;
    req.heading_paragraphs = {"caption text that is long enough to not be centered"};
    d.session.local_setup(parse_option_list("singlelinecheck=off"), d.diags);
    CaptionResult res = d.session.caption(req, d.diags);
    d.session.end_float();
    std::string first;
    for (const auto& run : res.box.lines[0].runs) first += run.text;
    CHECK(first.rfind("Fig.", 0) == 0);
}

TEST_CASE("unused setups surface at finish") {
    Doc d;
    d.session.settings().setup(ScopeLevel::Type, "wrapfigure",
                               parse_option_list("name=Fig."), false, d.diags);
    DiagnosticList end = d.session.finish();
    REQUIRE(end.size() == 1);
    CHECK(end[0].message == "Unused \\captionsetup[wrapfigure].");
}

TEST_CASE("listformat applies to list rendering") {
    Doc d;
    d.session.settings().setup(ScopeLevel::Global, "",
                               parse_option_list("figurewithin=section,listformat=subparens"),
                               false, d.diags);
    d.session.step_counter("section");
    d.numbered_caption("figure", "Caption text");
    auto lines = d.session.list_of("figure", d.diags);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1] == "(1.1)  Caption text");
}

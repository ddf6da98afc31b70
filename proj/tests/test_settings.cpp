#include <doctest.h>

#include <random>

#include "captionkit/settings.hpp"

using namespace captionkit;

namespace {

struct Fixture {
    Registries regs = builtin_registries();
    SettingsStore store{regs};
    DiagnosticList diags;

    void global(const std::string& opts) {
        store.setup(ScopeLevel::Global, "", parse_option_list(opts), false, diags);
    }
    void type(const std::string& name, const std::string& opts, bool starred = false) {
        store.setup(ScopeLevel::Type, name, parse_option_list(opts), starred, diags);
    }
    CaptionSettings resolve(const std::string& float_type = "figure",
                            const std::string& local = "", int page = 1) {
        ResolveContext ctx;
        ctx.page = page;
        return store.resolve(float_type, parse_option_list(local), ctx);
    }
};

}  // namespace

TEST_CASE("resolve: defaults match the base expansion") {
    Fixture f;
    CaptionSettings s = f.resolve();
    CHECK(s.format == "plain");
    CHECK(s.labelformat == "simple");
    CHECK(s.labelsep == "colon");
    CHECK(s.justification == "justified");
    CHECK(s.font.empty());
    CHECK(s.labelfont.empty());
    CHECK(s.textfont.empty());
    CHECK(s.margin_left == Dimension::pt(0));
    CHECK(s.margin_right == Dimension::pt(0));
    CHECK(s.indention == Dimension::pt(0));
    CHECK(s.hangindent == Dimension::pt(0));
    CHECK(s.parindent == Dimension::pt(0));
    CHECK(s.singlelinecheck);
    CHECK(s.skip == Dimension::pt(10));
    CHECK(s.position == Position::Auto);
    CHECK(s.listformat == "subsimple");
    CHECK(s.list);
    CHECK(f.diags.empty());
}

TEST_CASE("resolve: style=base equals the documented expansion, field for field") {
    Fixture with_style;
    with_style.global("format=hang,margin=30pt,labelfont=bf");  // noise to overwrite
    with_style.global("style=base");

    Fixture direct;
    direct.global("format=hang,margin=30pt,labelfont=bf");
    direct.global(
        "format=default,labelformat=default,labelsep=default,"
        "justification=default,font=default,labelfont=default,"
        "textfont=default,margin=0pt,indention=0pt,"
        "parindent=0pt,hangindent=0pt,singlelinecheck=true");

    CaptionSettings a = with_style.resolve();
    CaptionSettings b = direct.resolve();
    b.singleline_options = a.singleline_options;  // carried by the style itself
    CHECK(a == b);
    CHECK(with_style.diags.empty());
}

TEST_CASE("setup: font accumulation (+=) matches the combined list") {
    Fixture incremental;
    incremental.global("font=small");
    incremental.global("font+=it");

    Fixture combined;
    combined.global("font={small,it}");

    CHECK(incremental.resolve() == combined.resolve());
    CHECK(incremental.resolve().font.size == "small");
    CHECK(incremental.resolve().font.shape == "it");

    Fixture replaced;
    replaced.global("font=small");
    replaced.global("font=it");
    CHECK(!replaced.resolve().font.size.has_value());
}

TEST_CASE("setup: per-type scope only affects its type") {
    Fixture f;
    f.type("table", "position=above");
    CHECK(f.resolve("table").position == Position::Top);
    CHECK(f.resolve("figure").position == Position::Auto);
}

TEST_CASE("setup: undefined style reports the catalog text") {
    Fixture f;
    f.global("style=bogus");
    REQUIRE(f.diags.size() == 1);
    CHECK(f.diags[0].message == "Undefined style `bogus'.");
    CHECK(f.diags[0].severity == Severity::Error);
}

TEST_CASE("setup: unknown keys error, legacy and custom keys pass") {
    Fixture f;
    f.global("margarine=10pt");
    REQUIRE(f.diags.size() == 1);
    CHECK(f.diags[0].message == "Undefined option `margarine'.");

    f.diags.clear();
    f.regs.declare_option("myindention");
    f.global("myindention=1cm");
    CHECK(f.diags.empty());
    CHECK(f.resolve().vars.at("myindention") == "1cm");
}

TEST_CASE("margins: scalar expands to a symmetric pair") {
    Fixture scalar, pair;
    scalar.global("margin=10pt");
    pair.global("margin={10pt,10pt}");
    CHECK(scalar.resolve() == pair.resolve());

    std::mt19937 rng(11);
    std::uniform_int_distribution<int> pts(0, 60);
    for (int i = 0; i < 1000; ++i) {
        int v = pts(rng);
        Fixture a, b;
        a.global("margin=" + std::to_string(v) + "pt");
        b.global("margin={" + std::to_string(v) + "pt," + std::to_string(v) + "pt}");
        REQUIRE(a.resolve() == b.resolve());
    }
}

TEST_CASE("margins: twoside mirrors on even pages, oneside opts out") {
    Fixture f;
    f.global("margin={0pt,10pt},twoside");
    CaptionSettings odd = f.resolve("figure", "", 1);
    CHECK(odd.margin_left == Dimension::pt(0));
    CHECK(odd.margin_right == Dimension::pt(10));
    CaptionSettings even = f.resolve("figure", "", 2);
    CHECK(even.margin_left == Dimension::pt(10));
    CHECK(even.margin_right == Dimension::pt(0));

    Fixture one;
    one.global("margin={0pt,10pt},oneside");
    CaptionSettings p2 = one.resolve("figure", "", 2);
    CHECK(p2.margin_left == Dimension::pt(0));
    CHECK(p2.margin_right == Dimension::pt(10));
}

TEST_CASE("margins: mirror involution changes nothing else") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> pts(0, 40);
    std::uniform_int_distribution<int> page(1, 50);
    for (int i = 0; i < 1000; ++i) {
        Fixture f;
        f.global("twoside,margin={" + std::to_string(pts(rng)) + "pt," +
                 std::to_string(pts(rng)) + "pt},indention=" + std::to_string(pts(rng)) + "pt");
        int p = page(rng);
        CaptionSettings at_p = f.resolve("figure", "", p);
        CaptionSettings at_next = f.resolve("figure", "", p + 1);
        std::swap(at_next.margin_left, at_next.margin_right);
        REQUIRE(at_p == at_next);
    }
}

TEST_CASE("margins: maxmargin clamps both sides") {
    Fixture f;
    f.global("maxmargin=20pt,margin=30pt");
    CaptionSettings s = f.resolve();
    CHECK(s.margin_left == Dimension::pt(20));
    CHECK(s.margin_right == Dimension::pt(20));

    Fixture g;
    g.global("minmargin=5pt,margin=1pt");
    CHECK(g.resolve().margin_left == Dimension::pt(5));

    Fixture off;
    off.global("maxmargin=20pt,maxmargin=off,margin=30pt");
    CHECK(off.resolve().margin_left == Dimension::pt(30));
}

TEST_CASE("margins: width wins until a later margin clears it") {
    Fixture f;
    f.global("margin=10pt,width=.75\\textwidth");
    CaptionSettings s = f.resolve();
    REQUIRE(s.width.has_value());
    CHECK(s.width->relative == doctest::Approx(0.75));

    f.global("margin=5pt");
    CHECK(!f.resolve().width.has_value());

    // margin* only applies while no width is set
    Fixture g;
    g.global("width=100pt,margin*=7pt");
    CHECK(g.resolve().margin_left == Dimension::pt(0));
    Fixture h;
    h.global("margin*=7pt");
    CHECK(h.resolve().margin_left == Dimension::pt(7));
}

TEST_CASE("later wins across and within scopes") {
    std::mt19937 rng(37);
    std::uniform_int_distribution<int> pts(0, 99);
    for (int i = 0; i < 1000; ++i) {
        int first = pts(rng), second = pts(rng);
        Fixture f;
        f.global("indention=" + std::to_string(first) + "pt");
        f.type("figure", "indention=" + std::to_string(second) + "pt");
        REQUIRE(f.resolve().indention == Dimension::pt(second));

        Fixture g;
        g.global("skip=" + std::to_string(first) + "pt,skip=" + std::to_string(second) + "pt");
        REQUIRE(g.resolve().skip == Dimension::pt(second));
    }
}

TEST_CASE("legacy closure: all 24 rows behave like their modern equivalents") {
    const std::pair<const char*, const char*> rows[] = {
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
        {"flushleft", "justification=raggedright"},
        {"flushright", "justification=raggedleft"},
        {"oneline", "singlelinecheck=on"},
    };
    CHECK(std::size(rows) == 24);
    for (const auto& [legacy, modern] : rows) {
        CAPTURE(legacy);
        CHECK(map_legacy(legacy) == parse_option_list(modern));
        Fixture a, b;
        a.global(legacy);
        b.global(modern);
        REQUIRE(a.diags.empty());
        REQUIRE(a.resolve() == b.resolve());
    }
    CHECK(!is_legacy_option("margin"));
    CHECK_THROWS_AS(map_legacy("margin"), CaptionError);
}

TEST_CASE("clear_setup: removal, warnings and the starred escape") {
    Fixture f;
    f.type("table", "position=above,margin=10pt");
    f.store.clear_setup("table", {"position"}, false, f.diags);
    CHECK(f.diags.empty());
    CHECK(f.resolve("table").position == Position::Auto);
    CHECK(f.resolve("table").margin_left == Dimension::pt(10));

    f.store.clear_setup("table", {"position"}, false, f.diags);
    REQUIRE(f.diags.size() == 1);
    CHECK(f.diags[0].message == "Option `position' was not in list `table'.");
    CHECK(f.diags[0].severity == Severity::Warning);

    f.diags.clear();
    f.store.clear_setup("nosuch", {}, false, f.diags);
    REQUIRE(f.diags.size() == 1);
    CHECK(f.diags[0].message == "Option list `nosuch' undefined.");

    f.diags.clear();
    f.store.clear_setup("nosuch", {}, true, f.diags);
    f.store.clear_setup("table", {"width"}, true, f.diags);
    CHECK(f.diags.empty());
}

TEST_CASE("unused type scopes warn; consumed and starred ones do not") {
    Fixture f;
    f.type("wrapfigure", "name=Fig.");
    f.type("table", "position=top");
    f.type("sidefigure", "margin=1pt", /*starred=*/true);
    f.resolve("table");
    DiagnosticList warnings = f.store.unused_setups();
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].message == "Unused \\captionsetup[wrapfigure].");
}

TEST_CASE("show_setup lists accumulated options in order") {
    Fixture f;
    f.global("margin=10pt");
    f.global("font=small");
    std::string listing = f.store.show_setup("global", f.diags);
    CHECK(listing == "Option list `global' = {margin=10pt,font=small}");

    std::string missing = f.store.show_setup("zzz", f.diags);
    CHECK(missing.empty());
    REQUIRE(f.diags.size() == 1);
    CHECK(f.diags[0].message == "Option list `zzz' undefined.");
}

TEST_CASE("single-line overrides come from the active style") {
    Fixture f;
    CaptionSettings base = f.resolve();
    CaptionSettings overridden = f.store.with_singleline_overrides(base);
    CHECK(overridden.justification == "centering");
    CHECK(overridden.indention == Dimension::pt(0));

    f.regs.declare_style("mystyle", parse_option_list("font=footnotesize"),
                         parse_option_list("margin=5mm,justification=centering"));
    f.global("style=mystyle,justification=raggedleft");
    CaptionSettings s = f.resolve();
    CHECK(s.justification == "raggedleft");
    CaptionSettings single = f.store.with_singleline_overrides(s);
    CHECK(single.justification == "centering");
    CHECK(single.margin_left == parse_dimension("5mm"));

    // a user style with an empty single-line list changes nothing
    Fixture g;
    g.regs.declare_style("plainstyle", parse_option_list("labelsep=period"), OptionList{});
    g.global("style=plainstyle,justification=raggedleft");
    CaptionSettings t = g.resolve();
    CHECK(g.store.with_singleline_overrides(t) == t);
}

TEST_CASE("aliases: labelseparator, aboveskip, figure/tableposition") {
    Fixture f;
    f.global("labelseparator=endash,aboveskip=4pt,tableposition=top");
    CaptionSettings s = f.resolve("table");
    CHECK(s.labelsep == "endash");
    CHECK(s.skip == Dimension::pt(4));
    CHECK(s.position == Position::Top);
    CHECK(f.resolve("figure").position == Position::Auto);
    CHECK(f.diags.empty());
}

TEST_CASE("within overrides are read from package/global scopes") {
    Fixture f;
    CHECK(!f.store.within_override("figure"));
    f.global("figurewithin=section");
    auto w = f.store.within_override("figure");
    REQUIRE(w.has_value());
    CHECK(*w == "section");
    f.global("figurewithin=none");
    w = f.store.within_override("figure");
    REQUIRE(w.has_value());
    CHECK(w->empty());
}

TEST_CASE("resolve is deterministic and idempotent") {
    Fixture f;
    f.global("margin=10pt,font=small,labelfont=bf,labelsep=endash");
    CaptionSettings first = f.resolve();
    CaptionSettings second = f.resolve();
    CHECK(first == second);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_util.hpp"

#include "jtwo/chart.hpp"

using namespace jtwo;

TEST_CASE("tsv shape and determinism")
{
    const J2Model& m = test_j2();
    ChartDoc doc = chart_of_j2(m, 0, 40, ChartMode::provenance);
    std::string a = to_tsv(doc), b = to_tsv(chart_of_j2(m, 0, 40, ChartMode::provenance));
    CHECK(a == b);
    CHECK(a.rfind("stem\tfiltration\tlabel\torder\tcolor\n", 0) == 0);
    std::string svg1 = to_svg(doc), svg2 = to_svg(doc);
    CHECK(svg1 == svg2);
}

TEST_CASE("row and glyph counts agree between tsv and svg")
{
    const J2Model& m = test_j2();
    ChartDoc doc = chart_of_j2(m, 0, 40, ChartMode::provenance);
    std::string svg = to_svg(doc);
    size_t glyphs = 0, pos = 0;
    while ((pos = svg.find("<title>", pos)) != std::string::npos) {
        ++glyphs;
        pos += 7;
    }
    CHECK(glyphs == doc.rows.size());
}

TEST_CASE("glyph conventions")
{
    const J2Model& m = test_j2();
    ChartDoc doc = chart_of_j2(m, 0, 0, ChartMode::provenance);
    REQUIRE(doc.rows.size() == 1);
    CHECK(doc.rows[0].order == "free");
    std::string svg = to_svg(doc);
    CHECK(svg.find("<rect") != std::string::npos); /* the free square */

    ChartDoc d143 = chart_of_j2(m, 143, 143, ChartMode::provenance);
    REQUIRE(!d143.rows.empty());
    for (const auto& r : d143.rows) {
        CHECK(r.order == "27");
        CHECK(r.color == "red");
    }
    /* an order-27 dot carries two circles */
    std::string svg143 = to_svg(d143);
    CHECK(svg143.find("r='6'") != std::string::npos);
    CHECK(svg143.find("r='9'") != std::string::npos);
}

TEST_CASE("empty window renders a header-only document")
{
    const J2Model& m = test_j2();
    ChartDoc doc = chart_of_j2(m, 24, 25, ChartMode::provenance);
    CHECK(doc.rows.empty());
    CHECK(to_tsv(doc) == "stem\tfiltration\tlabel\torder\tcolor\n");
}

TEST_CASE("window beyond the model is refused")
{
    const J2Model& m = test_j2();
    CHECK_THROWS(chart_of_j2(m, 0, m.max_degree + 10, ChartMode::provenance));
}

TEST_CASE("hurewicz mode marks the detector classes")
{
    const J2Model& m = test_j2();
    ChartDoc doc = chart_of_j2(m, 0, 40, ChartMode::hurewicz);
    auto color_of = [&](int stem, const std::string& label) -> std::string {
        for (const auto& r : doc.rows)
            if (r.stem == stem && r.label == label)
                return r.color;
        return "(absent)";
    };
    CHECK(color_of(26, "d(alpha*Delta)") == "orange");
    CHECK(color_of(27, "d(c4^2*c6)") == "orange");
    CHECK(color_of(27, "alpha*Delta") == "black");   /* beta_1-support keeps it */
    CHECK(color_of(23, "d(3*Delta)") == "(absent)"); /* omitted filtration-one class */
    CHECK(color_of(23, "d(c4^3)") == "orange");
    CHECK(color_of(0, "iota") == "orange");
}

TEST_CASE("digest comparison reports both directions")
{
    const J2Model& m = test_j2();
    ChartDoc doc = chart_of_j2(m, 26, 27, ChartMode::provenance);
    auto lines = digest_lines(doc);
    DigestDiff same = compare_digest(doc, lines);
    CHECK(same.match);
    lines.pop_back();
    lines.push_back("S 26 4 ghost 3 red");
    DigestDiff diff = compare_digest(doc, lines);
    CHECK(!diff.match);
    CHECK(diff.missing.size() == 1);
    CHECK(diff.unexpected.size() == 1);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_util.hpp"

#include "jtwo/moore.hpp"

using namespace jtwo;

TEST_CASE("mod 3 dimensions are the tensor/Tor counts")
{
    const TmfTable& T = test_table();
    Mod3Tmf m3(T, 160);
    GradedGroup g = T.graded_group(160);
    for (int d = 0; d <= 159; ++d) {
        int want = (int)g.at(d).size();
        if (d >= 1)
            for (const auto& s : g.at(d - 1))
                if (!s.is_free)
                    ++want;
        CHECK(m3.model().dim(d) == want);
    }
}

TEST_CASE("mod 3 stems quoted in the low range")
{
    const TmfTable& T = test_table();
    Mod3Tmf m3(T, 60);
    SUBCASE("stem 28")
    {
        const auto& cs = m3.model().at(28);
        REQUIRE(cs.size() == 2);
        CHECK(m3.model().find("tilde(alpha*Delta)", 28) != nullptr);
        CHECK(m3.model().find("bar(c4^2*c6)", 28) != nullptr);
        CHECK(m3.model().find("tilde(alpha*Delta)", 28)->filtration == 0);
    }
    SUBCASE("stem 27")
    {
        const auto& cs = m3.model().at(27);
        REQUIRE(cs.size() == 1);
        CHECK(cs[0].label == "bar(alpha*Delta)");
        CHECK(cs[0].filtration == 1);
    }
    SUBCASE("stem 24 carries the bar of 3 Delta")
    {
        CHECK(m3.model().dim(24) == 2);
        CHECK(m3.model().find("bar(3*Delta)", 24) != nullptr);
    }
}

TEST_CASE("sphere mod 3 in degree zero")
{
    TmfData data = parse_tmf_data(data_path());
    SphereTable s = sphere_from_data(data);
    QuotientModel q = mod3r(s.g, 1, 22);
    REQUIRE(q.dim(0) == 1);
    CHECK(q.at(0)[0].label == "bar(iota)");
}

TEST_CASE("v1 action on tmf/3")
{
    const TmfTable& T = test_table();
    Mod3Tmf m3(T, 160);
    auto v1_of = [&](const std::string& label, int stem) {
        const QClass* c = m3.model().find(label, stem);
        REQUIRE(c != nullptr);
        return m3.v1(*c);
    };
    SUBCASE("v1 on the unit bar is the alpha tilde")
    {
        V1Value v = v1_of("bar(1)", 0);
        CHECK(v.kind == V1Value::cls);
        CHECK(v.label == "tilde(alpha)");
    }
    SUBCASE("v1^2 = c4-bar and v1^3 = c6-bar")
    {
        V1Value v = v1_of("tilde(alpha)", 4);
        CHECK(v.label == "bar(c4)");
        V1Value w = v1_of("bar(c4)", 8);
        CHECK(w.label == "bar(c6)");
    }
    SUBCASE("the subtle square: v1 on bar(alpha*Delta) is the beta-cube tilde")
    {
        V1Value v = v1_of("bar(alpha*Delta)", 27);
        CHECK(v.kind == V1Value::cls);
        CHECK(v.label == "tilde(beta^3)");
    }
    SUBCASE("v1 kills the alpha Delta tilde (imported juggling datum)")
    {
        V1Value v = v1_of("tilde(alpha*Delta)", 28);
        CHECK(v.kind == V1Value::zero);
    }
    SUBCASE("v1 kills bar(3*Delta)")
    {
        V1Value v = v1_of("bar(3*Delta)", 24);
        CHECK(v.kind == V1Value::zero);
    }
    SUBCASE("v1 on bar(Delta^3) is the alpha Delta^3 tilde")
    {
        V1Value v = v1_of("bar(Delta^3)", 72);
        CHECK(v.kind == V1Value::cls);
        CHECK(v.label == "tilde(alpha*Delta^3)");
    }
    SUBCASE("v1^3 = v1 v1^2 wherever both are defined")
    {
        for (int d = 0; d + 12 <= 156; ++d) {
            F3Mat a = m3.v1_power_matrix(d, 3);
            F3Mat b = f3_mul(m3.v1_matrix(d + 8), f3_mul(m3.v1_matrix(d + 4), m3.v1_matrix(d)));
            CHECK(a.e == b.e);
        }
    }
}

TEST_CASE("lemma: the boundary of v1 times a bar class is alpha times the class")
{
    const TmfTable& T = test_table();
    Mod3Tmf m3(T, 160);
    Element alpha = Element::torsion_gen(TorsionMonomial{1, 0, 0});
    for (int d = 0; d <= 150; ++d)
        for (const auto& c : m3.model().at(d)) {
            if (c.kind != QKind::bar)
                continue;
            auto base = T.element_for_label(c.base);
            REQUIRE(base.has_value());
            Element af = T.multiply(alpha, *base);
            V1Value v = m3.v1(c);
            if (!af.is_zero()) {
                REQUIRE(v.kind == V1Value::cls);
                CHECK(v.label == "tilde(" + af.torsion_part.begin()->first.label() + ")");
            } else if (v.kind == V1Value::cls) {
                /* boundary of the value must vanish: a bar class */
                CHECK(v.label.rfind("bar(", 0) == 0);
            }
        }
}

TEST_CASE("mod (3, v1^j) quotients")
{
    const TmfTable& T = test_table();
    Mod3Tmf m3(T, 156);
    QuotientModel q = mod_v1j(m3, 1, 150);
    SUBCASE("stem 144 is one line on q1(bar(Delta^6))")
    {
        REQUIRE(q.dim(144) == 1);
        CHECK(q.at(144)[0].label == "q1(bar(Delta^6))");
    }
    SUBCASE("stem 145 vanishes") { CHECK(q.dim(145) == 0); }
    SUBCASE("stem 139 of tmf/3 vanishes") { CHECK(m3.model().dim(139) == 0); }
    SUBCASE("iterated bracketing agrees on the overlap")
    {
        QuotientModel q2 = mod_v1j(m3, 2, 146);
        for (int d = 0; d <= 100; ++d) {
            /* d-th group computed from the v1^2 matrix equals the one from
             * composing two v1 matrices; both run through the same engine,
             * so compare against explicit composition */
            int src = d - 8;
            if (src < 0)
                continue;
            F3Mat a = m3.v1_power_matrix(src, 2);
            F3Mat b = f3_mul(m3.v1_matrix(src + 4), m3.v1_matrix(src));
            CHECK(a.e == b.e);
        }
        CHECK(q2.dim(144) >= 1);
    }
}

TEST_CASE("injectivity report over the degree window")
{
    const TmfTable& T = test_table(620);
    Mod3Tmf m3(T, 620);
    InjectivityReport rep = v1_injectivity_report(m3, 600, 20);
    CHECK(rep.failing_js_in_window == std::vector<int>{8, 10, 14, 15});
    SUBCASE("j = 0 and j = 1 at 144 are injective")
    {
        for (const auto& r : rep.rows) {
            if (r.big_degree == 144 && (r.j == 0 || r.j == 1))
                CHECK(r.injective);
            if (r.j == 8)
                CHECK(!r.injective);
        }
    }
    SUBCASE("the supplementary row separates the two readings")
    {
        bool seen = false;
        for (const auto& r : rep.rows)
            if (!r.in_window) {
                seen = true;
                CHECK(r.j == 26);
                CHECK(!r.injective);
                CHECK(r.predicted_mod36);
                CHECK(!r.predicted_mod18);
            }
        CHECK(seen);
        CHECK(rep.verdict == "computation supports the mod-18 residue condition");
    }
}

TEST_CASE("periodicity lift chain")
{
    const TmfTable& T = test_table();
    const J2Model& j2 = test_j2();
    LiftReport rep = verify_periodicity_lift(T, j2.g);
    for (const auto& s : rep.steps) {
        INFO(s.name);
        CHECK(s.pass);
    }
    CHECK(rep.all_pass);
}

TEST_CASE("mod 27 lift uniqueness data")
{
    const J2Model& j2 = test_j2();
    QuotientModel q27 = mod3r(j2.g, 3, 170);
    const QClass* lift = q27.find("tilde(d(Delta^6))", 144);
    REQUIRE(lift != nullptr);
    CHECK(lift->order_exp == 3);
    for (const auto& c : q27.at(144))
        CHECK(c.kind == QKind::tilde);
}

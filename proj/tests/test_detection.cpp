#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_util.hpp"

#include "jtwo/detection.hpp"

using namespace jtwo;

TEST_CASE("divided alpha family records")
{
    const J2Model& m = test_j2();
    SUBCASE("alpha_2 is detected by d(c4) with order 3")
    {
        DetectionRecord r = alpha_family(2, 1, m);
        CHECK(r.verdict == "detected");
        CHECK(r.detector == "d(c4)");
        CHECK(r.degree == 7);
        CHECK(r.order_exp == 1);
        CHECK(r.resolved == "alpha_2");
    }
    SUBCASE("alpha_{3/2} is detected by d(c6) with order 9")
    {
        DetectionRecord r = alpha_family(3, 2, m);
        CHECK(r.verdict == "detected");
        CHECK(r.detector == "d(c6)");
        CHECK(r.order_exp == 2);
    }
    SUBCASE("alpha_{3/1} carries the 3-divided coefficient")
    {
        DetectionRecord r = alpha_family(3, 1, m);
        CHECK(r.detector == "3*d(c6)");
        CHECK(r.order_exp == 1);
    }
    SUBCASE("out-of-range j") { CHECK_THROWS(alpha_family(2, 2, m)); }
}

TEST_CASE("hurewicz records")
{
    const J2Model& m = test_j2();
    auto records = hurewicz_image(m, 200);
    auto find = [&](const std::string& el, int deg) -> const DetectionRecord* {
        for (const auto& r : records)
            if (r.element == el && r.degree == deg)
                return &r;
        return nullptr;
    };
    SUBCASE("beta_2 detected by d(alpha*Delta) in filtration 2")
    {
        const DetectionRecord* r = find("beta_2", 26);
        REQUIRE(r != nullptr);
        CHECK(r->verdict == "detected");
        CHECK(r->detector == "d(alpha*Delta)");
        CHECK(r->filtration == 2);
    }
    SUBCASE("beta_5 detected by the boundary of alpha*Delta^3")
    {
        const DetectionRecord* r = find("beta_5", 74);
        REQUIRE(r != nullptr);
        CHECK(r->verdict == "detected");
        CHECK(r->detector == "d(alpha*Delta^3)");
    }
    SUBCASE("alpha_1 beta_1^2 is not detected")
    {
        const DetectionRecord* r = find("alpha_1*beta_1^2", 23);
        REQUIRE(r != nullptr);
        CHECK(r->verdict == "not-detected");
    }
    SUBCASE("the open class at 153")
    {
        const DetectionRecord* r = find("x_{153,3}", 153);
        REQUIRE(r != nullptr);
        CHECK(r->verdict == "unknown");
        CHECK(r->detector == "d(beta*Delta^6)");
        CHECK(r->filtration == 3);
    }
    SUBCASE("every display element is detected")
    {
        for (const auto& r : records) {
            if (r.family.rfind("(1.", 0) != 0)
                continue;
            INFO(r.element, " in degree ", r.degree);
            CHECK(r.verdict == "detected");
        }
    }
}

TEST_CASE("product verdicts")
{
    const J2Model& m = test_j2();
    SUBCASE("beta_1^3 beta_{6/3} lives in tmf")
    {
        ProductVerdict v = check_product("beta_1^3*beta_{6/3}", m);
        CHECK(v.verdict == "nonzero-in-tmf");
        CHECK(v.label == "beta^4*Delta^3");
    }
    SUBCASE("alpha_1 beta_1 beta_2 is the boundary class d(beta^4)")
    {
        ProductVerdict v = check_product("alpha_1*beta_1*beta_2", m);
        CHECK(v.verdict == "nonzero-in-j2");
        CHECK(v.label == "d(beta^4)");
    }
    SUBCASE("degree-94 vanishing")
    {
        ProductVerdict v = check_product("beta_1*beta_1*beta_5", m);
        CHECK(v.verdict == "zero-in-j2");
    }
    SUBCASE("alpha_1 beta_1^2 vanishes in the model")
    {
        ProductVerdict v = check_product("alpha_1*beta_1^2", m);
        CHECK(v.verdict == "zero-in-j2");
    }
    SUBCASE("a nonexistent factor without its alpha_1 is refused")
    {
        ProductVerdict v = check_product("beta_{7}", m);
        CHECK(v.verdict == "unknown");
    }
    SUBCASE("the alpha_1 composite over beta_7 is detected")
    {
        ProductVerdict v = check_product("alpha_1*beta_7", m);
        CHECK(v.verdict == "nonzero-in-tmf");
        CHECK(v.label == "alpha*beta*Delta^4");
    }
}

TEST_CASE("toda registry integrity")
{
    auto facts = toda_registry();
    CHECK(facts.size() >= 8);
    const auto& anchors = fact_anchors();
    for (const auto& f : facts) {
        CHECK(anchors.count(f.anchor) == 1);
        CHECK(!f.bracket.empty());
        CHECK(!f.value.empty());
    }
    bool beta1 = false, x81 = false, b2b63 = false;
    for (const auto& f : facts) {
        beta1 = beta1 || (f.bracket == "<alpha_1,alpha_1,alpha_1>" && f.value == "beta_1");
        x81 = x81 || f.bracket == "<alpha_1,alpha_1,beta_{5+9t}>";
        b2b63 = b2b63 || f.bracket == "<alpha_1,alpha_1,beta_1^2*x_81>";
    }
    CHECK(beta1);
    CHECK(x81);
    CHECK(b2b63);
}

TEST_CASE("existence catalog")
{
    auto cat = nonexistence_and_status();
    auto find = [&](const std::string& n) -> const FamilyElement* {
        for (const auto& f : cat)
            if (f.name == n)
                return &f;
        return nullptr;
    };
    REQUIRE(find("beta_{7+9t}") != nullptr);
    CHECK(find("beta_{7+9t}")->existence == Existence::does_not_exist);
    REQUIRE(find("beta_{3+9t/3}") != nullptr);
    CHECK(find("beta_{3+9t/3}")->existence == Existence::does_not_exist);
    REQUIRE(find("beta_{5+9t}") != nullptr);
    CHECK(find("beta_{5+9t}")->existence == Existence::exists);
    REQUIRE(find("beta_1") != nullptr);
    CHECK(find("beta_1")->existence == Existence::exists);
    REQUIRE(find("x_{153+144t,3}") != nullptr);
    CHECK(find("x_{153+144t,3}")->existence == Existence::unknown);
}

TEST_CASE("detector periodicity under Delta^6")
{
    const J2Model& m = test_j2();
    auto rows = periodicity_check(m, 2);
    CHECK(!rows.empty());
    for (const auto& r : rows) {
        INFO(r.family, " t=", r.t, ": ", r.lhs, " vs ", r.rhs);
        CHECK(r.pass);
    }
}

TEST_CASE("suites over the unit-test window")
{
    const J2Model& m = test_j2();
    SuiteReport a = theorem_a_suite(m, 250);
    CHECK(a.failures == 0);
    SuiteReport b = theorem_b_suite(m, 250);
    CHECK(b.failures == 0);
    bool four_fold = false;
    for (const auto& r : b.rows)
        four_fold = four_fold || (r.element == "beta_1*beta_1*beta_1*beta_1" && r.verdict == "nonzero-in-tmf");
    CHECK(four_fold);
}

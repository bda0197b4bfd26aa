#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jtwo/graded.hpp"

using namespace jtwo;

namespace {

Mat mat1(long long v)
{
    Mat m(1, 1);
    m.at(0, 0) = Scalar3::from_int(v);
    return m;
}

GradedGroup one_summand(const std::string& label, bool free, int exp)
{
    GradedGroup g;
    g.max_degree = 1;
    if (free)
        g.insert(Summand::free(label, 0, 0));
    else
        g.insert(Summand::torsion(label, exp, 0, 0));
    return g;
}

} // namespace

TEST_CASE("scalar3 arithmetic")
{
    CHECK(Scalar3::from_int(15).val() == 1);
    CHECK(Scalar3::from_int(15).unit() == 5);
    CHECK(Scalar3::from_int(0).is_zero());
    CHECK((Scalar3::from_int(9) + Scalar3::from_int(-9)).is_zero());
    CHECK((Scalar3::from_int(6) + Scalar3::from_int(3)).val() == 2);
    Scalar3 u = Scalar3::from_int(7).unit_inverse();
    CHECK((u * Scalar3::from_int(7)).rep_mod(10) == 1);
    CHECK(Scalar3::two_pow_minus_one(4).rep_mod(4) == 15);
    CHECK(Scalar3::two_pow_minus_one(72).val() == 3);
}

TEST_CASE("smith normal form valuations")
{
    CHECK(smith_normal_form(mat1(3)).diag == std::vector<int>{1});
    CHECK(smith_normal_form(mat1(15)).diag == std::vector<int>{1});
    SUBCASE("identity")
    {
        SnfResult s = smith_normal_form(Mat::identity(2));
        CHECK(s.diag == std::vector<int>{0, 0});
    }
    SUBCASE("reconstruction is exact and the base changes are units")
    {
        Mat a(2, 3);
        long long vals[2][3] = {{6, 4, -27}, {9, 15, 2}};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 3; ++j)
                a.at(i, j) = Scalar3::from_int(vals[i][j]);
        SnfResult s = smith_normal_form(a);
        Mat lhs = s.left * a * s.right;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(lhs.at(i, j).rep_mod(12) == s.d.at(i, j).rep_mod(12));
        /* determinant valuation 0 for the 2x2 left factor */
        Scalar3 det = s.left.at(0, 0) * s.left.at(1, 1) - s.left.at(0, 1) * s.left.at(1, 0);
        CHECK(det.val() == 0);
        CHECK((s.diag[0] <= s.diag[1]));
    }
}

TEST_CASE("kernel examples")
{
    SUBCASE("zero map on a torsion class is the whole class")
    {
        GradedGroup g = one_summand("alpha", false, 1);
        GradedMorphism f{&g, &g, 0, {{0, mat1(0)}}};
        auto k = kernel(f, 0);
        REQUIRE(k.size() == 1);
        CHECK(k[0].label == "alpha");
        CHECK(k[0].torsion_exp == 1);
    }
    SUBCASE("multiplication by a unit times 3 is injective on a free class")
    {
        GradedGroup g = one_summand("c4", true, 0);
        GradedMorphism f{&g, &g, 0, {{0, mat1(15)}}};
        CHECK(kernel(f, 0).empty());
    }
    SUBCASE("degree out of range")
    {
        GradedGroup g = one_summand("x", true, 0);
        GradedMorphism f{&g, &g, 0, {}};
        CHECK_THROWS(kernel(f, 5));
    }
}

TEST_CASE("cokernel examples")
{
    SUBCASE("times 3 on Z/9")
    {
        GradedGroup g = one_summand("x", false, 2);
        GradedMorphism f{&g, &g, 0, {{0, mat1(3)}}};
        auto c = cokernel(f, 0);
        REQUIRE(c.size() == 1);
        CHECK(c[0].label == "d(x)");
        CHECK(c[0].torsion_exp == 1);
    }
    SUBCASE("times 15 on a free class")
    {
        GradedGroup g = one_summand("c4", true, 0);
        GradedMorphism f{&g, &g, 0, {{0, mat1(15)}}};
        auto c = cokernel(f, 0);
        REQUIRE(c.size() == 1);
        CHECK(c[0].label == "d(c4)");
        CHECK(c[0].torsion_exp == 1);
    }
    SUBCASE("times 2^14-1 = 16383 on a free class has cokernel Z/3")
    {
        GradedGroup g = one_summand("c4^2*c6", true, 0);
        GradedMorphism f{&g, &g, 0, {{0, mat1(16383)}}};
        auto c = cokernel(f, 0);
        REQUIRE(c.size() == 1);
        CHECK(c[0].label == "d(c4^2*c6)");
        CHECK(c[0].torsion_exp == 1);
    }
}

TEST_CASE("extension policy")
{
    ExtensionProblem p;
    p.degree = 27;
    p.sub = {Summand::torsion("d(c4^2*c6)", 1, 27, 1)};
    p.quotient = {Summand::torsion("alpha*Delta", 1, 27, 1)};

    SUBCASE("registry rule resolves split")
    {
        GradedGroup base;
        base.max_degree = 30;
        PolicyOutcome o = apply_extension_policy(base, {p}, {{27, 72, Resolution::split, ""}});
        CHECK(o.warned_degrees.empty());
        CHECK(o.group.at(27).size() == 2);
        for (const auto& s : o.group.at(27))
            CHECK(s.torsion_exp == 1);
    }
    SUBCASE("empty problem list leaves the group unchanged")
    {
        GradedGroup base;
        base.max_degree = 30;
        base.insert(Summand::torsion("beta", 1, 10, 2));
        PolicyOutcome o = apply_extension_policy(base, {}, {});
        CHECK(o.group.at(10).size() == 1);
        CHECK(o.warned_degrees.empty());
    }
    SUBCASE("unmatched degree defaults to split with a warning")
    {
        GradedGroup base;
        base.max_degree = 30;
        PolicyOutcome o = apply_extension_policy(base, {p}, {});
        CHECK(o.warned_degrees == std::vector<int>{27});
        CHECK(o.group.at(27).size() == 2);
    }
    SUBCASE("nonsplit pairing")
    {
        auto ss = resolve_extension(p, Resolution::nonsplit);
        REQUIRE(ss.size() == 1);
        CHECK(ss[0].torsion_exp == 2);
    }
}

TEST_CASE("fiber sequence bookkeeping on a mixed morphism")
{
    GradedGroup g;
    g.max_degree = 2;
    g.insert(Summand::free("x", 0, 0));
    g.insert(Summand::torsion("t", 2, 1, 1));
    GradedMorphism f{&g, &g, 0, {}};
    f.blocks[0] = mat1(9);
    f.blocks[1] = mat1(3);
    FiberResult fib = solve_fiber_les(f);
    /* fib_0 = coker_1 + ker_0 = Z/3{d(t)} + 0; fib_{-1} = coker_0 = Z/9 */
    bool dt = false;
    for (const auto& s : fib.group.at(0))
        dt = dt || (s.label == "d(t)" && s.torsion_exp == 1);
    CHECK(dt);
    auto o = order_of(fib.group.at(-1));
    CHECK(o.exp_sum == 2);
    /* |fib_d| = |ker_d| * |coker_{d+1}| */
    for (int d = 0; d <= 1; ++d) {
        GroupOrder lhs = order_of(fib.group.at(d));
        GroupOrder k = order_of(kernel(f, d));
        GroupOrder c = order_of(cokernel(f, d + 1));
        CHECK(lhs.free_rank == k.free_rank + c.free_rank);
        CHECK(lhs.exp_sum == k.exp_sum + c.exp_sum);
    }
}

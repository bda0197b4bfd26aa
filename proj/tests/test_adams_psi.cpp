#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_util.hpp"

#include "jtwo/adams_psi.hpp"

using namespace jtwo;

TEST_CASE("nu3 of 2^d - 1")
{
    CHECK(nu3_2pow_minus_1(2) == 1);
    CHECK(nu3_2pow_minus_1(6) == 2);
    CHECK(nu3_2pow_minus_1(1) == 0);
    SUBCASE("matches the factorization oracle through d = 40")
    {
        for (int d = 1; d <= 40; ++d) {
            long long n = (1LL << d) - 1;
            int v = 0;
            while (n % 3 == 0) {
                n /= 3;
                ++v;
            }
            CHECK(nu3_2pow_minus_1(d) == v);
        }
    }
    CHECK_THROWS(nu3_2pow_minus_1(0));
}

TEST_CASE("psi^2 - 1 blocks")
{
    const TmfTable& T = test_table();
    PsiMinusOne psi = psi_minus_one(T, 40);
    SUBCASE("degree 8: multiplication by 15 on c4")
    {
        Mat b = psi.map.block_at(8);
        REQUIRE(b.rows == 1);
        CHECK(b.at(0, 0).rep_mod(6) == 15);
    }
    SUBCASE("degree 3: zero on alpha")
    {
        Mat b = psi.map.block_at(3);
        REQUIRE(b.rows == 1);
        CHECK(b.at(0, 0).is_zero());
    }
    SUBCASE("degree 0: zero on the unit")
    {
        Mat b = psi.map.block_at(0);
        REQUIRE(b.rows == 1);
        CHECK(b.at(0, 0).is_zero());
    }
}

TEST_CASE("homotopy of the equalizer")
{
    const TmfTable& T = test_table();
    TmfPsiResult r = compute_tmf_psi(T, 150);

    SUBCASE("degree 143 is 27-torsion of rank 7")
    {
        const auto& ss = r.group.at(143);
        REQUIRE(ss.size() == 7);
        for (const auto& s : ss) {
            CHECK(!s.is_free);
            CHECK(s.torsion_exp == 3);
            CHECK(s.prov == Prov::boundary);
            CHECK(s.filtration == 1);
        }
    }
    SUBCASE("degree 144 vanishes") { CHECK(r.group.at(144).empty()); }
    SUBCASE("degree 26 carries the boundary of alpha Delta at filtration 2")
    {
        const auto& ss = r.group.at(26);
        REQUIRE(ss.size() == 1);
        CHECK(ss[0].label == "d(alpha*Delta)");
        CHECK(ss[0].filtration == 2);
    }
    SUBCASE("degree 7 is Z/3 on d(c4)")
    {
        const auto& ss = r.group.at(7);
        REQUIRE(ss.size() == 1);
        CHECK(ss[0].label == "d(c4)");
        CHECK(ss[0].torsion_exp == 1);
    }
    SUBCASE("degree 23 is Z/9 + Z/9")
    {
        const auto& ss = r.group.at(23);
        REQUIRE(ss.size() == 2);
        for (const auto& s : ss)
            CHECK(s.torsion_exp == 2);
    }
    SUBCASE("extension problems appear exactly at 27 and 3 mod 72 (from 75)")
    {
        for (const auto& p : r.problems) {
            int res = p.degree % 72;
            CHECK((res == 27 || (res == 3 && p.degree >= 75)));
        }
        bool has27 = false, has75 = false;
        for (const auto& p : r.problems) {
            has27 = has27 || p.degree == 27;
            has75 = has75 || p.degree == 75;
        }
        CHECK(has27);
        CHECK(has75);
    }
}

TEST_CASE("alpha-family cokernel orders cross-check")
{
    const TmfTable& T = test_table();
    TmfPsiResult r = compute_tmf_psi(T, 204);
    for (int i = 2; i <= 50; ++i) {
        int want = nu3(i) + 1;
        bool found = false;
        for (const auto& s : r.group.at(4 * i - 1))
            if (s.prov == Prov::boundary) {
                found = true;
                CHECK(s.torsion_exp == want);
            }
        for (const auto& p : r.problems)
            if (p.degree == 4 * i - 1)
                for (const auto& s : p.sub) {
                    found = true;
                    CHECK(s.torsion_exp == want);
                }
        CHECK(found);
    }
}

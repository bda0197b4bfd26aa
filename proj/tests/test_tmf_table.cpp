#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "test_util.hpp"

using namespace jtwo;

TEST_CASE("torsion table by degree")
{
    const TmfTable& T = test_table();
    auto deg3 = T.torsion_at(3);
    REQUIRE(deg3.size() == 1);
    CHECK(deg3[0].label() == "alpha");
    CHECK(T.filtration(deg3[0]) == 1);

    auto deg10 = T.torsion_at(10);
    REQUIRE(deg10.size() == 1);
    CHECK(deg10[0].label() == "beta");
    CHECK(T.filtration(deg10[0]) == 2);

    auto deg27 = T.torsion_at(27);
    REQUIRE(deg27.size() == 1);
    CHECK(deg27[0].label() == "alpha*Delta");

    CHECK(T.torsion_at(23).empty());
    CHECK(T.torsion_at(50).empty());
    /* the gap above 40 up to the next period */
    for (int d = 41; d <= 72; ++d)
        CHECK(T.torsion_at(d).empty());
}

TEST_CASE("Delta^3 periodicity of the torsion")
{
    const TmfTable& T = test_table();
    for (int d = 1; d + 72 <= 300; ++d) {
        auto a = T.torsion_at(d);
        auto b = T.torsion_at(d + 72);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) {
            TorsionMonomial shifted = a[i];
            shifted.j += 3;
            CHECK(shifted == b[i]);
        }
    }
}

TEST_CASE("free basis enumeration")
{
    const TmfTable& T = test_table();
    SUBCASE("degree 28 is spanned by c4^2 c6")
    {
        auto b = T.free_basis(28);
        REQUIRE(b.size() == 1);
        CHECK(b[0].label() == "c4^2*c6");
        CHECK(b[0].e == 0);
    }
    SUBCASE("degree 8 is spanned by c4")
    {
        auto b = T.free_basis(8);
        REQUIRE(b.size() == 1);
        CHECK(b[0].label() == "c4");
    }
    SUBCASE("no weight-2 forms") { CHECK(T.free_basis(4).empty()); }
    SUBCASE("pure Delta powers carry a 3")
    {
        auto b24 = T.free_basis(24);
        REQUIRE(b24.size() == 2);
        CHECK(b24[0].label() == "c4^3");
        CHECK(b24[1].label() == "3*Delta");
        auto b144 = T.free_basis(144);
        bool plain_delta6 = false;
        for (const auto& m : b144)
            plain_delta6 = plain_delta6 || m.label() == "Delta^6";
        CHECK(plain_delta6);
        CHECK(b144.size() == 7);
    }
    SUBCASE("odd and off-lattice degrees are empty")
    {
        CHECK(T.free_basis(7).empty());
        CHECK(T.free_basis(18).empty());
    }
}

TEST_CASE("multiplication")
{
    const TmfTable& T = test_table();
    SUBCASE("unit law")
    {
        Element x = Element::torsion_gen(TorsionMonomial{0, 1, 0});
        Element one = Element::unit();
        CHECK(T.multiply(one, x).torsion_part == x.torsion_part);
    }
    SUBCASE("the exotic product alpha * alpha Delta = beta^3")
    {
        Element p = T.multiply_labels("alpha", "alpha*Delta");
        REQUIRE(p.torsion_part.size() == 1);
        CHECK(p.torsion_part.begin()->first.label() == "beta^3");
    }
    SUBCASE("beta^4 Delta^6 is nonzero")
    {
        Element p = T.multiply_labels("beta^4", "Delta^6");
        REQUIRE(p.torsion_part.size() == 1);
        CHECK(p.torsion_part.begin()->first.label() == "beta^4*Delta^6");
    }
    SUBCASE("beta kills beta^4")
    {
        MulFlags f;
        Element p = T.multiply_labels("beta", "beta^4", &f);
        CHECK(p.is_zero());
        CHECK(!f.table_default);
    }
    SUBCASE("c4 annihilates torsion")
    {
        CHECK(T.multiply_labels("c4", "alpha").is_zero());
        CHECK(T.multiply_labels("c4", "beta").is_zero());
    }
    SUBCASE("3 Delta annihilates torsion but multiplies into the free part")
    {
        CHECK(T.multiply_labels("3*Delta", "alpha").is_zero());
        Element p = T.multiply_labels("3*Delta", "3*Delta");
        REQUIRE(p.free_part.size() == 1);
        CHECK(p.free_part.begin()->first.label() == "3*Delta^2");
        CHECK(p.free_part.begin()->second == 3);
    }
    SUBCASE("c6 squares through the Weierstrass relation")
    {
        Element p = T.multiply_labels("c6", "c6");
        REQUIRE(p.free_part.size() == 2);
        long long c43 = 0, d3 = 0;
        for (const auto& [m, c] : p.free_part) {
            if (m.label() == "c4^3")
                c43 = c;
            if (m.label() == "3*Delta")
                d3 = c;
        }
        CHECK(c43 == 1);
        CHECK(d3 == -576);
    }
    SUBCASE("beta Delta^3 times alpha Delta")
    {
        Element p = T.multiply_labels("beta*Delta^3", "alpha*Delta");
        REQUIRE(p.torsion_part.size() == 1);
        CHECK(p.torsion_part.begin()->first.label() == "alpha*beta*Delta^4");
    }
}

TEST_CASE("associativity on table generators up to degree 200")
{
    const TmfTable& T = test_table();
    std::vector<Element> gens;
    for (int d = 1; d <= 200; ++d) {
        for (const auto& m : T.free_basis(d))
            gens.push_back(Element::free_gen(m));
        for (const auto& t : T.torsion_at(d))
            gens.push_back(Element::torsion_gen(t));
    }
    auto deg = [](const Element& e) {
        if (!e.free_part.empty())
            return e.free_part.begin()->first.degree();
        return e.torsion_part.begin()->first.degree();
    };
    int checked = 0;
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i; j < gens.size(); ++j)
            for (size_t k = j; k < gens.size(); ++k) {
                if (deg(gens[i]) + deg(gens[j]) + deg(gens[k]) > 200)
                    continue;
                Element l = T.multiply(T.multiply(gens[i], gens[j]), gens[k]);
                Element r = T.multiply(gens[i], T.multiply(gens[j], gens[k]));
                CHECK(l.free_part == r.free_part);
                CHECK(l.torsion_part == r.torsion_part);
                ++checked;
            }
    CHECK(checked > 100);
}

TEST_CASE("q expansion")
{
    const TmfTable& T = test_table();
    CHECK(T.q_expansion(Element::free_gen(FreeMonomial{0, 1, 0, 0})).str() == "u^2");
    CHECK(T.q_expansion(Element::free_gen(FreeMonomial{1, 0, 0, 1})).is_zero());
    CHECK(T.q_expansion(Element::free_gen(FreeMonomial{0, 1, 1, 2})).is_zero());
    CHECK(T.q_expansion(Element::torsion_gen(TorsionMonomial{1, 0, 0})).is_zero());
    CHECK(T.q_expansion(Element::unit()).str() == "1");
}

TEST_CASE("Delta^3 multiplication is injective on torsion")
{
    const TmfTable& T = test_table();
    Element d3 = Element::free_gen(FreeMonomial{0, 0, 0, 3});
    for (int d = 1; d <= 220; ++d)
        for (const auto& t : T.torsion_at(d)) {
            Element p = T.multiply(d3, Element::torsion_gen(t));
            REQUIRE(p.torsion_part.size() == 1);
            TorsionMonomial expect = t;
            expect.j += 3;
            CHECK(p.torsion_part.begin()->first == expect);
        }
}

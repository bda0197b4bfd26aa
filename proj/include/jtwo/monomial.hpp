#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>

namespace jtwo {

/* 3^e * c4^a * c6^b * Delta^c. Topological degree 8a+12b+24c, so the class
 * sits in degree 2w for modular weight w = 4a+6b+12c; psi^2 scales it by
 * 2^w. As a label the exponent b is unconstrained; the monomial basis of
 * each degree keeps b <= 1 and c6^2 reduces to c4^3 - 1728*Delta. */
struct FreeMonomial {
    int e = 0, a = 0, b = 0, c = 0;

    int degree() const { return 8 * a + 12 * b + 24 * c; }
    int weight() const { return 4 * a + 6 * b + 12 * c; }
    auto operator<=>(const FreeMonomial&) const = default;

    std::string label() const;
    static std::optional<FreeMonomial> parse(const std::string& s);
};

/* alpha^eps * beta^k * Delta^j, eps in {0,1} */
struct TorsionMonomial {
    int eps = 0, k = 0, j = 0;

    int degree() const { return 3 * eps + 10 * k + 24 * j; }
    int filtration() const { return eps + 2 * k; }
    bool is_unit() const { return eps == 0 && k == 0 && j == 0; }
    auto operator<=>(const TorsionMonomial&) const = default;

    std::string label() const;
    static std::optional<TorsionMonomial> parse(const std::string& s);
};

/* an element of the tmf model: integer combination of basis free monomials
 * plus an F3 combination of torsion monomials */
struct Element {
    std::map<FreeMonomial, long long> free_part;
    std::map<TorsionMonomial, int> torsion_part; /* coefficients mod 3 */
    bool table_default = false; /* some product step was resolved by default */

    bool is_zero() const { return free_part.empty() && torsion_part.empty(); }
    static Element zero() { return {}; }
    static Element unit();
    static Element free_gen(FreeMonomial m, long long coeff = 1);
    static Element torsion_gen(TorsionMonomial m, int coeff = 1);
    Element& add_free(FreeMonomial m, long long coeff);
    Element& add_torsion(TorsionMonomial m, int coeff);
    std::string str() const;
};

/* q-expansion image: integer multiples of Bott-class powers u^k */
struct KoElement {
    std::map<int, long long> terms; /* u-power -> coefficient */
    bool is_zero() const { return terms.empty(); }
    std::string str() const;
};

} // namespace jtwo

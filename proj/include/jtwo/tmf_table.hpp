#pragma once

#include "jtwo/graded.hpp"
#include "jtwo/monomial.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace jtwo {

struct TorsionSeed {
    TorsionMonomial m;
    int order_exp = 1;
    int filtration = 0;
};

/* e(a,b,c): which 3-power makes 3^e c4^a c6^b Delta^c a homotopy class.
 * Flags: '0' requires the exponent to vanish, '+' to be positive, '*' any;
 * cmod matches c modulo 3 ('*' = -1). First matching rule wins. */
struct FreeRule {
    char af = '*', bf = '*';
    int cmod = -1;
    int e = 0;
};

struct ExoticProduct {
    TorsionMonomial lhs, rhs, result;
    std::string anchor;
};

/* v1 * tilde(pattern) on the mod-3 model; pattern Delta exponent is matched
 * modulo 3. Only zero values ship; the anchor names the imported argument. */
struct V1Exception {
    TorsionMonomial pattern;
    std::string anchor;
};

/* tilde classes carrying a formal E2-level v1-expression which makes them
 * fixed under psi^2 */
struct PsiFixedTilde {
    TorsionMonomial pattern;
    std::string expression;
    std::string anchor;
};

struct SphereEntry {
    std::string label;
    int degree = 0;
    bool is_free = false;
    int order_exp = 0;
    int filtration = 0;
};

struct TmfData {
    std::vector<TorsionSeed> torsion_seed;
    std::vector<FreeRule> free_rules;
    std::vector<ExoticProduct> products;
    std::vector<V1Exception> v1_exceptions;
    std::vector<PsiFixedTilde> psi_fixed;
    std::vector<SphereEntry> sphere;
    int sphere_bound = 0;
    std::map<std::string, std::vector<std::string>> fixtures;
};

TmfData parse_tmf_data(const std::string& path);

struct MulFlags {
    bool table_default = false;
};

class TmfTable {
public:
    TmfTable(TmfData data, int max_degree);

    int max_degree() const { return max_degree_; }
    const TmfData& data() const { return data_; }

    bool torsion_alive(const TorsionMonomial& t) const;
    std::vector<TorsionMonomial> torsion_at(int d) const;
    std::vector<FreeMonomial> free_basis(int d) const;
    int coeff_exp(int a, int b, int c) const;
    int filtration(const TorsionMonomial& t) const;

    /* the whole graded group up to degree bound (torsion + free, AN filtration) */
    GradedGroup graded_group(int bound) const;

    Element multiply(const Element& x, const Element& y, MulFlags* flags = nullptr) const;
    Element multiply_labels(const std::string& x, const std::string& y, MulFlags* flags = nullptr) const;
    KoElement q_expansion(const Element& x) const;

    /* element for a generator label, free or torsion */
    std::optional<Element> element_for_label(const std::string& s) const;

private:
    Element reduce_raw_free(long long n, int a, int b, int c) const;
    Element mul_torsion(const TorsionMonomial& x, const TorsionMonomial& y, int coeff, MulFlags* flags) const;

    TmfData data_;
    int max_degree_;
    std::set<std::tuple<int, int, int>> seed_keys_;            /* (eps,k,j mod 3) */
    std::map<std::tuple<int, int, int>, TorsionSeed> by_key_;  /* same key */
    int exotic_dk_ = 0, exotic_dj_ = 0;                        /* alpha^2 rewrite */
    bool have_exotic_ = false;
};

TmfTable load_tmf(int max_degree, const std::string& data_path);

} // namespace jtwo

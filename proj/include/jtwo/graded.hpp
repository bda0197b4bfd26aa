#pragma once

#include "jtwo/scalar3.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace jtwo {

enum class Prov { none, sphere_low, ker_lift, boundary };

/* One cyclic summand: 3-locally free of rank 1, or Z/3^k. */
struct Summand {
    std::string label;
    bool is_free = false;
    int torsion_exp = 0; /* k >= 1 when torsion */
    int degree = 0;
    int filtration = 0;
    Prov prov = Prov::none;

    static Summand free(std::string label, int degree, int filtration, Prov p = Prov::none)
    {
        return Summand{std::move(label), true, 0, degree, filtration, p};
    }
    static Summand torsion(std::string label, int exp, int degree, int filtration, Prov p = Prov::none)
    {
        return Summand{std::move(label), false, exp, degree, filtration, p};
    }
};

/* total 3-group order of a summand list, as (free rank, sum of exponents) */
struct GroupOrder {
    long long free_rank = 0;
    long long exp_sum = 0;
    bool operator==(const GroupOrder&) const = default;
};

GroupOrder order_of(const std::vector<Summand>& s);

struct GradedGroup {
    int max_degree = 0;
    std::map<int, std::vector<Summand>> degrees;

    const std::vector<Summand>& at(int d) const;
    void insert(Summand s);
    void check_invariants() const; /* degree bound + global label uniqueness */
};

struct Mat {
    int rows = 0, cols = 0;
    std::vector<Scalar3> e;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), e((size_t)r * c) {}
    Scalar3& at(int r, int c) { return e[(size_t)r * cols + c]; }
    const Scalar3& at(int r, int c) const { return e[(size_t)r * cols + c]; }
    static Mat identity(int n);
    Mat operator*(const Mat& o) const;
};

/* left * input * right = d, with left/right invertible over the 3-local
 * integers. diag holds the valuations of the diagonal entries (kInfVal for a
 * zero diagonal entry); pivot_rows[i] is the input row that produced diagonal
 * entry i, for label bookkeeping. */
struct SnfResult {
    Mat d, left, right;
    std::vector<int> diag;
    std::vector<int> pivot_rows;
    std::vector<int> pivot_cols;
    int rank = 0; /* number of finite-valuation diagonal entries */
};

SnfResult smith_normal_form(const Mat& a);

struct GradedMorphism {
    const GradedGroup* source = nullptr;
    const GradedGroup* target = nullptr;
    int degree_shift = 0;
    std::map<int, Mat> blocks; /* keyed by source degree */

    Mat block_at(int d) const; /* zero-filled when absent */
};

GradedMorphism compose(const GradedMorphism& g, const GradedMorphism& f);

/* kernel of the map out of source degree d, as a summand list */
std::vector<Summand> kernel(const GradedMorphism& m, int d);

/* cokernel in target degree d; labels get the boundary marker d(...) */
std::vector<Summand> cokernel(const GradedMorphism& m, int d);

enum class Resolution { unresolved, split, nonsplit };

struct ExtensionProblem {
    std::vector<Summand> sub;      /* cokernel part, injects */
    std::vector<Summand> quotient; /* kernel part */
    int degree = 0;
    Resolution resolution = Resolution::unresolved;
};

/* fib_d sits in 0 -> coker(f)_{d+1} -> fib_d -> ker(f)_d -> 0 */
struct FiberResult {
    GradedGroup group; /* unambiguous degrees only */
    std::vector<ExtensionProblem> problems;
};

FiberResult solve_fiber_les(const GradedMorphism& f);

struct ExtensionRule {
    int residue = 0;
    int modulus = 1;
    Resolution resolution = Resolution::split;
    std::string why;
};

struct PolicyOutcome {
    GradedGroup group;
    std::vector<int> warned_degrees; /* resolved by the default, not a rule */
};

PolicyOutcome apply_extension_policy(const GradedGroup& base,
                                     const std::vector<ExtensionProblem>& problems,
                                     const std::vector<ExtensionRule>& registry);

/* summands of the resolved extension */
std::vector<Summand> resolve_extension(const ExtensionProblem& p, Resolution how);

} // namespace jtwo

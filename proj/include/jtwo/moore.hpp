#pragma once

#include "jtwo/graded.hpp"
#include "jtwo/tmf_table.hpp"

#include <functional>
#include <optional>

namespace jtwo {

enum class QKind { bar, tilde, q1, tilde1 };

struct QClass {
    QKind kind = QKind::bar;
    std::string base;  /* label of the underlying class */
    int degree = 0;    /* stem in the quotient model */
    int filtration = 0;
    int order_exp = 1;
    std::string label;

    static std::string render(QKind k, const std::string& base);
};

struct QuotientModel {
    std::string ideal;
    int max_degree = 0;
    std::map<int, std::vector<QClass>> classes;

    const std::vector<QClass>& at(int d) const;
    int dim(int d) const;
    const QClass* find(const std::string& label, int d) const;
};

/* X/3^r via the multiplication-by-3^r LES: bars of pi_d X, tildes of the
 * torsion of pi_{d-1} X. Bar classes keep the filtration, tildes sit one
 * lower. */
QuotientModel mod3r(const GradedGroup& base, int r, int max_degree);

/* value of v1 * x in a mod-3 model */
struct V1Value {
    enum Kind { zero, cls, unknown } kind = zero;
    std::string label; /* for cls */
    V1Value() = default;
    static V1Value mk_zero() { return {}; }
    static V1Value mk_cls(std::string l)
    {
        V1Value v;
        v.kind = cls;
        v.label = std::move(l);
        return v;
    }
    static V1Value mk_unknown()
    {
        V1Value v;
        v.kind = unknown;
        return v;
    }
};

/* F3 matrices for the mod-3 long exact sequences */
struct F3Mat {
    int rows = 0, cols = 0;
    std::vector<int> e;
    F3Mat() = default;
    F3Mat(int r, int c) : rows(r), cols(c), e((size_t)r * c, 0) {}
    int& at(int r, int c) { return e[(size_t)r * cols + c]; }
    int at(int r, int c) const { return e[(size_t)r * cols + c]; }
};

int f3_rank(F3Mat m);
F3Mat f3_mul(const F3Mat& a, const F3Mat& b);

/* tmf/3 with its v1-action. The action on bar classes follows the boundary
 * rule (v1 * q0(f) lifts alpha*f when that is nonzero) and the v1^2 = c4-bar,
 * v1^3 = c6-bar composites on the free part; tilde classes follow the
 * exceptional data entries and the beta-factorisation of unique tildes. */
class Mod3Tmf {
public:
    Mod3Tmf(const TmfTable& table, int max_stem);

    const QuotientModel& model() const { return model_; }
    const TmfTable& table() const { return *table_; }

    V1Value v1(const QClass& c) const;
    /* matrix of v1: pi_s -> pi_{s+4}; throws if some value is unknown */
    F3Mat v1_matrix(int stem) const;
    /* matrix of v1^j: pi_s -> pi_{s+4j} */
    F3Mat v1_power_matrix(int stem, int j) const;

private:
    const TmfTable* table_;
    QuotientModel model_;
};

/* j^2/3 on top of tmf/3. Classes coming from boundary summands are moved
 * through the boundary map of the fiber sequence, which is v1-linear; stems
 * where the projection to tmf/3 is an isomorphism are conjugated through it.
 * Anything else is refused loudly. */
class Mod3J2 {
public:
    Mod3J2(const GradedGroup& j2, const Mod3Tmf& tmf3, int max_stem);

    const QuotientModel& model() const { return model_; }
    F3Mat v1_matrix(int stem) const;
    F3Mat v1_power_matrix(int stem, int j) const;

private:
    bool stem_pure_boundary(int s) const;
    bool stem_projection_iso(int s) const;

    const GradedGroup* j2_;
    const Mod3Tmf* tmf3_;
    QuotientModel model_;
};

/* X/(3, v1^j) via the v1^j LES on X/3, over stems [min_stem, max_stem].
 * For the j2 model the window must stay above the splice, where the
 * boundary/projection description of the v1-action applies. */
template <class M3>
QuotientModel mod_v1j(const M3& m, int j, int max_stem, int min_stem = 0);

struct InjectivityRow {
    int big_degree = 0; /* the 144-multiple consulted */
    int j = 0;
    int source_dim = 0;
    bool injective = false;
    bool predicted_mod18 = false; /* injective per the mod-18 residue claim */
    bool predicted_mod36 = false;
    bool in_window = true; /* false for supplementary rows beyond the window */
};

struct InjectivityReport {
    std::vector<InjectivityRow> rows;
    std::vector<int> failing_js_in_window;
    bool matches_mod18 = false;
    bool matches_mod36 = false;
    std::string verdict; /* which modulus the computation supports */
};

/* injectivity of v1^j : pi_{D-4j-2} tmf/3 -> pi_{D-2} tmf/3 at the
 * 144-multiples D <= max_degree, j in [0, jmax], plus one supplementary j
 * beyond the window that separates the two residue readings */
InjectivityReport v1_injectivity_report(const Mod3Tmf& m, int max_degree, int jmax);

struct LiftStep {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct LiftReport {
    std::vector<LiftStep> steps;
    bool all_pass = false;
};

/* the degree-144 periodicity lift chain */
LiftReport verify_periodicity_lift(const TmfTable& table, const GradedGroup& j2);

} // namespace jtwo

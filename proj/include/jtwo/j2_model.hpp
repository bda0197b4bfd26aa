#pragma once

#include "jtwo/adams_psi.hpp"
#include "jtwo/graded.hpp"
#include "jtwo/moore.hpp"
#include "jtwo/tmf_table.hpp"

#include <optional>

namespace jtwo {

struct SphereTable {
    GradedGroup g; /* 3-local stable stems, degrees <= bound */
    int bound = 22;
};

SphereTable sphere_from_data(const TmfData& d);

/* outcome of the mod-3 dimension count for one extension problem */
struct OracleOutcome {
    Resolution resolution = Resolution::unresolved;
    int dim_computed = 0;
    int dim_split = 0;
    int dim_nonsplit = 0;
    bool inconclusive = false;
};

struct J2Model {
    GradedGroup g;
    int max_degree = 0;
    const TmfTable* tmf = nullptr;
    /* tmf^psi label -> sphere label on the low-degree window */
    std::map<std::string, std::string> seam_alias;
    std::vector<int> policy_warnings; /* degrees resolved by the default rule */
    std::vector<OracleOutcome> oracle_log;

    const Summand* find(const std::string& label, int degree) const;
};

/* splice of the sphere table below degree 23 with tmf^psi above, extensions
 * resolved by the registry (d = 27 mod 72 splits) and audited degreewise by
 * the mod-3 dimension count */
J2Model assemble_j2(const TmfTable& table, const SphereTable& sphere, int max_degree);

/* dim pi_d(j2/3) by the five-term sequence through tmf/3, compared against
 * the split and maximal-nonsplit candidates */
OracleOutcome resolve_extension_via_mod3(const TmfTable& table, const ExtensionProblem& p,
                                         const std::vector<Summand>& j2_below);

/* psi^2 on the mod-3 model: identity on bars; tilde classes resolved by the
 * registry expressions, by v1-linearity, or by the absence of bars in their
 * stem. Unresolved labels are returned, never guessed. */
std::vector<std::string> psi_on_mod3_unresolved(const TmfTable& table, const QuotientModel& mod3);

struct J2Product {
    enum Kind { zero, cls, unknown } kind = zero;
    std::string label;     /* j2 summand label when kind == cls */
    bool via_tmf = false;  /* the product stayed in the tmf-lift part */
    bool exact = true;     /* false when a table-default zero was used */
};

/* product of two classes named by J2Model labels (seam aliases accepted) */
J2Product multiply_j2(const J2Model& m, const std::string& x, int dx, const std::string& y, int dy);

} // namespace jtwo

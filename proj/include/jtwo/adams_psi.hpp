#pragma once

#include "jtwo/graded.hpp"
#include "jtwo/tmf_table.hpp"

#include <memory>
#include <stdexcept>

namespace jtwo {

/* nu_3(2^d - 1): 0 for odd d, else 1 + nu_3(d/2) */
int nu3_2pow_minus_1(int d);

/* psi^2 - 1 on the tmf model: zero on torsion, 2^{d/2}-1 on a free class of
 * degree d. The returned morphism owns its (shared) source group. */
struct PsiMinusOne {
    std::shared_ptr<GradedGroup> group; /* tmf up to bound */
    GradedMorphism map;                 /* degree shift 0 */
};

PsiMinusOne psi_minus_one(const TmfTable& table, int bound);

/* homotopy of the equalizer, via the fiber sequence LES. Boundary classes are
 * d(...)-labelled with synthetic filtration bumped by one; kernel classes
 * keep their tmf names. Extension problems are returned unresolved. */
struct TmfPsiResult {
    GradedGroup group; /* unambiguous degrees */
    std::vector<ExtensionProblem> problems;
};

TmfPsiResult compute_tmf_psi(const TmfTable& table, int max_degree);

} // namespace jtwo

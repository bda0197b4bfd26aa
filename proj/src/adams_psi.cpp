#include "jtwo/adams_psi.hpp"

namespace jtwo {

int nu3_2pow_minus_1(int d)
{
    if (d <= 0)
        throw std::invalid_argument("nu3_2pow_minus_1 wants d >= 1");
    if (d % 2 != 0)
        return 0;
    return 1 + nu3(d / 2);
}

PsiMinusOne psi_minus_one(const TmfTable& table, int bound)
{
    PsiMinusOne r;
    r.group = std::make_shared<GradedGroup>(table.graded_group(bound));
    r.map.source = r.group.get();
    r.map.target = r.group.get();
    r.map.degree_shift = 0;
    for (int d = 0; d <= bound; ++d) {
        const auto& ss = r.group->at(d);
        int n = (int)ss.size();
        if (n == 0)
            continue;
        Mat m(n, n);
        for (int i = 0; i < n; ++i) {
            if (!ss[i].is_free)
                continue; /* psi^2 fixes torsion */
            if (d == 0)
                continue; /* 2^0 - 1 = 0 on the unit */
            m.at(i, i) = Scalar3::two_pow_minus_one(d / 2);
        }
        r.map.blocks[d] = std::move(m);
    }
    return r;
}

TmfPsiResult compute_tmf_psi(const TmfTable& table, int max_degree)
{
    PsiMinusOne psi = psi_minus_one(table, max_degree + 1);
    FiberResult fib = solve_fiber_les(psi.map);
    TmfPsiResult out;
    out.group.max_degree = max_degree;
    for (auto& [d, ss] : fib.group.degrees) {
        if (d < 0 || d > max_degree)
            continue;
        for (auto& s : ss) {
            Summand t = s;
            if (t.label.rfind("d(", 0) == 0) {
                t.prov = Prov::boundary;
                t.filtration += 1;
            } else {
                t.prov = Prov::ker_lift;
            }
            out.group.insert(std::move(t));
        }
    }
    for (auto& p : fib.problems) {
        if (p.degree < 0 || p.degree > max_degree)
            continue;
        ExtensionProblem q = p;
        for (auto& s : q.sub) {
            s.prov = Prov::boundary;
            s.filtration += 1;
        }
        for (auto& s : q.quotient)
            s.prov = Prov::ker_lift;
        out.problems.push_back(std::move(q));
    }
    return out;
}

} // namespace jtwo

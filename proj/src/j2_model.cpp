#include "jtwo/j2_model.hpp"

#include <algorithm>
#include <stdexcept>

namespace jtwo {

SphereTable sphere_from_data(const TmfData& d)
{
    SphereTable s;
    int bound = d.sphere_bound;
    for (const auto& e : d.sphere)
        bound = std::max(bound, e.degree);
    s.bound = bound;
    s.g.max_degree = bound;
    for (const auto& e : d.sphere) {
        if (e.is_free)
            s.g.insert(Summand::free(e.label, e.degree, e.filtration, Prov::sphere_low));
        else
            s.g.insert(Summand::torsion(e.label, e.order_exp, e.degree, e.filtration, Prov::sphere_low));
    }
    s.g.check_invariants();
    return s;
}

const Summand* J2Model::find(const std::string& label, int degree) const
{
    for (const auto& s : g.at(degree))
        if (s.label == label)
            return &s;
    auto it = seam_alias.find(label);
    if (it != seam_alias.end())
        for (const auto& s : g.at(degree))
            if (s.label == it->second)
                return &s;
    return nullptr;
}

std::vector<std::string> psi_on_mod3_unresolved(const TmfTable& table, const QuotientModel& mod3)
{
    std::vector<std::string> unresolved;
    for (const auto& [d, cs] : mod3.classes) {
        bool stem_has_bars = false;
        for (const auto& c : cs)
            stem_has_bars = stem_has_bars || c.kind == QKind::bar;
        for (const auto& c : cs) {
            if (c.kind != QKind::tilde)
                continue; /* bars of psi-fixed classes are fixed */
            if (!stem_has_bars)
                continue; /* no room for a correction term */
            auto t = TorsionMonomial::parse(c.base);
            if (!t) {
                unresolved.push_back(c.label);
                continue;
            }
            bool fixed = false;
            if (t->eps == 1 && t->k == 0 && t->j % 3 == 0)
                fixed = true; /* v1 * bar(Delta^{3m}), and psi fixes both */
            for (const auto& pf : table.data().psi_fixed)
                if (pf.pattern.eps == t->eps && pf.pattern.k == t->k && pf.pattern.j % 3 == t->j % 3)
                    fixed = true;
            if (!fixed && t->eps == 1 && t->k >= 1 && cs.size() == 1)
                fixed = true; /* beta-bar^k times a resolved alpha-tilde */
            if (!fixed)
                unresolved.push_back(c.label);
        }
    }
    return unresolved;
}

OracleOutcome resolve_extension_via_mod3(const TmfTable& table, const ExtensionProblem& p,
                                         const std::vector<Summand>& j2_below)
{
    OracleOutcome out;
    int d = p.degree;
    Mod3Tmf m3(table, d + 2);
    auto unresolved = psi_on_mod3_unresolved(table, m3.model());
    for (const auto& u : unresolved)
        throw std::runtime_error("psi^2 unresolved on " + u + " while resolving degree " + std::to_string(d));

    /* psi^2 - 1 vanishes on the mod-3 model, so the five-term sequence
     * 0 -> pi_{d+1} tmf/3 -> pi_d j2/3 -> pi_d tmf/3 -> 0 is exact */
    out.dim_computed = m3.model().dim(d + 1) + m3.model().dim(d);

    auto tor_dim = [](const std::vector<Summand>& ss) {
        int n = 0;
        for (const auto& s : ss)
            if (!s.is_free)
                ++n;
        return n;
    };
    int below_tor = tor_dim(j2_below);

    std::vector<Summand> split = resolve_extension(p, Resolution::split);
    std::vector<Summand> nonsplit = resolve_extension(p, Resolution::nonsplit);
    out.dim_split = (int)split.size() + below_tor;       /* tensor + Tor(pi_{d-1}) */
    out.dim_nonsplit = (int)nonsplit.size() + below_tor; /* all summands torsion here */

    bool s = out.dim_computed == out.dim_split;
    bool n = out.dim_computed == out.dim_nonsplit;
    if (s && !n)
        out.resolution = Resolution::split;
    else if (n && !s)
        out.resolution = Resolution::nonsplit;
    else if (s && n) {
        out.resolution = Resolution::split;
        out.inconclusive = true;
    } else {
        throw std::runtime_error("extension oracle at degree " + std::to_string(d) +
                                 " matches neither candidate: computed dim " + std::to_string(out.dim_computed));
    }
    return out;
}

J2Model assemble_j2(const TmfTable& table, const SphereTable& sphere, int max_degree)
{
    if (sphere.bound < 22)
        throw std::runtime_error("sphere table must reach degree 22");
    J2Model model;
    model.max_degree = max_degree;
    model.tmf = &table;

    TmfPsiResult psi = compute_tmf_psi(table, max_degree);

    /* splice: sphere below 23, equalizer from 23 up */
    model.g.max_degree = max_degree;
    for (const auto& [d, ss] : sphere.g.degrees) {
        if (d > 22 || d > max_degree)
            continue;
        for (const auto& s : ss)
            model.g.insert(s);
    }

    /* seam consistency: in the overlap window the two descriptions agree */
    for (int d = 20; d <= std::min(22, max_degree); ++d) {
        auto a = order_of(sphere.g.at(d));
        auto b = order_of(psi.group.at(d));
        if (!(a == b))
            throw std::runtime_error("seam mismatch at degree " + std::to_string(d));
    }

    /* registry: the 27 mod 72 family splits; the 3 mod 72 family carries no
     * stated rule and falls to the audited default */
    std::vector<ExtensionRule> registry{{27, 72, Resolution::split, "dimension count at 27 mod 72"}};

    GradedGroup high;
    high.max_degree = max_degree;
    for (const auto& [d, ss] : psi.group.degrees) {
        if (d < 23)
            continue;
        for (const auto& s : ss)
            high.insert(s);
    }
    std::vector<ExtensionProblem> high_problems;
    for (const auto& p : psi.problems)
        if (p.degree >= 23)
            high_problems.push_back(p);

    PolicyOutcome pol = apply_extension_policy(high, high_problems, registry);
    model.policy_warnings = pol.warned_degrees;

    /* audit every extension against the mod-3 dimension count */
    for (const auto& p : high_problems) {
        OracleOutcome o = resolve_extension_via_mod3(table, p, psi.group.at(p.degree - 1));
        model.oracle_log.push_back(o);
        if (o.resolution != Resolution::split)
            throw std::runtime_error("extension oracle contradicts the split policy at degree " +
                                     std::to_string(p.degree));
    }

    for (const auto& [d, ss] : pol.group.degrees)
        for (const auto& s : ss)
            model.g.insert(s);
    model.g.check_invariants();

    /* seam aliases: order-preserving identification on the overlap */
    auto alias = [&](int d) {
        const auto& sp = sphere.g.at(d);
        const auto& eq = psi.group.at(d);
        if (sp.size() == 1 && eq.size() == 1)
            model.seam_alias[eq[0].label] = sp[0].label;
    };
    for (int d = 0; d <= std::min(22, max_degree); ++d)
        alias(d);
    return model;
}

namespace {

std::optional<std::string> unwrap_boundary(const std::string& s)
{
    if (s.rfind("d(", 0) == 0 && s.back() == ')')
        return s.substr(2, s.size() - 3);
    return std::nullopt;
}

/* the tmf image of a low-degree sphere class */
std::optional<std::string> sphere_tmf_image(const std::string& label)
{
    if (label == "iota")
        return "1";
    if (label == "alpha_1")
        return "alpha";
    if (label == "beta_1")
        return "beta";
    if (label == "alpha_1*beta_1")
        return "alpha*beta";
    if (label == "beta_1^2")
        return "beta^2";
    return std::nullopt;
}

} // namespace

J2Product multiply_j2(const J2Model& m, const std::string& x, int dx, const std::string& y, int dy)
{
    const TmfTable& T = *m.tmf;
    J2Product out;
    if (dx + dy > m.max_degree)
        throw std::out_of_range("multiply_j2: degree out of range");

    struct Piece {
        Element tmf_lift;  /* class lifted through j2 -> tmf */
        bool boundary = false;
        Element boundary_arg; /* d(arg) when boundary */
    };

    auto classify = [&](const std::string& label, int deg) -> Piece {
        Piece p;
        std::string eff = label;
        /* sphere names act through their tmf images */
        if (auto img = sphere_tmf_image(label)) {
            eff = *img;
        } else {
            /* low-degree boundary names arrive via the seam alias */
            for (const auto& [tpsi, sph] : m.seam_alias)
                if (sph == label)
                    eff = tpsi;
        }
        if (auto arg = unwrap_boundary(eff)) {
            auto el = T.element_for_label(*arg);
            if (!el)
                throw std::runtime_error("multiply_j2: unknown boundary argument " + *arg);
            p.boundary = true;
            p.boundary_arg = *el;
            return p;
        }
        auto el = T.element_for_label(eff);
        if (!el)
            throw std::runtime_error("multiply_j2: unknown class " + label + " in degree " + std::to_string(deg));
        p.tmf_lift = *el;
        return p;
    };

    Piece px = classify(x, dx);
    Piece py = classify(y, dy);

    MulFlags flags;
    if (px.boundary && py.boundary) {
        /* no boundary part in the target degree forces zero; otherwise the
         * product is out of reach of the lifting rules */
        bool has_boundary = false;
        for (const auto& s : m.g.at(dx + dy))
            if (s.prov == Prov::boundary)
                has_boundary = true;
        if (!has_boundary) {
            out.kind = J2Product::zero;
            return out;
        }
        out.kind = J2Product::unknown;
        return out;
    }
    if (px.boundary || py.boundary) {
        /* z * d(w) = d(zw) by linearity of the boundary over the equalizer */
        const Piece& b = px.boundary ? px : py;
        const Piece& k = px.boundary ? py : px;
        Element prod = T.multiply(k.tmf_lift, b.boundary_arg, &flags);
        out.exact = !flags.table_default && !prod.table_default;
        if (prod.is_zero()) {
            out.kind = out.exact ? J2Product::zero : J2Product::unknown;
            return out;
        }
        std::string base;
        if (!prod.torsion_part.empty())
            base = prod.torsion_part.begin()->first.label();
        else
            base = prod.free_part.begin()->first.label();
        std::string label = "d(" + base + ")";
        const Summand* s = m.find(label, dx + dy);
        if (!s)
            throw std::runtime_error("multiply_j2: boundary product " + label + " missing in degree " +
                                     std::to_string(dx + dy));
        out.kind = J2Product::cls;
        out.label = s->label;
        return out;
    }

    /* both classes lift to tmf */
    Element prod = T.multiply(px.tmf_lift, py.tmf_lift, &flags);
    out.exact = !flags.table_default && !prod.table_default;
    out.via_tmf = true;
    if (prod.is_zero()) {
        out.kind = out.exact ? J2Product::zero : J2Product::unknown;
        return out;
    }
    std::string base;
    if (!prod.torsion_part.empty())
        base = prod.torsion_part.begin()->first.label();
    else
        base = prod.free_part.begin()->first.label();
    const Summand* s = m.find(base, dx + dy);
    if (s) {
        out.kind = J2Product::cls;
        out.label = s->label;
        return out;
    }
    /* nonzero in tmf but the lift is not a summand of j2 in the splice */
    out.kind = J2Product::cls;
    out.label = base;
    return out;
}

} // namespace jtwo

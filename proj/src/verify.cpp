#include "jtwo/verify.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace jtwo {

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double secs() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

std::string diff_text(const DigestDiff& d)
{
    std::ostringstream out;
    if (d.match)
        return "exact match";
    for (const auto& l : d.missing)
        out << "missing: " << l << "; ";
    for (const auto& l : d.unexpected)
        out << "unexpected: " << l << "; ";
    return out.str();
}

/* brute-force data for one finite 3-group morphism */
struct BruteGroup {
    std::vector<int> exps; /* cyclic orders 3^k */
    long long size() const
    {
        long long n = 1;
        for (int k : exps)
            n *= pow3ll(k);
        return n;
    }
};

/* multiset of cyclic exponents of a subgroup counted by torsion profile:
 * counts[s] = number of elements killed by 3^s */
std::vector<int> exps_from_counts(const std::vector<long long>& counts)
{
    /* log3(counts[s]) - log3(counts[s-1]) = #{i : k_i >= s} */
    std::vector<int> out;
    std::vector<int> numk;
    for (size_t s = 1; s < counts.size(); ++s) {
        long long q = counts[s] / counts[s - 1];
        int d = 0;
        while (q > 1) {
            q /= 3;
            ++d;
        }
        numk.push_back(d);
    }
    for (size_t s = 0; s < numk.size(); ++s)
        for (int i = numk[s] - (s + 1 < numk.size() ? numk[s + 1] : 0); i > 0; --i)
            out.push_back((int)s + 1);
    std::sort(out.begin(), out.end());
    return out;
}

bool brute_force_case(std::mt19937& rng, std::string& fail)
{
    auto rand_group = [&](int max_total) {
        BruteGroup g;
        int rank = 1 + (int)(rng() % 4);
        int total = 0;
        for (int i = 0; i < rank; ++i) {
            int k = 1 + (int)(rng() % 4);
            if (total + k > max_total)
                k = 1;
            total += k;
            g.exps.push_back(k);
        }
        return g;
    };
    BruteGroup A = rand_group(9), B = rand_group(9);

    GradedGroup src, tgt;
    src.max_degree = 1;
    tgt.max_degree = 1;
    for (size_t i = 0; i < A.exps.size(); ++i)
        src.insert(Summand::torsion("a" + std::to_string(i), A.exps[i], 0, 0));
    for (size_t i = 0; i < B.exps.size(); ++i)
        tgt.insert(Summand::torsion("b" + std::to_string(i), B.exps[i], 0, 0));

    int n = (int)A.exps.size(), mm = (int)B.exps.size();
    Mat block(mm, n);
    std::vector<std::vector<long long>> M(mm, std::vector<long long>(n));
    for (int i = 0; i < mm; ++i)
        for (int j = 0; j < n; ++j) {
            long long v = (long long)(rng() % 55) - 27;
            M[i][j] = v;
            block.at(i, j) = Scalar3::from_int(v);
        }
    GradedMorphism f;
    f.source = &src;
    f.target = &tgt;
    f.degree_shift = 0;
    f.blocks[0] = block;

    auto ker = kernel(f, 0);
    auto cok = cokernel(f, 0);

    /* enumerate the source, profile the kernel */
    std::vector<long long> amod(n), bmod(mm);
    for (int i = 0; i < n; ++i)
        amod[i] = pow3ll(A.exps[i]);
    for (int i = 0; i < mm; ++i)
        bmod[i] = pow3ll(B.exps[i]);
    long long asize = A.size();
    int maxe = 5;
    std::vector<long long> kcounts(maxe + 1, 0);
    std::vector<long long> image_keys;
    image_keys.reserve(asize);
    std::vector<int> x(n, 0);
    for (long long it = 0; it < asize; ++it) {
        long long rem = it;
        for (int i = 0; i < n; ++i) {
            x[i] = (int)(rem % amod[i]);
            rem /= amod[i];
        }
        bool in_ker = true;
        long long key = 0;
        for (int i = 0; i < mm; ++i) {
            long long y = 0;
            for (int j = 0; j < n; ++j)
                y += M[i][j] % bmod[i] * x[j] % bmod[i];
            y = ((y % bmod[i]) + bmod[i]) % bmod[i];
            in_ker = in_ker && y == 0;
            key = key * bmod[i] + y;
        }
        image_keys.push_back(key);
        if (in_ker) {
            /* order profile inside the source group */
            for (int s = 0; s <= maxe; ++s) {
                bool killed = true;
                for (int i = 0; i < n; ++i)
                    killed = killed && (pow3ll(s) % amod[i] == 0 || (long long)x[i] * pow3ll(s) % amod[i] == 0);
                if (killed)
                    ++kcounts[s];
            }
        }
    }
    std::sort(image_keys.begin(), image_keys.end());
    image_keys.erase(std::unique(image_keys.begin(), image_keys.end()), image_keys.end());

    std::vector<int> brute_ker = exps_from_counts(kcounts);
    std::vector<int> eng_ker;
    for (const auto& s : ker)
        eng_ker.push_back(s.torsion_exp);
    std::sort(eng_ker.begin(), eng_ker.end());
    if (brute_ker != eng_ker) {
        fail = "kernel mismatch";
        return false;
    }

    /* cokernel order profile: elements y with 3^s y in the image */
    long long bsize = B.size();
    std::vector<long long> ccounts(maxe + 1, 0);
    std::vector<int> y(mm, 0);
    for (long long it = 0; it < bsize; ++it) {
        long long rem = it;
        for (int i = 0; i < mm; ++i) {
            y[i] = (int)(rem % bmod[i]);
            rem /= bmod[i];
        }
        for (int s = 0; s <= maxe; ++s) {
            long long key = 0;
            for (int i = 0; i < mm; ++i)
                key = key * bmod[i] + (long long)y[i] * pow3ll(s) % bmod[i];
            if (std::binary_search(image_keys.begin(), image_keys.end(), key))
                ++ccounts[s];
        }
    }
    long long imsize = (long long)image_keys.size();
    for (auto& c : ccounts)
        c /= imsize;
    std::vector<int> brute_cok = exps_from_counts(ccounts);
    std::vector<int> eng_cok;
    for (const auto& s : cok)
        eng_cok.push_back(s.torsion_exp);
    std::sort(eng_cok.begin(), eng_cok.end());
    if (brute_cok != eng_cok) {
        fail = "cokernel mismatch";
        return false;
    }

    /* order bookkeeping through the fiber sequence */
    FiberResult fib = solve_fiber_les(f);
    GroupOrder lhs;
    for (const auto& [d, ss] : fib.group.degrees)
        if (d == -1 || d == 0) {
            GroupOrder o = order_of(ss);
            lhs.free_rank += o.free_rank;
            lhs.exp_sum += o.exp_sum;
        }
    for (const auto& p : fib.problems) {
        GroupOrder a = order_of(p.sub), b = order_of(p.quotient);
        lhs.free_rank += a.free_rank + b.free_rank;
        lhs.exp_sum += a.exp_sum + b.exp_sum;
    }
    GroupOrder rhs = order_of(ker), rc = order_of(cok);
    rhs.free_rank += rc.free_rank;
    rhs.exp_sum += rc.exp_sum;
    if (!(lhs == rhs)) {
        fail = "order bookkeeping mismatch";
        return false;
    }
    return true;
}

} // namespace

Criterion check_figure(const std::string& name, const ChartDoc& doc, const TmfData& data)
{
    Criterion c;
    c.name = name;
    auto it = data.fixtures.find(name);
    if (it == data.fixtures.end()) {
        c.pass = false;
        c.detail = "digest " + name + " missing from the data file";
        return c;
    }
    DigestDiff diff = compare_digest(doc, it->second);
    c.pass = diff.match;
    c.detail = diff_text(diff);
    return c;
}

std::vector<Criterion> run_acceptance(const std::string& data_path, const VerifyOptions& opt)
{
    std::vector<Criterion> out;
    TmfData data = parse_tmf_data(data_path);
    TmfTable table(data, opt.product_degree + 8);
    SphereTable sphere = sphere_from_data(data);

    /* 1: tmf/3 fixture, degrees 0..36 with lines */
    {
        Timer t;
        Mod3Tmf m3(table, 44);
        ChartDoc doc = chart_of_mod3_tmf(m3, 0, 36);
        Criterion c = check_figure("figure1", doc, data);
        c.name = "1 figure1: pi_* tmf/3 in 0..36 with filtrations and v1/alpha/beta lines";
        c.seconds = t.secs();
        c.pass = c.pass && c.seconds < 1.0;
        out.push_back(c);
    }

    Timer t_assembly;
    J2Model j2 = assemble_j2(table, sphere, opt.max_degree);
    double assembly_secs = t_assembly.secs();

    /* 2: j2 fixture, degrees 0..40 */
    {
        Timer t;
        ChartDoc doc = chart_of_j2(j2, 0, 40, ChartMode::provenance);
        Criterion c = check_figure("figure2", doc, data);
        c.name = "2 figure2: pi_* j2 in 0..40, orders, provenance, filtrations";
        c.seconds = assembly_secs + t.secs();
        c.pass = c.pass && c.seconds < 5.0;
        if (opt.strict && !j2.policy_warnings.empty()) {
            c.pass = false;
            c.detail += " (policy warnings in strict mode)";
        }
        out.push_back(c);
    }

    /* 3: the degree-27 family splits by the dimension count */
    {
        Timer t;
        TmfPsiResult psi = compute_tmf_psi(table, opt.max_degree);
        bool ok = true;
        std::ostringstream detail;
        int checked = 0;
        for (const auto& p : psi.problems) {
            if (p.degree % 72 != 27)
                continue;
            OracleOutcome o = resolve_extension_via_mod3(table, p, psi.group.at(p.degree - 1));
            ok = ok && o.resolution == Resolution::split && !o.inconclusive;
            if (p.degree == 27) {
                ok = ok && o.dim_computed == 3;
                detail << "dim pi_27(j2/3) = " << o.dim_computed << "; ";
            }
            ++checked;
        }
        detail << checked << " degrees 27 mod 72 resolved split";
        Criterion c;
        c.name = "3 prop-2.3 oracle: split at 27 mod 72 via dim pi_d(j2/3)";
        c.pass = ok && checked == (opt.max_degree - 27) / 72 + 1;
        c.detail = detail.str();
        c.seconds = t.secs();
        out.push_back(c);
    }

    /* 4: the 144-lift chain */
    {
        Timer t;
        LiftReport rep = verify_periodicity_lift(table, j2.g);
        Criterion c;
        c.name = "4 lift chain: 27-torsion at 143, vanishing at 144, quotient checks";
        c.pass = rep.all_pass;
        std::ostringstream detail;
        for (const auto& s : rep.steps)
            if (!s.pass)
                detail << "failed: " << s.name << "; ";
        if (rep.all_pass)
            detail << rep.steps.size() << " steps pass";
        c.detail = detail.str();
        c.seconds = t.secs();
        out.push_back(c);
    }

    /* 5: alpha-family orders and the factorization oracle */
    {
        Timer t;
        bool ok = true;
        std::ostringstream detail;
        for (int d = 1; d <= 40; ++d) {
            long long n = (1LL << d) - 1;
            int v = 0;
            while (n % 3 == 0) {
                n /= 3;
                ++v;
            }
            if (v != nu3_2pow_minus_1(d)) {
                ok = false;
                detail << "closed form fails at d=" << d << "; ";
            }
        }
        TmfPsiResult psi = compute_tmf_psi(table, 204);
        for (int i = 2; i <= 50; ++i) {
            int want = nu3(i) + 1;
            const auto& ss = psi.group.at(4 * i - 1);
            int boundary = 0;
            for (const auto& s : ss)
                if (s.prov == Prov::boundary) {
                    ++boundary;
                    if (s.torsion_exp != want) {
                        ok = false;
                        detail << "order off at degree " << 4 * i - 1 << " (" << s.label << "); ";
                    }
                }
            if (boundary == 0) {
                ok = false;
                detail << "no boundary classes at degree " << 4 * i - 1 << "; ";
            }
        }
        Criterion c;
        c.name = "5 alpha-family orders 3^(nu3(i)+1) for i <= 50, factorization oracle d <= 40";
        c.pass = ok;
        c.detail = ok ? "all orders match" : detail.str();
        c.seconds = t.secs();
        out.push_back(c);
    }

    /* 6: injectivity residues */
    {
        Timer t;
        Mod3Tmf m3(table, opt.max_degree);
        InjectivityReport rep = v1_injectivity_report(m3, opt.max_degree, 20);
        std::vector<int> want = {8, 10, 14, 15};
        bool ok = rep.failing_js_in_window == want;
        std::ostringstream detail;
        detail << "failing j in window: ";
        for (int j : rep.failing_js_in_window)
            detail << j << " ";
        detail << "; " << rep.verdict;
        Criterion c;
        c.name = "6 injectivity residues {8,10,14,15} and the 18-vs-36 comparison";
        c.pass = ok;
        c.detail = detail.str();
        c.seconds = t.secs();
        out.push_back(c);
    }

    /* 7: Theorem A / Theorem B suites */
    {
        Timer t;
        J2Model big = assemble_j2(table, sphere, opt.product_degree);
        SuiteReport a = theorem_a_suite(big, opt.max_degree);
        SuiteReport b = theorem_b_suite(big, opt.product_degree);
        ProductVerdict deg94 = check_product("beta_1*beta_1*beta_5", big);
        bool ok = a.failures == 0 && b.failures == 0 && deg94.verdict == "zero-in-j2";
        /* unknown statuses at 9 mod 144 from 153 up */
        int unknowns = 0;
        for (const auto& r : hurewicz_image(big, opt.max_degree))
            if (r.verdict == "unknown" && r.degree % 144 == 9 && r.degree >= 153)
                ++unknowns;
        ok = ok && unknowns == (opt.max_degree - 153) / 144 + 1;
        std::ostringstream detail;
        detail << a.rows.size() << " A-rows (" << a.failures << " fail), " << b.rows.size() << " B-rows ("
               << b.failures << " fail), beta_1*beta_1*beta_5 -> " << deg94.verdict << ", " << unknowns
               << " open classes at 9 mod 144";
        Criterion c;
        c.name = "7 Theorem A <= 600 detected, Theorem B <= 900 nonzero, degree-94 zero, closure";
        c.pass = ok;
        c.detail = detail.str();
        c.seconds = t.secs();
        c.pass = c.pass && c.seconds < 30.0;
        out.push_back(c);
    }

    /* 8: property suites */
    {
        Timer t;
        std::mt19937 rng(20240903);
        bool ok = true;
        std::string fail;
        for (int i = 0; i < 1000 && ok; ++i)
            ok = brute_force_case(rng, fail);
        std::ostringstream detail;
        if (!ok)
            detail << "random morphisms: " << fail << "; ";

        /* psi multiplicativity over table products, total degree <= 200;
         * coefficients are compared 3-adically to high precision */
        const long long mod = pow3ll(16);
        auto modpow2 = [&](int w) {
            long long r = 1;
            for (int i = 0; i < w; ++i)
                r = r * 2 % (mod * 9);
            return r;
        };
        auto psi_apply = [&](const Element& e) {
            Element out_;
            for (const auto& [mono, c] : e.free_part)
                out_.add_free(mono, c % (mod * 9) * modpow2(mono.degree() / 2) % (mod * 9));
            for (const auto& [mono, c] : e.torsion_part)
                out_.add_torsion(mono, c); /* 2^{even} = 1 mod 3 */
            return out_;
        };
        auto congruent = [&](const Element& a, const Element& b) {
            if (a.torsion_part != b.torsion_part)
                return false;
            auto keys = a.free_part;
            for (const auto& [mono, c] : b.free_part)
                keys[mono] += 0;
            for (const auto& [mono, c0] : keys) {
                long long ca = a.free_part.count(mono) ? a.free_part.at(mono) : 0;
                long long cb = b.free_part.count(mono) ? b.free_part.at(mono) : 0;
                if (((ca - cb) % mod + mod) % mod != 0)
                    return false;
            }
            return true;
        };
        auto gens = [&]() {
            std::vector<Element> out_;
            for (int d = 0; d <= 200; ++d) {
                for (const auto& mn : table.free_basis(d))
                    out_.push_back(Element::free_gen(mn));
                for (const auto& tm : table.torsion_at(d))
                    out_.push_back(Element::torsion_gen(tm));
            }
            return out_;
        }();
        auto degree_of = [](const Element& e) {
            if (!e.free_part.empty())
                return e.free_part.begin()->first.degree();
            return e.torsion_part.begin()->first.degree();
        };
        int pairs = 0;
        for (const auto& x : gens)
            for (const auto& y : gens) {
                if (degree_of(x) + degree_of(y) > 200)
                    continue;
                ++pairs;
                Element lhs2 = psi_apply(table.multiply(x, y));
                Element rhs2 = table.multiply(psi_apply(x), psi_apply(y));
                if (!congruent(lhs2, rhs2)) {
                    ok = false;
                    detail << "psi fails on " << x.str() << " * " << y.str() << "; ";
                }
            }

        /* q-expansion is a ring map on the free part */
        std::vector<FreeMonomial> frees;
        for (int d = 0; d <= 200; d += 4)
            for (const auto& m : table.free_basis(d))
                frees.push_back(m);
        for (const auto& x : frees)
            for (const auto& y : frees) {
                if (x.degree() + y.degree() > 200)
                    continue;
                Element ex = Element::free_gen(x), ey = Element::free_gen(y);
                KoElement lhs = table.q_expansion(table.multiply(ex, ey));
                KoElement qx = table.q_expansion(ex), qy = table.q_expansion(ey);
                KoElement rhs;
                for (const auto& [p1, c1] : qx.terms)
                    for (const auto& [p2, c2] : qy.terms) {
                        rhs.terms[p1 + p2] += c1 * c2;
                        if (rhs.terms[p1 + p2] == 0)
                            rhs.terms.erase(p1 + p2);
                    }
                if (!(lhs.terms == rhs.terms)) {
                    ok = false;
                    detail << "q ring map fails on " << x.label() << "," << y.label() << "; ";
                }
            }
        detail << "1000 morphisms, " << pairs << " psi pairs, " << frees.size() << " free generators";
        Criterion c;
        c.name = "8 property suites: LES bookkeeping vs brute force, psi and q ring maps";
        c.pass = ok;
        c.detail = detail.str();
        c.seconds = t.secs();
        out.push_back(c);
    }

    /* figure 3-5 fixtures ride along as invariants */
    {
        Timer t;
        struct Win {
            const char* name;
            int lo, hi;
        };
        for (const Win& w : {Win{"figure3", 0, 40}, Win{"figure4", 74, 112}, Win{"figure5", 146, 184}}) {
            ChartDoc doc = chart_of_j2(j2, w.lo, w.hi, ChartMode::hurewicz);
            Criterion c = check_figure(w.name, doc, data);
            c.name = std::string("invariant ") + w.name + ": Hurewicz chart " + std::to_string(w.lo) + ".." +
                     std::to_string(w.hi);
            c.seconds = t.secs();
            out.push_back(c);
        }
    }
    return out;
}

std::string render_criteria(const std::vector<Criterion>& cs)
{
    std::ostringstream out;
    for (const auto& c : cs) {
        out << (c.pass ? "PASS" : "FAIL") << "  " << c.name;
        if (!c.detail.empty())
            out << "  [" << c.detail << "]";
        char buf[32];
        snprintf(buf, sizeof buf, "  (%.2fs)", c.seconds);
        out << buf << "\n";
    }
    return out.str();
}

bool all_pass(const std::vector<Criterion>& cs)
{
    for (const auto& c : cs)
        if (!c.pass)
            return false;
    return true;
}

} // namespace jtwo

#include "jtwo/tmf_table.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace jtwo {

namespace {

std::vector<std::string> tokens(const std::string& line)
{
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string t;
    while (in >> t)
        out.push_back(t);
    return out;
}

[[noreturn]] void bad_line(const std::string& path, int no, const std::string& why)
{
    throw std::runtime_error(path + ":" + std::to_string(no) + ": " + why);
}

} // namespace

TmfData parse_tmf_data(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open data file " + path);
    TmfData d;
    std::string line, section, fixture_name;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        auto hash = line.find('#');
        std::string body = hash == std::string::npos ? line : line.substr(0, hash);
        auto toks = tokens(body);
        if (toks.empty())
            continue;
        if (toks[0] == "SECTION") {
            if (toks.size() < 2)
                bad_line(path, no, "SECTION needs a name");
            section = toks[1];
            if (section == "FIXTURE") {
                if (toks.size() < 3)
                    bad_line(path, no, "FIXTURE needs a name");
                fixture_name = toks[2];
                d.fixtures[fixture_name]; /* create */
            }
            continue;
        }
        if (section == "TORSION") {
            if (toks.size() != 4)
                bad_line(path, no, "TORSION wants: label degree order filtration");
            auto m = TorsionMonomial::parse(toks[0]);
            if (!m)
                bad_line(path, no, "bad torsion label " + toks[0]);
            TorsionSeed s;
            s.m = *m;
            int degree = std::stoi(toks[1]);
            long long order = std::stoll(toks[2]);
            s.filtration = std::stoi(toks[3]);
            if (degree != s.m.degree())
                bad_line(path, no, "degree mismatch for " + toks[0]);
            int exp = 0;
            while (order > 1 && order % 3 == 0) {
                order /= 3;
                ++exp;
            }
            if (order != 1 || exp < 1)
                bad_line(path, no, "order must be a power of 3");
            s.order_exp = exp;
            if (s.m.degree() < 1 || s.m.degree() > 72)
                bad_line(path, no, "seed degrees live in [1,72]");
            if (s.filtration != s.m.filtration())
                bad_line(path, no, "filtration mismatch for " + toks[0]);
            d.torsion_seed.push_back(s);
        } else if (section == "FREE-RULE") {
            if (toks.size() != 4)
                bad_line(path, no, "FREE-RULE wants: aflag bflag cmod e");
            FreeRule r;
            r.af = toks[0][0];
            r.bf = toks[1][0];
            r.cmod = toks[2] == "*" ? -1 : std::stoi(toks[2]);
            r.e = std::stoi(toks[3]);
            d.free_rules.push_back(r);
        } else if (section == "PRODUCTS") {
            if (toks.size() != 4)
                bad_line(path, no, "PRODUCTS wants: lhs rhs result anchor");
            auto l = TorsionMonomial::parse(toks[0]);
            auto r = TorsionMonomial::parse(toks[1]);
            auto res = TorsionMonomial::parse(toks[2]);
            if (!l || !r || !res)
                bad_line(path, no, "bad product labels");
            if (l->degree() + r->degree() != res->degree())
                bad_line(path, no, "product degree mismatch");
            d.products.push_back({*l, *r, *res, toks[3]});
        } else if (section == "V1-EXCEPTIONS") {
            if (toks.size() != 3 || toks[1] != "0")
                bad_line(path, no, "V1-EXCEPTIONS wants: pattern 0 anchor");
            auto m = TorsionMonomial::parse(toks[0]);
            if (!m)
                bad_line(path, no, "bad pattern " + toks[0]);
            d.v1_exceptions.push_back({*m, toks[2]});
        } else if (section == "PSI-FIXED") {
            if (toks.size() != 3)
                bad_line(path, no, "PSI-FIXED wants: pattern expression anchor");
            auto m = TorsionMonomial::parse(toks[0]);
            if (!m)
                bad_line(path, no, "bad pattern " + toks[0]);
            d.psi_fixed.push_back({*m, toks[1], toks[2]});
        } else if (section == "SPHERE-BOUND") {
            if (toks.size() != 1)
                bad_line(path, no, "SPHERE-BOUND wants one integer");
            d.sphere_bound = std::stoi(toks[0]);
        } else if (section == "SPHERE") {
            if (toks.size() != 4)
                bad_line(path, no, "SPHERE wants: label degree order filtration");
            SphereEntry s;
            s.label = toks[0];
            s.degree = std::stoi(toks[1]);
            if (toks[2] == "free") {
                s.is_free = true;
            } else {
                long long order = std::stoll(toks[2]);
                while (order > 1 && order % 3 == 0) {
                    order /= 3;
                    ++s.order_exp;
                }
                if (order != 1 || s.order_exp < 1)
                    bad_line(path, no, "sphere order must be a power of 3");
            }
            s.filtration = std::stoi(toks[3]);
            d.sphere.push_back(s);
        } else if (section == "FIXTURE") {
            d.fixtures[fixture_name].push_back(body);
        } else {
            bad_line(path, no, "content outside a known section");
        }
    }
    return d;
}

TmfTable::TmfTable(TmfData data, int max_degree) : data_(std::move(data)), max_degree_(max_degree)
{
    for (const auto& s : data_.torsion_seed) {
        auto key = std::make_tuple(s.m.eps, s.m.k, s.m.j % 3);
        if (!seed_keys_.insert(key).second)
            throw std::runtime_error("torsion seed repeats a periodicity class: " + s.m.label());
        by_key_[key] = s;
    }
    if (data_.torsion_seed.empty())
        throw std::runtime_error("empty torsion seed");
    /* derive the alpha^2 rewrite from the exotic product entry */
    for (const auto& p : data_.products) {
        if (p.lhs.eps == 1 && p.rhs.eps == 1) {
            exotic_dk_ = p.result.k - p.lhs.k - p.rhs.k;
            exotic_dj_ = p.result.j - p.lhs.j - p.rhs.j;
            have_exotic_ = true;
            if (!torsion_alive(p.result) || !torsion_alive(p.lhs) || !torsion_alive(p.rhs))
                throw std::runtime_error("exotic product entry names a dead class");
        }
    }
    bool have_fallback = false;
    for (const auto& r : data_.free_rules)
        if (r.af == '*' && r.bf == '*' && r.cmod == -1)
            have_fallback = true;
    if (!have_fallback)
        throw std::runtime_error("FREE-RULE section lacks a fallback rule");
}

bool TmfTable::torsion_alive(const TorsionMonomial& t) const
{
    if (t.is_unit() || t.eps < 0 || t.k < 0 || t.j < 0)
        return false;
    return seed_keys_.count(std::make_tuple(t.eps, t.k, t.j % 3)) > 0;
}

std::vector<TorsionMonomial> TmfTable::torsion_at(int d) const
{
    std::vector<TorsionMonomial> out;
    for (const auto& s : data_.torsion_seed) {
        int base = s.m.degree();
        if (d >= base && (d - base) % 72 == 0) {
            TorsionMonomial m = s.m;
            m.j += 3 * ((d - base) / 72);
            out.push_back(m);
        }
    }
    return out;
}

int TmfTable::coeff_exp(int a, int b, int c) const
{
    for (const auto& r : data_.free_rules) {
        if (r.af == '0' && a != 0)
            continue;
        if (r.af == '+' && a == 0)
            continue;
        if (r.bf == '0' && b != 0)
            continue;
        if (r.bf == '+' && b == 0)
            continue;
        if (r.cmod >= 0 && c % 3 != r.cmod)
            continue;
        return r.e;
    }
    return 0;
}

std::vector<FreeMonomial> TmfTable::free_basis(int d) const
{
    std::vector<FreeMonomial> out;
    if (d < 0 || d % 4 != 0)
        return out;
    for (int b = 0; b <= 1; ++b) {
        int rem = d - 12 * b;
        if (rem < 0)
            continue;
        for (int c = 0; 24 * c <= rem; ++c) {
            int rest = rem - 24 * c;
            if (rest % 8 != 0)
                continue;
            int a = rest / 8;
            out.push_back(FreeMonomial{coeff_exp(a, b, c), a, b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int TmfTable::filtration(const TorsionMonomial& t) const
{
    auto it = by_key_.find(std::make_tuple(t.eps, t.k, t.j % 3));
    if (it == by_key_.end())
        throw std::runtime_error("filtration of a dead class " + t.label());
    return it->second.filtration;
}

GradedGroup TmfTable::graded_group(int bound) const
{
    GradedGroup g;
    g.max_degree = bound;
    for (int d = 0; d <= bound; ++d) {
        for (const auto& m : free_basis(d))
            g.insert(Summand::free(m.label(), d, 0));
        for (const auto& t : torsion_at(d)) {
            auto it = by_key_.find(std::make_tuple(t.eps, t.k, t.j % 3));
            g.insert(Summand::torsion(t.label(), it->second.order_exp, d, it->second.filtration));
        }
    }
    return g;
}

Element TmfTable::reduce_raw_free(long long n, int a, int b, int c) const
{
    if (n == 0)
        return Element::zero();
    if (b >= 2) {
        /* c6^2 = c4^3 - 1728 Delta */
        Element x = reduce_raw_free(n, a + 3, b - 2, c);
        Element y = reduce_raw_free(-1728 * n, a, b - 2, c + 1);
        for (const auto& [m, co] : y.free_part)
            x.add_free(m, co);
        return x;
    }
    int e0 = coeff_exp(a, b, c);
    long long q = n;
    for (int i = 0; i < e0; ++i) {
        if (q % 3 != 0)
            throw std::runtime_error("free product is not integral against the coefficient rule");
        q /= 3;
    }
    return Element::free_gen(FreeMonomial{e0, a, b, c}, q);
}

Element TmfTable::mul_torsion(const TorsionMonomial& x, const TorsionMonomial& y, int coeff, MulFlags* flags) const
{
    TorsionMonomial cand;
    if (x.eps + y.eps == 2) {
        if (!have_exotic_ || x.j + y.j + exotic_dj_ < 0)
            return Element::zero(); /* alpha^2 = 0 on the nose */
        cand = TorsionMonomial{0, x.k + y.k + exotic_dk_, x.j + y.j + exotic_dj_};
    } else {
        cand = TorsionMonomial{x.eps + y.eps, x.k + y.k, x.j + y.j};
    }
    if (torsion_alive(cand))
        return Element::torsion_gen(cand, coeff);
    /* dead product; exact zero whenever the target degree carries no torsion */
    if (flags && !torsion_at(cand.degree()).empty())
        flags->table_default = true;
    return Element::zero();
}

Element TmfTable::multiply(const Element& x, const Element& y, MulFlags* flags) const
{
    Element out;
    out.table_default = x.table_default || y.table_default;
    MulFlags local;
    /* free * free */
    for (const auto& [mx, cx] : x.free_part)
        for (const auto& [my, cy] : y.free_part) {
            long long n = cx * cy;
            for (int i = 0; i < mx.e + my.e; ++i)
                n *= 3;
            Element t = reduce_raw_free(n, mx.a + my.a, mx.b + my.b, mx.c + my.c);
            for (const auto& [m, co] : t.free_part)
                out.add_free(m, co);
        }
    /* free * torsion, both ways */
    auto free_torsion = [&](const FreeMonomial& f, long long cf, const TorsionMonomial& t, int ct) {
        long long total = cf;
        int v3 = f.e;
        while (total % 3 == 0 && total != 0) {
            total /= 3;
            ++v3;
        }
        if (v3 >= 1)
            return; /* 3-divisible scalar kills 3-torsion */
        if (f.a > 0 || f.b > 0)
            return; /* c4, c6 annihilate the torsion ideal */
        TorsionMonomial cand{t.eps, t.k, t.j + f.c};
        if (torsion_alive(cand)) {
            out.add_torsion(cand, (int)((total % 3 + 3) % 3) * ct);
        } else if (!torsion_at(cand.degree()).empty()) {
            local.table_default = true;
        }
    };
    for (const auto& [mx, cx] : x.free_part)
        for (const auto& [my, cy] : y.torsion_part)
            free_torsion(mx, cx, my, cy);
    for (const auto& [my, cy] : y.free_part)
        for (const auto& [mx, cx] : x.torsion_part)
            free_torsion(my, cy, mx, cx);
    /* torsion * torsion */
    for (const auto& [mx, cx] : x.torsion_part)
        for (const auto& [my, cy] : y.torsion_part) {
            Element t = mul_torsion(mx, my, cx * cy, &local);
            for (const auto& [m, co] : t.torsion_part)
                out.add_torsion(m, co);
        }
    out.table_default = out.table_default || local.table_default;
    if (flags)
        flags->table_default = flags->table_default || local.table_default;
    return out;
}

std::optional<Element> TmfTable::element_for_label(const std::string& s) const
{
    if (auto t = TorsionMonomial::parse(s); t && torsion_alive(*t))
        return Element::torsion_gen(*t);
    if (auto f = FreeMonomial::parse(s)) {
        FreeMonomial m = *f;
        if (m.e == coeff_exp(m.a, m.b, m.c))
            return Element::free_gen(m);
    }
    if (auto t = TorsionMonomial::parse(s); t && t->is_unit())
        return Element::unit();
    return std::nullopt;
}

Element TmfTable::multiply_labels(const std::string& x, const std::string& y, MulFlags* flags) const
{
    auto ex = element_for_label(x);
    auto ey = element_for_label(y);
    if (!ex || !ey)
        throw std::runtime_error("unknown generator label in product: " + x + ", " + y);
    return multiply(*ex, *ey, flags);
}

KoElement TmfTable::q_expansion(const Element& x) const
{
    KoElement out;
    for (const auto& [m, c] : x.free_part) {
        if (m.c > 0)
            continue; /* Delta(0) = 0 */
        long long n = c;
        for (int i = 0; i < m.e; ++i)
            n *= 3;
        int p = 2 * m.a + 3 * m.b;
        out.terms[p] += n;
        if (out.terms[p] == 0)
            out.terms.erase(p);
    }
    return out;
}

TmfTable load_tmf(int max_degree, const std::string& data_path)
{
    return TmfTable(parse_tmf_data(data_path), max_degree);
}

} // namespace jtwo

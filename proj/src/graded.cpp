#include "jtwo/graded.hpp"

#include <algorithm>
#include <stdexcept>

namespace jtwo {

GroupOrder order_of(const std::vector<Summand>& s)
{
    GroupOrder o;
    for (const auto& x : s) {
        if (x.is_free)
            ++o.free_rank;
        else
            o.exp_sum += x.torsion_exp;
    }
    return o;
}

const std::vector<Summand>& GradedGroup::at(int d) const
{
    static const std::vector<Summand> empty;
    auto it = degrees.find(d);
    return it == degrees.end() ? empty : it->second;
}

void GradedGroup::insert(Summand s)
{
    degrees[s.degree].push_back(std::move(s));
}

void GradedGroup::check_invariants() const
{
    std::set<std::string> seen;
    for (const auto& [d, ss] : degrees) {
        if (d > max_degree)
            throw std::runtime_error("degree " + std::to_string(d) + " exceeds max_degree");
        for (const auto& s : ss) {
            if (!s.is_free && s.torsion_exp < 1)
                throw std::runtime_error("bad torsion exponent on " + s.label);
            if (s.filtration < 0)
                throw std::runtime_error("negative filtration on " + s.label);
            if (!seen.insert(s.label).second)
                throw std::runtime_error("duplicate label " + s.label);
        }
    }
}

Mat Mat::identity(int n)
{
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = Scalar3::one();
    return m;
}

Mat Mat::operator*(const Mat& o) const
{
    Mat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            if (at(i, k).is_zero())
                continue;
            for (int j = 0; j < o.cols; ++j)
                r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
        }
    return r;
}

namespace {

void swap_rows(Mat& m, int i, int j)
{
    for (int c = 0; c < m.cols; ++c)
        std::swap(m.at(i, c), m.at(j, c));
}

void swap_cols(Mat& m, int i, int j)
{
    for (int r = 0; r < m.rows; ++r)
        std::swap(m.at(r, i), m.at(r, j));
}

void add_row(Mat& m, int dst, int src, const Scalar3& f)
{
    for (int c = 0; c < m.cols; ++c)
        m.at(dst, c) = m.at(dst, c) + f * m.at(src, c);
}

void add_col(Mat& m, int dst, int src, const Scalar3& f)
{
    for (int r = 0; r < m.rows; ++r)
        m.at(r, dst) = m.at(r, dst) + f * m.at(r, src);
}

void scale_row(Mat& m, int i, const Scalar3& f)
{
    for (int c = 0; c < m.cols; ++c)
        m.at(i, c) = m.at(i, c) * f;
}

} // namespace

SnfResult smith_normal_form(const Mat& a)
{
    SnfResult r;
    r.d = a;
    r.left = Mat::identity(a.rows);
    r.right = Mat::identity(a.cols);
    int n = std::min(a.rows, a.cols);
    std::vector<int> orig_row(a.rows), orig_col(a.cols);
    for (int i = 0; i < a.rows; ++i)
        orig_row[i] = i;
    for (int i = 0; i < a.cols; ++i)
        orig_col[i] = i;

    int step = 0;
    for (; step < n; ++step) {
        /* pivot: smallest valuation, then lowest row, then lowest column */
        int pr = -1, pc = -1, pv = Scalar3::kInfVal;
        for (int i = step; i < a.rows; ++i)
            for (int j = step; j < a.cols; ++j) {
                const Scalar3& x = r.d.at(i, j);
                if (!x.is_zero() && x.val() < pv) {
                    pv = x.val();
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0)
            break; /* rest of the matrix is zero */
        swap_rows(r.d, step, pr);
        swap_rows(r.left, step, pr);
        std::swap(orig_row[step], orig_row[pr]);
        swap_cols(r.d, step, pc);
        swap_cols(r.right, step, pc);
        std::swap(orig_col[step], orig_col[pc]);

        /* normalize the pivot to an exact power of 3 */
        Scalar3 inv = Scalar3::make(0, r.d.at(step, step).unit()).unit_inverse();
        scale_row(r.d, step, inv);
        scale_row(r.left, step, inv);

        /* the pivot has minimal valuation, so every quotient is 3-integral */
        for (int i = step + 1; i < a.rows; ++i) {
            if (r.d.at(i, step).is_zero())
                continue;
            Scalar3 q = r.d.at(i, step).divide_by(r.d.at(step, step));
            add_row(r.d, i, step, -q);
            add_row(r.left, i, step, -q);
        }
        for (int j = step + 1; j < a.cols; ++j) {
            if (r.d.at(step, j).is_zero())
                continue;
            Scalar3 q = r.d.at(step, j).divide_by(r.d.at(step, step));
            add_col(r.d, j, step, -q);
            add_col(r.right, j, step, -q);
        }
    }

    r.rank = step;
    r.diag.assign(n, Scalar3::kInfVal);
    r.pivot_rows.assign(n, -1);
    r.pivot_cols.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (!r.d.at(i, i).is_zero())
            r.diag[i] = r.d.at(i, i).val();
        r.pivot_rows[i] = orig_row[i];
        r.pivot_cols[i] = orig_col[i];
    }
    /* ascending valuations; over Z_(3) divisibility is valuation order */
    for (int i = 0; i < r.rank; ++i)
        for (int j = i + 1; j < r.rank; ++j)
            if (r.diag[j] < r.diag[i]) {
                std::swap(r.diag[i], r.diag[j]);
                std::swap(r.pivot_rows[i], r.pivot_rows[j]);
                std::swap(r.pivot_cols[i], r.pivot_cols[j]);
                swap_rows(r.d, i, j);
                swap_rows(r.left, i, j);
                swap_cols(r.d, i, j);
                swap_cols(r.right, i, j);
            }
    return r;
}

Mat GradedMorphism::block_at(int d) const
{
    auto it = blocks.find(d);
    if (it != blocks.end())
        return it->second;
    int n = (int)source->at(d).size();
    int m = (int)target->at(d + degree_shift).size();
    return Mat(m, n);
}

GradedMorphism compose(const GradedMorphism& g, const GradedMorphism& f)
{
    GradedMorphism r;
    r.source = f.source;
    r.target = g.target;
    r.degree_shift = f.degree_shift + g.degree_shift;
    for (const auto& [d, bf] : f.blocks) {
        Mat bg = g.block_at(d + f.degree_shift);
        if (bg.rows == 0 || bf.cols == 0)
            continue;
        r.blocks[d] = bg * bf;
    }
    return r;
}

namespace {

/* stacked matrix [M | diag 3^{k_j} over torsion target summands] */
Mat with_target_relations(const Mat& m, const std::vector<Summand>& target, std::vector<int>* rel_cols = nullptr)
{
    int extra = 0;
    for (const auto& t : target)
        if (!t.is_free)
            ++extra;
    Mat n(m.rows, m.cols + extra);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            n.at(i, j) = m.at(i, j);
    int c = m.cols;
    for (int j = 0; j < (int)target.size(); ++j)
        if (!target[j].is_free) {
            n.at(j, c) = Scalar3::make(target[j].torsion_exp, 1);
            if (rel_cols)
                rel_cols->push_back(j);
            ++c;
        }
    return n;
}

/* index of the minimal-valuation entry of a column vector, lowest row wins */
int dominant_row(const Mat& m, int col)
{
    int best = -1, bv = Scalar3::kInfVal;
    for (int i = 0; i < m.rows; ++i) {
        const Scalar3& x = m.at(i, col);
        if (!x.is_zero() && x.val() < bv) {
            bv = x.val();
            best = i;
        }
    }
    return best;
}

} // namespace

std::vector<Summand> kernel(const GradedMorphism& m, int d)
{
    if (d > m.source->max_degree)
        throw std::out_of_range("kernel: degree out of range");
    const auto& src = m.source->at(d);
    const auto& tgt = m.target->at(d + m.degree_shift);
    int n = (int)src.size();
    if (n == 0)
        return {};

    Mat block = m.block_at(d);
    Mat sys = with_target_relations(block, tgt);
    SnfResult s = smith_normal_form(sys);

    /* kernel lattice of [M | R_B], projected to the source coordinates; the
     * projection is injective because the relation diagonal is nonzero */
    std::vector<int> basis_cols;
    for (int j = s.rank; j < sys.cols; ++j)
        basis_cols.push_back(j);
    int kdim = (int)basis_cols.size();
    Mat kb(n, kdim);
    for (int c = 0; c < kdim; ++c)
        for (int i = 0; i < n; ++i)
            kb.at(i, c) = s.right.at(i, basis_cols[c]);
    if (kdim == 0)
        return {};

    /* quotient by the source relation lattice: solve kb * x = 3^{k_i} e_i */
    SnfResult ks = smith_normal_form(kb);
    std::vector<int> tor_src;
    for (int i = 0; i < n; ++i)
        if (!src[i].is_free)
            tor_src.push_back(i);
    Mat rel(kdim, (int)tor_src.size());
    for (int c = 0; c < (int)tor_src.size(); ++c) {
        /* y = left * b, then x = right * diag^{-1} y */
        std::vector<Scalar3> y(kb.rows);
        for (int i = 0; i < kb.rows; ++i)
            y[i] = ks.left.at(i, tor_src[c]) * Scalar3::make(src[tor_src[c]].torsion_exp, 1);
        std::vector<Scalar3> x(kdim);
        for (int i = 0; i < (int)y.size(); ++i) {
            if (i < kdim && !ks.d.at(i, i).is_zero()) {
                x[i] = y[i].divide_by(ks.d.at(i, i));
            } else if (!y[i].is_zero()) {
                throw std::runtime_error("kernel: relation lattice escapes the kernel lattice");
            }
        }
        for (int i = 0; i < kdim; ++i) {
            Scalar3 acc;
            for (int j = 0; j < kdim; ++j)
                acc = acc + ks.right.at(i, j) * x[j];
            rel.at(i, c) = acc;
        }
    }

    SnfResult qs = smith_normal_form(rel);
    std::vector<Summand> out;
    int ndiag = std::min(rel.rows, rel.cols);
    std::vector<bool> used_row(kdim, false);
    for (int i = 0; i < ndiag; ++i) {
        if (qs.diag[i] == Scalar3::kInfVal)
            continue;
        used_row[qs.pivot_rows[i]] = true;
        if (qs.diag[i] == 0)
            continue; /* trivial summand */
        int kcol = qs.pivot_rows[i]; /* kernel basis vector index */
        int srow = dominant_row(kb, kcol);
        const Summand& ref = src[srow];
        out.push_back(Summand::torsion(ref.label, qs.diag[i], d, ref.filtration, ref.prov));
    }
    /* kernel basis vectors no relation pivots on generate free summands */
    for (int i = 0; i < kdim; ++i) {
        if (used_row[i])
            continue;
        int srow = dominant_row(kb, i);
        const Summand& ref = src[srow];
        out.push_back(Summand::free(ref.label, d, ref.filtration, ref.prov));
    }
    /* dominant-source labelling can repeat; keep labels unique */
    std::map<std::string, int> seen;
    for (auto& s : out) {
        int n_prev = seen[s.label]++;
        if (n_prev > 0)
            s.label += "#" + std::to_string(n_prev + 1);
    }
    return out;
}

std::vector<Summand> cokernel(const GradedMorphism& m, int d)
{
    if (d - m.degree_shift > m.source->max_degree)
        throw std::out_of_range("cokernel: degree out of range");
    const auto& tgt = m.target->at(d);
    int nt = (int)tgt.size();
    if (nt == 0)
        return {};
    Mat block = m.block_at(d - m.degree_shift);
    Mat sys = with_target_relations(block, tgt);
    SnfResult s = smith_normal_form(sys);

    std::vector<Summand> out;
    int ndiag = std::min(sys.rows, sys.cols);
    std::vector<bool> pivoted(nt, false);
    for (int i = 0; i < ndiag && i < s.rank; ++i) {
        pivoted[s.pivot_rows[i]] = true;
        if (s.diag[i] >= 1) {
            const Summand& ref = tgt[s.pivot_rows[i]];
            out.push_back(Summand::torsion("d(" + ref.label + ")", s.diag[i], d, ref.filtration, ref.prov));
        }
    }
    for (int j = 0; j < nt; ++j)
        if (!pivoted[j]) {
            const Summand& ref = tgt[j];
            out.push_back(Summand::free("d(" + ref.label + ")", d, ref.filtration, ref.prov));
        }
    /* deterministic order: by target position */
    std::sort(out.begin(), out.end(), [&](const Summand& a, const Summand& b) { return a.label < b.label; });
    return out;
}

FiberResult solve_fiber_les(const GradedMorphism& f)
{
    FiberResult r;
    r.group.max_degree = f.source->max_degree - 1;
    for (int d = -1; d < f.source->max_degree; ++d) {
        std::vector<Summand> ker = d >= 0 ? kernel(f, d) : std::vector<Summand>{};
        std::vector<Summand> cok = cokernel(f, d + 1);
        for (auto& s : cok)
            s.degree = d;
        if (!ker.empty() && !cok.empty()) {
            ExtensionProblem p;
            p.sub = cok;
            p.quotient = ker;
            p.degree = d;
            r.problems.push_back(std::move(p));
            continue;
        }
        for (auto& s : cok)
            r.group.insert(std::move(s));
        for (auto& s : ker)
            r.group.insert(std::move(s));
    }
    return r;
}

std::vector<Summand> resolve_extension(const ExtensionProblem& p, Resolution how)
{
    std::vector<Summand> out;
    if (how == Resolution::split || how == Resolution::unresolved) {
        out = p.sub;
        out.insert(out.end(), p.quotient.begin(), p.quotient.end());
        return out;
    }
    /* maximal nonsplit: pair sub and quotient cyclic pieces into single
     * summands until one side runs out */
    size_t n = std::min(p.sub.size(), p.quotient.size());
    for (size_t i = 0; i < n; ++i) {
        const Summand& a = p.sub[i];
        const Summand& b = p.quotient[i];
        int exp = (a.is_free || b.is_free) ? 0 : a.torsion_exp + b.torsion_exp;
        if (a.is_free || b.is_free)
            out.push_back(Summand::free(b.label + "~" + a.label, p.degree, b.filtration, b.prov));
        else
            out.push_back(Summand::torsion(b.label + "~" + a.label, exp, p.degree, b.filtration, b.prov));
    }
    for (size_t i = n; i < p.sub.size(); ++i)
        out.push_back(p.sub[i]);
    for (size_t i = n; i < p.quotient.size(); ++i)
        out.push_back(p.quotient[i]);
    return out;
}

PolicyOutcome apply_extension_policy(const GradedGroup& base,
                                     const std::vector<ExtensionProblem>& problems,
                                     const std::vector<ExtensionRule>& registry)
{
    PolicyOutcome out;
    out.group = base;
    for (const auto& p : problems) {
        Resolution how = Resolution::unresolved;
        for (const auto& rule : registry) {
            int r = ((p.degree % rule.modulus) + rule.modulus) % rule.modulus;
            if (r == rule.residue) {
                if (how != Resolution::unresolved && how != rule.resolution)
                    throw std::runtime_error("conflicting extension rules at degree " + std::to_string(p.degree));
                how = rule.resolution;
            }
        }
        if (how == Resolution::unresolved) {
            how = Resolution::split; /* default, flagged */
            out.warned_degrees.push_back(p.degree);
        }
        for (auto& s : resolve_extension(p, how))
            out.group.insert(std::move(s));
    }
    return out;
}

} // namespace jtwo

#include "jtwo/chart.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace jtwo {

namespace {

std::string order_str(const Summand& s)
{
    if (s.is_free)
        return "free";
    return std::to_string(pow3ll(s.torsion_exp));
}

void sort_doc(ChartDoc& doc)
{
    std::sort(doc.rows.begin(), doc.rows.end(), [](const ChartRow& a, const ChartRow& b) {
        if (a.stem != b.stem)
            return a.stem < b.stem;
        if (a.filtration != b.filtration)
            return a.filtration < b.filtration;
        return a.label < b.label;
    });
    std::sort(doc.lines.begin(), doc.lines.end(), [](const ChartLine& a, const ChartLine& b) {
        if (a.kind != b.kind)
            return a.kind < b.kind;
        if (a.s1 != b.s1)
            return a.s1 < b.s1;
        return a.from < b.from;
    });
}

} // namespace

ChartDoc chart_of_j2(const J2Model& m, int lo, int hi, ChartMode mode)
{
    if (hi > m.max_degree)
        throw std::out_of_range("chart window exceeds the computed model");
    ChartDoc doc;
    doc.lo = lo;
    doc.hi = hi;
    std::set<std::string> orange, green;
    if (mode == ChartMode::hurewicz) {
        orange = hurewicz_orange(m, m.max_degree);
        green = hurewicz_green(m, m.max_degree);
    }
    auto beta_supports = [&](const Summand& s) {
        if (s.degree + 10 > m.max_degree)
            return false;
        J2Product p = multiply_j2(m, s.label, s.degree, "beta_1", 10);
        return p.kind == J2Product::cls;
    };
    for (int d = lo; d <= hi; ++d)
        for (const auto& s : m.g.at(d)) {
            ChartRow row;
            row.stem = d;
            row.filtration = s.filtration;
            row.label = s.label;
            row.order = order_str(s);
            if (mode == ChartMode::provenance) {
                row.color = s.prov == Prov::boundary ? "red" : "blue";
            } else {
                if (orange.count(s.label))
                    row.color = "orange";
                else if (green.count(s.label))
                    row.color = "green";
                else if (s.filtration == 1 && !beta_supports(s))
                    continue; /* omitted per the caption convention */
                else
                    row.color = "black";
            }
            doc.rows.push_back(std::move(row));
        }
    /* alpha_1 and beta_1 multiplication lines within the window */
    for (const auto& row : doc.rows) {
        for (const auto& [g, shift, fshift] :
             {std::tuple<std::string, int, int>{"alpha_1", 3, 1}, {"beta_1", 10, 2}}) {
            if (row.stem + shift > hi || row.stem + shift > m.max_degree)
                continue;
            J2Product p = multiply_j2(m, row.label, row.stem, g, shift);
            if (p.kind != J2Product::cls)
                continue;
            const Summand* t = m.find(p.label, row.stem + shift);
            if (!t)
                continue;
            bool target_drawn = false;
            for (const auto& r2 : doc.rows)
                target_drawn = target_drawn || (r2.stem == row.stem + shift && r2.label == t->label);
            if (!target_drawn)
                continue;
            ChartLine l;
            l.kind = g == "alpha_1" ? "alpha" : "beta";
            l.s1 = row.stem;
            l.f1 = row.filtration;
            l.s2 = row.stem + shift;
            l.f2 = t->filtration;
            l.from = row.label;
            l.to = t->label;
            l.color = "black";
            doc.lines.push_back(std::move(l));
        }
    }
    sort_doc(doc);
    return doc;
}

ChartDoc chart_of_mod3_tmf(const Mod3Tmf& m, int lo, int hi)
{
    ChartDoc doc;
    doc.lo = lo;
    doc.hi = hi;
    const TmfTable& T = m.table();
    for (int d = lo; d <= hi; ++d)
        for (const auto& c : m.model().at(d)) {
            ChartRow row;
            row.stem = d;
            row.filtration = c.filtration;
            row.label = c.label;
            row.order = std::to_string(pow3ll(c.order_exp));
            row.color = "black";
            doc.rows.push_back(std::move(row));
        }
    auto find_class = [&](const std::string& label, int d) -> const QClass* { return m.model().find(label, d); };
    for (int d = lo; d <= hi; ++d)
        for (const auto& c : m.model().at(d)) {
            /* v1 lines */
            if (d + 4 <= hi) {
                V1Value v = m.v1(c);
                if (v.kind == V1Value::cls) {
                    const QClass* t = find_class(v.label, d + 4);
                    if (t) {
                        doc.lines.push_back({"v1", d, c.filtration, d + 4, t->filtration, c.label, t->label, "orange"});
                    }
                }
            }
            /* alpha and beta multiplication lines */
            auto mult_line = [&](const TorsionMonomial& g, const std::string& kind) {
                int d2 = d + g.degree();
                if (d2 > hi)
                    return;
                auto base = TorsionMonomial::parse(c.base);
                Element prod;
                if (base && T.torsion_alive(*base))
                    prod = T.multiply(Element::torsion_gen(g), Element::torsion_gen(*base));
                else if (auto fm = FreeMonomial::parse(c.base))
                    prod = T.multiply(Element::torsion_gen(g), Element::free_gen(*fm));
                else
                    return;
                if (prod.torsion_part.size() != 1)
                    return;
                std::string tl = QClass::render(c.kind, prod.torsion_part.begin()->first.label());
                const QClass* t = find_class(tl, d2);
                if (t)
                    doc.lines.push_back({kind, d, c.filtration, d2, t->filtration, c.label, t->label, "black"});
            };
            mult_line(TorsionMonomial{1, 0, 0}, "alpha");
            mult_line(TorsionMonomial{0, 1, 0}, "beta");
        }
    sort_doc(doc);
    return doc;
}

ChartDoc chart_of_tmf(const TmfTable& t, int lo, int hi)
{
    ChartDoc doc;
    doc.lo = lo;
    doc.hi = hi;
    GradedGroup g = t.graded_group(hi);
    for (int d = lo; d <= hi; ++d)
        for (const auto& s : g.at(d))
            doc.rows.push_back({d, s.filtration, s.label, order_str(s), "black"});
    sort_doc(doc);
    return doc;
}

ChartDoc chart_of_quotient(const QuotientModel& q, int lo, int hi)
{
    ChartDoc doc;
    doc.lo = lo;
    doc.hi = hi;
    for (int d = lo; d <= hi; ++d)
        for (const auto& c : q.at(d))
            doc.rows.push_back({d, c.filtration, c.label, std::to_string(pow3ll(c.order_exp)), "black"});
    sort_doc(doc);
    return doc;
}

std::string to_tsv(const ChartDoc& doc)
{
    std::ostringstream out;
    out << "stem\tfiltration\tlabel\torder\tcolor\n";
    for (const auto& r : doc.rows)
        out << r.stem << "\t" << r.filtration << "\t" << r.label << "\t" << r.order << "\t" << r.color << "\n";
    return out.str();
}

std::vector<std::string> digest_lines(const ChartDoc& doc)
{
    std::vector<std::string> out;
    for (const auto& r : doc.rows) {
        std::ostringstream s;
        s << "S " << r.stem << " " << r.filtration << " " << r.label << " " << r.order << " " << r.color;
        out.push_back(s.str());
    }
    for (const auto& l : doc.lines) {
        std::ostringstream s;
        s << "L " << l.kind << " " << l.s1 << " " << l.f1 << " " << l.from << " " << l.s2 << " " << l.f2 << " "
          << l.to;
        out.push_back(s.str());
    }
    std::sort(out.begin(), out.end());
    return out;
}

DigestDiff compare_digest(const ChartDoc& doc, const std::vector<std::string>& expected)
{
    DigestDiff diff;
    std::vector<std::string> got = digest_lines(doc);
    std::vector<std::string> want;
    for (const auto& line : expected) {
        std::istringstream in(line);
        std::string t, acc, w;
        while (in >> w)
            acc += (acc.empty() ? "" : " ") + w;
        if (!acc.empty())
            want.push_back(acc);
    }
    std::sort(want.begin(), want.end());
    std::set_difference(want.begin(), want.end(), got.begin(), got.end(), std::back_inserter(diff.missing));
    std::set_difference(got.begin(), got.end(), want.begin(), want.end(), std::back_inserter(diff.unexpected));
    diff.match = diff.missing.empty() && diff.unexpected.empty();
    return diff;
}

std::string to_svg(const ChartDoc& doc)
{
    const int cell = 28, margin = 40;
    int w = margin * 2 + cell * (doc.hi - doc.lo + 1);
    int maxf = 4;
    for (const auto& r : doc.rows)
        maxf = std::max(maxf, r.filtration);
    int h = margin * 2 + cell * (maxf + 1);
    auto x_of = [&](int stem, int slot, int nslots) {
        int base = margin + cell * (stem - doc.lo) + cell / 2;
        if (nslots <= 1)
            return base;
        return base + (slot - (nslots - 1) / 2) * 7 - ((nslots - 1) % 2) * 3;
    };
    auto y_of = [&](int filt) { return h - margin - cell * filt - cell / 2; };

    /* slot assignment for classes sharing a (stem, filtration) spot */
    std::map<std::pair<int, int>, int> counts;
    for (const auto& r : doc.rows)
        counts[{r.stem, r.filtration}]++;
    std::map<std::pair<int, int>, int> used;
    std::map<std::string, std::pair<int, int>> pos; /* label -> x,y */

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "' viewBox='0 0 " << w
        << " " << h << "'>\n";
    svg << "<rect width='" << w << "' height='" << h << "' fill='white'/>\n";
    for (int s = doc.lo; s <= doc.hi; ++s) {
        if (s % 4 == 0)
            svg << "<text x='" << x_of(s, 0, 1) << "' y='" << h - margin / 2 << "' font-size='10' fill='gray' "
                << "text-anchor='middle'>" << s << "</text>\n";
    }
    for (const auto& r : doc.rows) {
        auto key = std::make_pair(r.stem, r.filtration);
        int slot = used[key]++;
        int x = x_of(r.stem, slot, counts[key]);
        int y = y_of(r.filtration);
        pos[r.label + "@" + std::to_string(r.stem)] = {x, y};
    }
    for (const auto& l : doc.lines) {
        auto a = pos.find(l.from + "@" + std::to_string(l.s1));
        auto b = pos.find(l.to + "@" + std::to_string(l.s2));
        if (a == pos.end() || b == pos.end())
            continue;
        svg << "<line x1='" << a->second.first << "' y1='" << a->second.second << "' x2='" << b->second.first
            << "' y2='" << b->second.second << "' stroke='" << l.color << "' stroke-width='1'/>\n";
    }
    for (const auto& r : doc.rows) {
        auto p = pos[r.label + "@" + std::to_string(r.stem)];
        if (r.order == "free") {
            svg << "<rect x='" << p.first - 4 << "' y='" << p.second - 4 << "' width='8' height='8' fill='"
                << r.color << "'><title>" << r.label << "</title></rect>\n";
        } else {
            long long o = std::stoll(r.order);
            int circles = 0;
            while (o > 3) {
                o /= 3;
                ++circles;
            }
            svg << "<circle cx='" << p.first << "' cy='" << p.second << "' r='3' fill='" << r.color << "'><title>"
                << r.label << "</title></circle>\n";
            for (int k = 1; k <= circles; ++k)
                svg << "<circle cx='" << p.first << "' cy='" << p.second << "' r='" << 3 + 3 * k
                    << "' fill='none' stroke='" << r.color << "' stroke-width='1'/>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string report_markdown(const std::vector<DetectionRecord>& records)
{
    std::ostringstream out;
    out << "| element | degree | verdict | detector | filtration | family |\n";
    out << "|---|---|---|---|---|---|\n";
    for (const auto& r : records)
        out << "| " << r.element << " | " << r.degree << " | " << r.verdict << " | " << r.detector << " | "
            << (r.filtration >= 0 ? std::to_string(r.filtration) : "-") << " | " << r.family << " |\n";
    return out.str();
}

std::string suite_markdown(const SuiteReport& rep, const std::string& title)
{
    std::ostringstream out;
    out << "## " << title << "\n\n";
    out << "| element | degree | verdict | witness | route | pass |\n";
    out << "|---|---|---|---|---|---|\n";
    for (const auto& r : rep.rows)
        out << "| " << r.element << " | " << r.degree << " | " << r.verdict << " | " << r.witness << " | " << r.route
            << " | " << (r.pass ? "yes" : "NO") << " |\n";
    out << "\nfailures: " << rep.failures << "\n";
    return out.str();
}

} // namespace jtwo

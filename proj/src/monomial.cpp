#include "jtwo/monomial.hpp"

#include <sstream>
#include <vector>

namespace jtwo {

namespace {

void append_factor(std::string& s, const std::string& name, int exp)
{
    if (exp == 0)
        return;
    if (!s.empty())
        s += "*";
    s += name;
    if (exp != 1)
        s += "^" + std::to_string(exp);
}

std::vector<std::string> split_factors(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == '*') {
            out.push_back(cur);
            cur.clear();
        } else if (!isspace((unsigned char)ch)) {
            cur += ch;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

bool parse_power(const std::string& f, std::string& name, int& exp)
{
    auto caret = f.find('^');
    name = f.substr(0, caret);
    exp = 1;
    if (caret != std::string::npos) {
        try {
            exp = std::stoi(f.substr(caret + 1));
        } catch (...) {
            return false;
        }
    }
    return !name.empty() && exp >= 0;
}

} // namespace

std::string FreeMonomial::label() const
{
    std::string s;
    if (e == 1)
        s = "3";
    else if (e > 1)
        s = "3^" + std::to_string(e);
    append_factor(s, "c4", a);
    append_factor(s, "c6", b);
    append_factor(s, "Delta", c);
    if (s.empty())
        s = "1";
    return s;
}

std::optional<FreeMonomial> FreeMonomial::parse(const std::string& s)
{
    FreeMonomial m;
    if (s == "1")
        return m;
    for (const auto& f : split_factors(s)) {
        std::string name;
        int exp;
        if (!parse_power(f, name, exp))
            return std::nullopt;
        if (name == "3")
            m.e += exp;
        else if (name == "c4")
            m.a += exp;
        else if (name == "c6")
            m.b += exp;
        else if (name == "Delta")
            m.c += exp;
        else
            return std::nullopt;
    }
    return m;
}

std::string TorsionMonomial::label() const
{
    std::string s;
    append_factor(s, "alpha", eps);
    append_factor(s, "beta", k);
    append_factor(s, "Delta", j);
    if (s.empty())
        s = "1";
    return s;
}

std::optional<TorsionMonomial> TorsionMonomial::parse(const std::string& s)
{
    TorsionMonomial m;
    if (s == "1")
        return m;
    for (const auto& f : split_factors(s)) {
        std::string name;
        int exp;
        if (!parse_power(f, name, exp))
            return std::nullopt;
        if (name == "alpha")
            m.eps += exp;
        else if (name == "beta")
            m.k += exp;
        else if (name == "Delta")
            m.j += exp;
        else
            return std::nullopt;
    }
    if (m.eps > 1)
        return std::nullopt;
    return m;
}

Element Element::unit()
{
    Element e;
    e.free_part[FreeMonomial{}] = 1;
    return e;
}

Element Element::free_gen(FreeMonomial m, long long coeff)
{
    Element e;
    if (coeff != 0)
        e.free_part[m] = coeff;
    return e;
}

Element Element::torsion_gen(TorsionMonomial m, int coeff)
{
    Element e;
    coeff = ((coeff % 3) + 3) % 3;
    if (coeff != 0)
        e.torsion_part[m] = coeff;
    return e;
}

Element& Element::add_free(FreeMonomial m, long long coeff)
{
    auto it = free_part.find(m);
    long long v = (it == free_part.end() ? 0 : it->second) + coeff;
    if (v == 0)
        free_part.erase(m);
    else
        free_part[m] = v;
    return *this;
}

Element& Element::add_torsion(TorsionMonomial m, int coeff)
{
    auto it = torsion_part.find(m);
    int v = (((it == torsion_part.end() ? 0 : it->second) + coeff) % 3 + 3) % 3;
    if (v == 0)
        torsion_part.erase(m);
    else
        torsion_part[m] = v;
    return *this;
}

std::string Element::str() const
{
    if (is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : free_part) {
        if (!first)
            out << " + ";
        first = false;
        if (c != 1)
            out << c << "*";
        out << m.label();
    }
    for (const auto& [m, c] : torsion_part) {
        if (!first)
            out << " + ";
        first = false;
        if (c != 1)
            out << c << "*";
        out << m.label();
    }
    return out.str();
}

std::string KoElement::str() const
{
    if (terms.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [p, c] : terms) {
        if (!first)
            out << " + ";
        first = false;
        if (c != 1)
            out << c << "*";
        if (p == 0)
            out << "1";
        else if (p == 1)
            out << "u";
        else
            out << "u^" << p;
    }
    return out.str();
}

} // namespace jtwo

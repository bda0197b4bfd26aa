#pragma once

#include <cassert>
#include <cstdint>
#include <limits>

namespace jtwo {

inline long long pow3ll(int k)
{
    long long r = 1;
    for (int i = 0; i < k; ++i)
        r *= 3;
    return r;
}

/* 3-adic valuation of a nonzero integer */
inline int nu3(long long n)
{
    assert(n != 0);
    if (n < 0)
        n = -n;
    int v = 0;
    while (n % 3 == 0) {
        n /= 3;
        ++v;
    }
    return v;
}

/* A scalar in the 3-local integers, kept as unit * 3^val with the unit stored
 * modulo 3^kCapExp. Every torsion group in the engine has exponent far below
 * kCapExp, so comparisons of valuations and all arithmetic the group
 * computations rely on are exact at this precision. */
class Scalar3 {
public:
    static constexpr int kInfVal = std::numeric_limits<int>::max();
    static constexpr int kCapExp = 18;

    Scalar3() : val_(kInfVal), unit_(0) {}

    static Scalar3 zero() { return Scalar3(); }

    static Scalar3 one() { return make(0, 1); }

    static Scalar3 make(int val, long long unit)
    {
        Scalar3 s;
        unit %= cap();
        if (unit < 0)
            unit += cap();
        if (unit == 0) {
            s.val_ = kInfVal;
            s.unit_ = 0;
            return s;
        }
        while (unit % 3 == 0) {
            unit /= 3;
            ++val;
        }
        if (val >= kCapExp) {
            /* indistinguishable from zero at working precision */
            s.val_ = kInfVal;
            s.unit_ = 0;
            return s;
        }
        s.val_ = val;
        s.unit_ = unit;
        return s;
    }

    static Scalar3 from_int(long long n)
    {
        if (n == 0)
            return zero();
        return make(0, n);
    }

    /* 2^e - 1 with exact valuation; e up to a few hundred, so the value is
     * computed modulo 3^kCapExp via modular exponentiation. */
    static Scalar3 two_pow_minus_one(int e)
    {
        long long m = cap();
        long long r = 1, b = 2 % m;
        int ee = e;
        while (ee > 0) {
            if (ee & 1)
                r = mulmod(r, b, m);
            b = mulmod(b, b, m);
            ee >>= 1;
        }
        long long n = r - 1;
        if (e == 0)
            return zero();
        /* valuation from the closed form, unit from the residue */
        int v = (e % 2 != 0) ? 0 : 1 + nu3(e / 2);
        long long u = n;
        if (u < 0)
            u += m;
        if (u == 0)
            return zero(); /* cannot happen for e >= 1 */
        for (int i = 0; i < v; ++i)
            u /= 3;
        return make(v, u);
    }

    bool is_zero() const { return val_ == kInfVal; }
    int val() const { return val_; }
    long long unit() const { return unit_; }

    Scalar3 operator-() const
    {
        if (is_zero())
            return *this;
        return make(val_, cap() - unit_);
    }

    Scalar3 operator+(const Scalar3& o) const
    {
        if (is_zero())
            return o;
        if (o.is_zero())
            return *this;
        int v = val_ < o.val_ ? val_ : o.val_;
        long long a = shifted_unit(v);
        long long b = o.shifted_unit(v);
        return make(v, (a + b) % cap());
    }

    Scalar3 operator-(const Scalar3& o) const { return *this + (-o); }

    Scalar3 operator*(const Scalar3& o) const
    {
        if (is_zero() || o.is_zero())
            return zero();
        return make(val_ + o.val_, mulmod(unit_, o.unit_, cap()));
    }

    /* inverse of the unit part; *this must have valuation 0 */
    Scalar3 unit_inverse() const
    {
        assert(!is_zero() && val_ == 0);
        /* lift the inverse mod 3 by Newton iteration */
        long long x = (unit_ % 3 == 1) ? 1 : 2;
        long long m = 3;
        while (m < cap()) {
            m = m * m > cap() ? cap() : m * m;
            __int128 t = (__int128)x * ((2 - (__int128)unit_ * x % m) % m) % m;
            long long xt = (long long)(t % m);
            if (xt < 0)
                xt += m;
            x = xt;
        }
        return make(0, x);
    }

    /* exact division by a scalar of smaller or equal valuation */
    Scalar3 divide_by(const Scalar3& o) const
    {
        assert(!o.is_zero());
        if (is_zero())
            return zero();
        assert(val_ >= o.val_);
        Scalar3 inv = make(0, o.unit_).unit_inverse();
        return make(val_ - o.val_, mulmod(unit_, inv.unit_, cap()));
    }

    /* canonical representative in [0, 3^k) */
    long long rep_mod(int k) const
    {
        if (is_zero() || val_ >= k)
            return 0;
        long long m = pow3ll(k);
        return (shifted_unit(0) % m + m) % m;
    }

    bool operator==(const Scalar3& o) const
    {
        if (is_zero() || o.is_zero())
            return is_zero() == o.is_zero();
        return val_ == o.val_ && unit_ == o.unit_;
    }

    static long long cap() { return pow3ll(kCapExp); }

private:
    static long long mulmod(long long a, long long b, long long m)
    {
        return (long long)((__int128)a * b % m);
    }

    long long shifted_unit(int base_val) const
    {
        long long u = unit_;
        for (int i = base_val; i < val_ && u != 0; ++i)
            u = mulmod(u, 3, cap());
        return u;
    }

    int val_;
    long long unit_;
};

} // namespace jtwo

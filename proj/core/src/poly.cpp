#include "period_strata/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace period_strata {

Poly::Poly(const Rational& c)
{
    if (c != 0)
        c_.push_back(c);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs))
{
    trim();
}

Poly Poly::monomial(const Rational& c, unsigned deg)
{
    if (c == 0)
        return {};
    std::vector<Rational> v(deg + 1);
    v[deg] = c;
    return Poly(std::move(v));
}

Poly Poly::linear_root(const Rational& a)
{
    return Poly(std::vector<Rational>{-a, 1});
}

void Poly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

const Rational& Poly::lead() const
{
    if (c_.empty())
        throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
}

Rational Poly::coeff(int i) const
{
    if (i < 0 || i >= static_cast<int>(c_.size()))
        return 0;
    return c_[i];
}

Poly& Poly::operator+=(const Poly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    if (o.c_.size() > c_.size())
        c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i)
        c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0)
            continue;
        for (size_t j = 0; j < b.c_.size(); ++j)
            r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
}

Poly& Poly::operator*=(const Poly& o)
{
    *this = *this * o;
    return *this;
}

Poly& Poly::operator*=(const Rational& s)
{
    if (s == 0) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_)
        c *= s;
    return *this;
}

Poly Poly::operator-() const
{
    Poly r = *this;
    for (auto& c : r.c_)
        c = -c;
    return r;
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b)
{
    if (a.degree() != b.degree())
        return a.degree() <=> b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        int c = cmp(a.c_[i], b.c_[i]);
        if (c != 0)
            return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

Rational Poly::eval(const Rational& a) const
{
    Rational r = 0;
    for (size_t i = c_.size(); i-- > 0;)
        r = r * a + c_[i];
    return r;
}

Poly Poly::compose(const Poly& inner) const
{
    Poly r;
    for (size_t i = c_.size(); i-- > 0;)
        r = r * inner + Poly(c_[i]);
    return r;
}

Poly Poly::derivative() const
{
    if (c_.size() <= 1)
        return {};
    std::vector<Rational> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i)
        r[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return Poly(std::move(r));
}

Poly Poly::monic() const
{
    if (is_zero())
        return {};
    Rational inv = 1 / lead();
    return *this * inv;
}

std::string Poly::to_string(const std::string& var) const
{
    if (c_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        const Rational& c = c_[i];
        if (c == 0)
            continue;
        Rational mag = abs(c);
        if (first)
            out << (c < 0 ? "-" : "");
        else
            out << (c < 0 ? " - " : " + ");
        first = false;
        if (i == 0) {
            out << mag.get_str();
            continue;
        }
        if (mag != 1)
            out << mag.get_str() << "*";
        out << var;
        if (i > 1)
            out << "^" << i;
    }
    return out.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b)
{
    if (b.is_zero())
        throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree())
        return {Poly(), a};
    std::vector<Rational> rem = a.coeffs();
    const int db = b.degree();
    std::vector<Rational> q(a.degree() - db + 1);
    Rational inv = 1 / b.lead();
    for (int i = a.degree(); i >= db; --i) {
        if (rem[i] == 0)
            continue;
        Rational f = rem[i] * inv;
        q[i - db] = f;
        for (int j = 0; j <= db; ++j)
            rem[i - db + j] -= f * b.coeffs()[j];
    }
    rem.resize(db);
    return {Poly(std::move(q)), Poly(std::move(rem))};
}

Poly operator/(const Poly& a, const Poly& b)
{
    return divmod(a, b).first;
}

Poly operator%(const Poly& a, const Poly& b)
{
    return divmod(a, b).second;
}

bool divides(const Poly& d, const Poly& a)
{
    if (d.is_zero())
        return a.is_zero();
    return (a % d).is_zero();
}

Poly pow(const Poly& p, unsigned e)
{
    Poly r(1), b = p;
    while (e) {
        if (e & 1)
            r *= b;
        e >>= 1;
        if (e)
            b = b * b;
    }
    return r;
}

Poly poly_shift(const Poly& p, const Rational& c)
{
    // Horner in (T + c) keeps the work quadratic
    return p.compose(Poly(std::vector<Rational>{c, 1}));
}

Poly gcd(const Poly& a, const Poly& b)
{
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

Bezout poly_gcd_bezout(const Poly& a, const Poly& b)
{
    if (a.is_zero() && b.is_zero())
        throw std::invalid_argument("gcd of two zero polynomials");
    Poly r0 = a, r1 = b, s0(1), s1, t0, t1(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        Poly s = s0 - q * s1;
        Poly t = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    Rational inv = 1 / r0.lead();
    return {r0 * inv, s0 * inv, t0 * inv};
}

Poly inverse_mod(const Poly& a, const Poly& m)
{
    if (m.degree() < 1)
        return {};
    Poly red = a % m;
    if (red.is_zero())
        return {};
    Bezout b = poly_gcd_bezout(red, m);
    if (b.g != Poly(1))
        return {};
    return b.u % m;
}

}  // namespace period_strata

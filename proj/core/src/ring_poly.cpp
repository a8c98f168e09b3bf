#include "period_strata/ring_poly.hpp"

#include <sstream>
#include <stdexcept>

namespace period_strata {

RingPoly::RingPoly(Ring ring, std::vector<Poly> coeffs) : ring_(std::move(ring)), c_(std::move(coeffs))
{
    for (auto& c : c_)
        c = ring_.reduce(c);
    trim();
}

RingPoly RingPoly::from_rational(const Ring& ring, const Poly& p)
{
    std::vector<Poly> c;
    for (const auto& q : p.coeffs())
        c.emplace_back(q);
    return {ring, std::move(c)};
}

RingPoly RingPoly::linear(const RingElement& r)
{
    return {r.ring(), {-r.value(), Poly(1)}};
}

void RingPoly::trim()
{
    while (!c_.empty() && c_.back().is_zero())
        c_.pop_back();
}

RingPoly RingPoly::operator+(const RingPoly& o) const
{
    if (!(ring_ == o.ring_))
        throw std::invalid_argument("ring mismatch in polynomial sum");
    std::vector<Poly> c = c_;
    if (o.c_.size() > c.size())
        c.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i)
        c[i] += o.c_[i];
    return {ring_, std::move(c)};
}

RingPoly RingPoly::operator-(const RingPoly& o) const
{
    if (!(ring_ == o.ring_))
        throw std::invalid_argument("ring mismatch in polynomial difference");
    std::vector<Poly> c = c_;
    if (o.c_.size() > c.size())
        c.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i)
        c[i] -= o.c_[i];
    return {ring_, std::move(c)};
}

RingPoly RingPoly::operator*(const RingPoly& o) const
{
    if (!(ring_ == o.ring_))
        throw std::invalid_argument("ring mismatch in polynomial product");
    if (is_zero() || o.is_zero())
        return RingPoly(ring_);
    std::vector<Poly> c(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j)
            c[i + j] += c_[i] * o.c_[j];
    return {ring_, std::move(c)};
}

RingElement RingPoly::eval(const RingElement& a) const
{
    if (!(a.ring() == ring_))
        throw std::invalid_argument("ring mismatch in polynomial evaluation");
    Poly r;
    for (size_t i = c_.size(); i-- > 0;)
        r = ring_.reduce(r * a.value() + c_[i]);
    return {ring_, r};
}

Matrix RingPoly::eval(const Matrix& a) const
{
    if (!a.is_square())
        throw std::invalid_argument("polynomial of a non-square matrix");
    Matrix r(ring_, a.rows(), a.cols());
    Matrix id = Matrix::identity(ring_, a.rows());
    for (size_t i = c_.size(); i-- > 0;)
        r = r * a + id * c_[i];
    return r;
}

RingPoly RingPoly::shift(const RingElement& c) const
{
    RingPoly lin(ring_, {c.value(), Poly(1)});
    RingPoly r(ring_);
    for (size_t i = c_.size(); i-- > 0;)
        r = r * lin + RingPoly(ring_, {c_[i]});
    return r;
}

std::pair<RingPoly, RingPoly> RingPoly::divmod_monic(const RingPoly& d) const
{
    if (!d.is_monic())
        throw std::invalid_argument("divisor must be monic");
    if (degree() < d.degree())
        return {RingPoly(ring_), *this};
    std::vector<Poly> rem = c_;
    const int dd = d.degree();
    std::vector<Poly> q(degree() - dd + 1);
    for (int i = degree(); i >= dd; --i) {
        Poly f = rem[i];
        if (f.is_zero())
            continue;
        q[i - dd] = f;
        for (int j = 0; j <= dd; ++j)
            rem[i - dd + j] = ring_.reduce(rem[i - dd + j] - f * d.c_[j]);
    }
    rem.resize(dd);
    return {RingPoly(ring_, std::move(q)), RingPoly(ring_, std::move(rem))};
}

RingPoly RingPoly::map(const RingMap& m) const
{
    if (!(m.source() == ring_))
        throw std::invalid_argument("ring map source mismatch");
    std::vector<Poly> c;
    for (const auto& p : c_)
        c.push_back(m.apply(p));
    return {m.target(), std::move(c)};
}

RingPoly RingPoly::monic() const
{
    if (is_zero())
        throw std::domain_error("monic of the zero polynomial");
    RingElement inv = RingElement(ring_, c_.back()).inverse();
    std::vector<Poly> c;
    for (const auto& p : c_)
        c.push_back(p * inv.value());
    return {ring_, std::move(c)};
}

std::string RingPoly::to_string(const std::string& tvar) const
{
    if (c_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero())
            continue;
        if (!first)
            out << " + ";
        first = false;
        std::string c = c_[i].to_string(ring_.var());
        bool bare = c_[i].is_constant();
        if (i == 0) {
            out << (bare ? c : "(" + c + ")");
            continue;
        }
        if (c_[i] == Poly(-1))
            out << "-";
        else if (c_[i] != Poly(1))
            out << (bare ? c : "(" + c + ")") << "*";
        out << tvar;
        if (i > 1)
            out << "^" << i;
    }
    return out.str();
}

}  // namespace period_strata

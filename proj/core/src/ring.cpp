#include "period_strata/ring.hpp"

#include <stdexcept>

namespace period_strata {

Ring Ring::rationals()
{
    return Ring(RingKind::rationals, "x", Poly());
}

Ring Ring::polynomials(std::string var)
{
    return Ring(RingKind::polynomials, std::move(var), Poly());
}

Ring Ring::quotient(const Poly& modulus, std::string var)
{
    if (modulus.degree() < 1)
        throw std::invalid_argument("quotient modulus must have degree >= 1");
    return Ring(RingKind::quotient, std::move(var), modulus.monic());
}

Poly Ring::reduce(const Poly& p) const
{
    switch (kind_) {
    case RingKind::rationals:
        if (p.degree() > 0)
            throw std::invalid_argument("non-constant value in Q");
        return p;
    case RingKind::polynomials:
        return p;
    case RingKind::quotient:
        return p.degree() < modulus_.degree() ? p : p % modulus_;
    }
    return p;
}

bool Ring::contains(const Poly& p) const
{
    switch (kind_) {
    case RingKind::rationals:
        return p.degree() <= 0;
    case RingKind::polynomials:
        return true;
    case RingKind::quotient:
        return p.degree() < modulus_.degree();
    }
    return false;
}

unsigned Ring::qdim() const
{
    switch (kind_) {
    case RingKind::rationals:
        return 1;
    case RingKind::polynomials:
        return 0;
    case RingKind::quotient:
        return static_cast<unsigned>(modulus_.degree());
    }
    return 0;
}

std::string Ring::to_string() const
{
    switch (kind_) {
    case RingKind::rationals:
        return "QQ";
    case RingKind::polynomials:
        return "QQ[" + var_ + "]";
    case RingKind::quotient:
        return "QQ[" + var_ + "]/(" + modulus_.to_string(var_) + ")";
    }
    return "?";
}

bool Ring::is_integral() const
{
    if (kind_ != RingKind::quotient)
        return true;
    auto fs = factor(modulus_);
    return fs.size() == 1 && fs.front().second == 1;
}

unsigned residue_degree(const Ring& r)
{
    if (r.kind() != RingKind::quotient)
        return 1;
    auto fs = factor(r.modulus());
    if (fs.size() == 1)
        return static_cast<unsigned>(fs.front().first.degree());
    return 1;
}

RingElement::RingElement(Ring ring, const Poly& value) : ring_(std::move(ring)), value_(ring_.reduce(value)) {}

void RingElement::check_same(const RingElement& o) const
{
    if (!(ring_ == o.ring_))
        throw std::invalid_argument("ring mismatch: " + ring_.to_string() + " vs " + o.ring_.to_string());
}

RingElement RingElement::operator+(const RingElement& o) const
{
    check_same(o);
    return {ring_, value_ + o.value_};
}

RingElement RingElement::operator-(const RingElement& o) const
{
    check_same(o);
    return {ring_, value_ - o.value_};
}

RingElement RingElement::operator*(const RingElement& o) const
{
    check_same(o);
    return {ring_, value_ * o.value_};
}

RingElement RingElement::operator-() const
{
    return {ring_, -value_};
}

bool is_unit(const RingElement& a)
{
    const Poly& v = a.value();
    switch (a.ring().kind()) {
    case RingKind::rationals:
        return !v.is_zero();
    case RingKind::polynomials:
        return v.degree() == 0;
    case RingKind::quotient:
        return !v.is_zero() && gcd(v, a.ring().modulus()) == Poly(1);
    }
    return false;
}

RingElement RingElement::inverse() const
{
    if (!is_unit(*this))
        throw std::domain_error("not a unit: " + to_string() + " in " + ring_.to_string());
    if (ring_.kind() != RingKind::quotient)
        return {ring_, Poly(1 / value_.lead())};
    return {ring_, inverse_mod(value_, ring_.modulus())};
}

RingMap RingMap::evaluate_at(const Ring& source, const Rational& a)
{
    if (source.kind() == RingKind::rationals)
        throw std::invalid_argument("evaluate-at needs a polynomial or quotient source");
    if (source.kind() == RingKind::quotient && source.modulus().eval(a) != 0)
        throw std::invalid_argument("evaluate-at " + period_strata::to_string(a) + " is not defined on " + source.to_string());
    return RingMap(source, Ring::rationals(), RingMapKind::evaluate_at, a);
}

RingMap RingMap::project_to_quotient(const Ring& source, const Poly& modulus)
{
    if (source.kind() == RingKind::rationals)
        throw std::invalid_argument("project-to-quotient needs a polynomial or quotient source");
    Ring target = Ring::quotient(modulus, source.var());
    if (source.kind() == RingKind::quotient && !divides(target.modulus(), source.modulus()))
        throw std::invalid_argument("target modulus does not divide " + source.modulus().to_string(source.var()));
    return RingMap(source, target, RingMapKind::project_to_quotient, 0);
}

RingMap RingMap::inclusion(const Ring& source, const Ring& target)
{
    bool ok = source.kind() == RingKind::rationals || source == target;
    if (!ok)
        throw std::invalid_argument("no inclusion " + source.to_string() + " -> " + target.to_string());
    return RingMap(source, target, RingMapKind::inclusion, 0);
}

Poly RingMap::apply(const Poly& p) const
{
    if (!source_.contains(p))
        throw std::invalid_argument("value outside the source ring");
    switch (kind_) {
    case RingMapKind::evaluate_at:
        return Poly(p.eval(point_));
    case RingMapKind::project_to_quotient:
    case RingMapKind::inclusion:
        return target_.reduce(p);
    }
    return p;
}

std::string RingMap::to_string() const
{
    switch (kind_) {
    case RingMapKind::evaluate_at:
        return "evaluate-at(" + period_strata::to_string(point_) + ")";
    case RingMapKind::project_to_quotient:
        return "project-to-quotient(" + target_.modulus().to_string(target_.var()) + ")";
    case RingMapKind::inclusion:
        return "inclusion(" + source_.to_string() + " -> " + target_.to_string() + ")";
    }
    return "?";
}

RingElement apply_ring_map(const RingElement& a, const RingMap& m)
{
    if (!(a.ring() == m.source()))
        throw std::invalid_argument("element of " + a.ring().to_string() + " given to map from " +
                                    m.source().to_string());
    return {m.target(), m.apply(a.value())};
}

std::vector<RingElement> crt_idempotents(const std::vector<Poly>& factors, const std::string& var)
{
    if (factors.empty())
        throw std::invalid_argument("crt_idempotents needs at least one factor");
    Poly prod(1);
    for (const auto& f : factors) {
        if (f.degree() < 1)
            throw std::invalid_argument("crt factor of degree < 1");
        prod *= f;
    }
    for (size_t i = 0; i < factors.size(); ++i)
        for (size_t j = i + 1; j < factors.size(); ++j)
            if (gcd(factors[i], factors[j]).degree() > 0)
                throw std::domain_error("crt factors " + std::to_string(i) + " and " + std::to_string(j) +
                                        " are not coprime");
    Ring ring = Ring::quotient(prod, var);
    std::vector<RingElement> out;
    for (const auto& f : factors) {
        Poly cof = prod / f;
        Poly inv = inverse_mod(cof, f);
        out.emplace_back(ring, cof * inv);
    }
    return out;
}

}  // namespace period_strata

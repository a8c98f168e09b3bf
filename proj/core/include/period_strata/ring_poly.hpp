#pragma once

#include "period_strata/matrix.hpp"

#include <string>
#include <vector>

namespace period_strata {

// Polynomial in T whose coefficients lie in one of the supported rings.
class RingPoly {
public:
    explicit RingPoly(Ring ring) : ring_(std::move(ring)) {}
    RingPoly(Ring ring, std::vector<Poly> coeffs);
    // Q-coefficient polynomial viewed over the ring
    static RingPoly from_rational(const Ring& ring, const Poly& p);
    // T - r
    static RingPoly linear(const RingElement& r);

    const Ring& ring() const { return ring_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Poly>& coeffs() const { return c_; }
    Poly coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Poly(); }
    bool is_monic() const { return !c_.empty() && c_.back() == Poly(1); }

    RingPoly operator+(const RingPoly& o) const;
    RingPoly operator-(const RingPoly& o) const;
    RingPoly operator*(const RingPoly& o) const;
    friend bool operator==(const RingPoly&, const RingPoly&) = default;

    RingElement eval(const RingElement& a) const;
    Matrix eval(const Matrix& a) const;
    // P(T + c)
    RingPoly shift(const RingElement& c) const;
    // division by a monic polynomial
    std::pair<RingPoly, RingPoly> divmod_monic(const RingPoly& d) const;
    RingPoly map(const RingMap& m) const;
    // scale so that the leading coefficient is 1; requires a unit leading coefficient
    RingPoly monic() const;

    std::string to_string(const std::string& tvar = "T") const;

private:
    void trim();
    Ring ring_;
    std::vector<Poly> c_;
};

}  // namespace period_strata

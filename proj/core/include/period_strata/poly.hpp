#pragma once

#include "period_strata/rational.hpp"

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace period_strata {

// Dense univariate polynomial over Q, coefficients lowest degree first.
// The zero polynomial has no coefficients, so degree() is -1 for it.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c);
    Poly(long c) : Poly(Rational(c)) {}
    explicit Poly(std::vector<Rational> coeffs);

    static Poly monomial(const Rational& c, unsigned deg);
    static Poly x() { return monomial(1, 1); }
    // x - a
    static Poly linear_root(const Rational& a);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }
    const Rational& lead() const;
    Rational coeff(int i) const;
    const std::vector<Rational>& coeffs() const { return c_; }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rational& s);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
    Poly operator-() const;

    friend bool operator==(const Poly&, const Poly&) = default;
    // degree first, then coefficients from the top; gives a canonical order
    friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

    Rational eval(const Rational& a) const;
    Poly compose(const Poly& inner) const;
    Poly derivative() const;
    Poly monic() const;

    std::string to_string(const std::string& var = "x") const;

private:
    void trim();
    std::vector<Rational> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);  // quotient, exactness not checked
Poly operator%(const Poly& a, const Poly& b);
bool divides(const Poly& d, const Poly& a);
Poly pow(const Poly& p, unsigned e);

// P(T + c)
Poly poly_shift(const Poly& p, const Rational& c);

// monic gcd; gcd(0, 0) = 0
Poly gcd(const Poly& a, const Poly& b);

struct Bezout {
    Poly g, u, v;
};
// g monic, g = u*a + v*b; throws std::invalid_argument when both are zero
Bezout poly_gcd_bezout(const Poly& a, const Poly& b);

// inverse of a modulo m, or a zero polynomial if gcd(a, m) != 1
Poly inverse_mod(const Poly& a, const Poly& m);

// Monic irreducible factors over Q with multiplicities, sorted canonically.
// The constant content is dropped.
std::vector<std::pair<Poly, int>> factor(const Poly& p);
std::vector<Rational> rational_roots(const Poly& p);
// product of the distinct monic irreducible factors
Poly squarefree_part(const Poly& p);

}  // namespace period_strata

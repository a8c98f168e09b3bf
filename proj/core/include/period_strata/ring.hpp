#pragma once

#include "period_strata/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace period_strata {

enum class RingKind { rationals, polynomials, quotient };

// One of Q, Q[x], Q[x]/(f) with f monic of degree >= 1.
class Ring {
public:
    static Ring rationals();
    static Ring polynomials(std::string var = "x");
    // the modulus is normalized to be monic; throws if its degree is < 1
    static Ring quotient(const Poly& modulus, std::string var = "x");

    RingKind kind() const { return kind_; }
    const std::string& var() const { return var_; }
    const Poly& modulus() const { return modulus_; }
    // Q, Q[x], or a quotient by an irreducible modulus
    bool is_integral() const;
    bool is_pid() const { return kind_ != RingKind::quotient; }

    // canonical representative of a polynomial in this ring
    Poly reduce(const Poly& p) const;
    bool contains(const Poly& p) const;
    // dimension over Q, or 0 when infinite
    unsigned qdim() const;

    std::string to_string() const;

    friend bool operator==(const Ring&, const Ring&) = default;

private:
    Ring(RingKind kind, std::string var, Poly modulus)
        : kind_(kind), var_(std::move(var)), modulus_(std::move(modulus)) {}

    RingKind kind_;
    std::string var_;
    Poly modulus_;
};

class RingElement {
public:
    RingElement(Ring ring, const Poly& value);
    static RingElement constant(Ring ring, const Rational& c) { return {std::move(ring), Poly(c)}; }

    const Ring& ring() const { return ring_; }
    const Poly& value() const { return value_; }
    bool is_zero() const { return value_.is_zero(); }

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator*(const RingElement& o) const;
    RingElement operator-() const;
    // throws std::domain_error when not a unit
    RingElement inverse() const;

    friend bool operator==(const RingElement&, const RingElement&) = default;

    std::string to_string() const { return value_.to_string(ring_.var()); }

private:
    void check_same(const RingElement& o) const;
    Ring ring_;
    Poly value_;
};

bool is_unit(const RingElement& a);

enum class RingMapKind { evaluate_at, project_to_quotient, inclusion };

class RingMap {
public:
    // Q[x] -> Q, or Q[x]/(f) -> Q when f(a) = 0
    static RingMap evaluate_at(const Ring& source, const Rational& a);
    // Q[x] -> Q[x]/(g), or Q[x]/(f) -> Q[x]/(g) when g | f
    static RingMap project_to_quotient(const Ring& source, const Poly& modulus);
    // Q -> any ring, or the identity on Q[x]
    static RingMap inclusion(const Ring& source, const Ring& target);

    const Ring& source() const { return source_; }
    const Ring& target() const { return target_; }
    RingMapKind kind() const { return kind_; }
    const Rational& point() const { return point_; }

    Poly apply(const Poly& p) const;
    std::string to_string() const;

private:
    RingMap(Ring s, Ring t, RingMapKind k, Rational a)
        : source_(std::move(s)), target_(std::move(t)), kind_(k), point_(std::move(a)) {}

    Ring source_;
    Ring target_;
    RingMapKind kind_;
    Rational point_;
};

RingElement apply_ring_map(const RingElement& a, const RingMap& m);

// Pairwise coprime factors f_1..f_r; returns e_i in Q[x]/(prod f_i) with
// e_i = 1 mod f_i and e_i = 0 mod f_j for j != i.
std::vector<RingElement> crt_idempotents(const std::vector<Poly>& factors, const std::string& var = "x");

// Residue field degree when the quotient modulus is a power of one
// irreducible polynomial; 1 for Q and for non-local quotients.
unsigned residue_degree(const Ring& r);

}  // namespace period_strata

#pragma once

#include "period_strata/drdatum.hpp"
#include "period_strata/family.hpp"

#include <optional>
#include <string>
#include <vector>

namespace period_strata {

enum class LocusKind { finite, cofinite, everything, empty };

// A subset of the affine line over Q made of Galois orbits, each orbit given
// by its monic irreducible minimal polynomial.
class Locus {
public:
    Locus() = default;  // empty
    static Locus everything();
    static Locus empty() { return Locus(); }
    static Locus finite(std::vector<Poly> orbits);
    static Locus cofinite(std::vector<Poly> excluded);
    // zero set of g; everything for g = 0
    static Locus zeros(const Poly& g);

    LocusKind kind() const;
    // the listed orbits: members when finite, excluded ones when cofinite
    const std::vector<Poly>& orbits() const { return orbits_; }

    bool contains(const Rational& a) const;
    bool contains_orbit(const Poly& h) const;

    Locus complement() const;
    Locus intersect(const Locus& o) const;
    Locus unite(const Locus& o) const;
    Locus minus(const Locus& o) const { return intersect(o.complement()); }
    bool subset_of(const Locus& o) const;

    std::string to_string(const std::string& var = "x") const;
    friend bool operator==(const Locus&, const Locus&) = default;

private:
    Locus(bool cofinite, std::vector<Poly> orbits);
    bool cofinite_ = false;
    std::vector<Poly> orbits_;
};

// Omega(w) >= m, from the m lowest coefficients of P(T - w)
Locus sen_stratum_locus(const DifTower& t, int w, int m);
// points x with D <= D_x
Locus datum_stratum_locus(const DifTower& t, const DeRhamDatum& d);

struct RemovedLocus {
    DeRhamDatum datum;
    Locus locus;
};

struct Stratum {
    DeRhamDatum datum;
    Locus closed;
    std::vector<RemovedLocus> removed;

    // closed minus the removed loci
    Locus points() const;
};

// Strata of the data truncated to [i, j], generic stratum first, the rest
// in canonical datum order.
std::vector<Stratum> strata_decomposition(const DifTower& t, int i, int j);

// truncated pointwise datum at one orbit
DeRhamDatum orbit_datum(const DifTower& t, const Poly& orbit, int i, int j);

enum class Verdict { constant, counterexample, vacuous };
std::string verdict_label(Verdict v);

struct ReportRow {
    std::string point;  // "x = a" or the orbit polynomial
    size_t h0 = 0, h1 = 0;
    bool matches = false;
};

struct StratumReport {
    int k = 0, l = 0;
    int expected = 0;
    std::vector<ReportRow> rows;
    std::vector<std::string> notes;
    Verdict verdict = Verdict::vacuous;
};

// sample points 0, 1, -1, 2, -2, ... outside the excluded orbits
std::vector<Rational> sample_points(const Locus& locus, size_t budget);

StratumReport stratum_report(const DifTower& t, const Stratum& s, int k, int l, size_t budget = 25);

}  // namespace period_strata

#pragma once

#include "period_strata/drdatum.hpp"
#include "period_strata/matrix.hpp"
#include "period_strata/module_algebra.hpp"
#include "period_strata/ring_poly.hpp"

#include <optional>
#include <vector>

namespace period_strata {

// Rank-n free module with operator blocks A_0 .. A_{m-1}. A_0 is the Sen
// operator; the higher blocks couple consecutive layers of the tower.
class DifTower {
public:
    // throws std::invalid_argument for empty, non-square or mismatched blocks
    DifTower(Ring ring, size_t rank, std::vector<Matrix> blocks);

    const Ring& ring() const { return ring_; }
    size_t rank() const { return rank_; }
    size_t depth() const { return blocks_.size(); }
    const std::vector<Matrix>& blocks() const { return blocks_; }
    // zero beyond the depth
    Matrix block(size_t s) const;

    friend bool operator==(const DifTower&, const DifTower&) = default;

private:
    Ring ring_;
    size_t rank_;
    std::vector<Matrix> blocks_;
};

DifTower specialize(const DifTower& t, const RingMap& m);

RingPoly sen_polynomial(const DifTower& t);

// multiplicity of (T + i) in P for every integer i where it is positive
OmegaMap weight_multiplicities(const RingPoly& p);

struct SenFactorization {
    RingPoly p, s, q;
    OmegaMap omega;
};

SenFactorization factor_sen(const RingPoly& p);
// Q(0) Q(-1) ... Q(-(k-1))
RingElement cumulative_cofactor(const RingPoly& q, unsigned k);

// Block lower-triangular matrix of size n(l-k): diagonal block a is
// A_0 + (k+a) I and block (a+s, a) is A_s.
Matrix tower_matrix(const DifTower& t, int k, int l);

struct CohomologyDims {
    size_t h0 = 0, h1 = 0;
    friend bool operator==(const CohomologyDims&, const CohomologyDims&) = default;
};

// Without a map: generic co-ranks over Q and Q[x], and dimensions over the
// residue field for quotient rings. With a map: dimensions after base change,
// Q-dimensions divided by the residue degree of the target.
CohomologyDims cohomology_dims(const DifTower& t, int k, int l, const std::optional<RingMap>& at = std::nullopt);

// Omega from the Sen polynomial and Delta from generic h0 on the window.
// Needs an integral ring.
DeRhamDatum family_datum(const DifTower& t);
DeRhamDatum pointwise_datum(const DifTower& t, const RingMap& point);

// model of the dual twisted by s: A_0 -> s I - A_0^T, A_j -> -A_j^T
DifTower dual_twist(const DifTower& t, int s);
DifTower direct_sum(const DifTower& a, const DifTower& b);

struct StabilizedDim {
    size_t d = 0;
    int l_star = 0;
    std::vector<size_t> sequence;  // h0(k, l) for l = k+1, k+2, ...
};

// Locus: a map to Q or to a quotient ring, or none when the tower ring is
// already Q or a quotient ring.
StabilizedDim stabilized_plus_dim(const DifTower& t, int k, const std::optional<RingMap>& at = std::nullopt);

// integer weights of A_0 after the map, read from the Q-expansion
OmegaMap locus_weights(const DifTower& t, const std::optional<RingMap>& at = std::nullopt);

}  // namespace period_strata

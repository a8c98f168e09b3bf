#pragma once

#include "period_strata/drdatum.hpp"
#include "period_strata/family.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>

namespace period_strata::cli {

class Unrealizable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Tower over Q[x] whose generic datum is the target. Weights become Jordan
// cells of A_0 (one cell per independent period of the step), and Delta
// deficits are created by couplings (x - c) in the higher blocks. Every
// attempt is checked with family_datum; throws Unrealizable after
// max_attempts failures. rank defaults to sd(target), extra rank is filled
// with weightless eigenvalue 1/2.
DifTower generate_random_family(const DeRhamDatum& target, uint64_t seed, std::optional<size_t> rank = std::nullopt,
                                int max_attempts = 64);

// Random tower for the verification suites: upper triangular A_0 with
// mostly integer eigenvalues conjugated over Q, sparse higher blocks.
DifTower random_tower(std::mt19937_64& rng, const Ring& ring, size_t rank, size_t depth);

}  // namespace period_strata::cli

#pragma once

// Hand-rolled random generators for property tests. Everything is driven
// by an explicit seed so failures can be replayed.

#include "period_strata/matrix.hpp"

#include <cstdint>
#include <random>

namespace period_strata::testing {

class Gen {
public:
    explicit Gen(uint64_t seed) : rng_(seed) {}

    // uniform in [lo, hi]; plain modulo keeps the stream portable across
    // standard libraries
    long range(long lo, long hi)
    {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(rng_() % span);
    }

    bool chance(unsigned percent) { return range(0, 99) < static_cast<long>(percent); }

    Rational rational(long bound = 5, long max_den = 3)
    {
        return make_rational(range(-bound, bound), range(1, max_den));
    }

    Poly poly(int max_deg, long bound = 4, long max_den = 1)
    {
        int d = static_cast<int>(range(-1, max_deg));
        std::vector<Rational> c;
        for (int i = 0; i <= d; ++i)
            c.push_back(make_rational(range(-bound, bound), range(1, max_den)));
        return Poly(std::move(c));
    }

    Poly monic_poly(int deg, long bound = 4)
    {
        std::vector<Rational> c;
        for (int i = 0; i < deg; ++i)
            c.push_back(Rational(range(-bound, bound)));
        c.push_back(1);
        return Poly(std::move(c));
    }

    Matrix matrix(const Ring& ring, size_t rows, size_t cols, int max_deg, long bound = 4, unsigned zero_pct = 30)
    {
        Matrix m(ring, rows, cols);
        int deg = ring.kind() == RingKind::rationals ? 0 : max_deg;
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
                if (!chance(zero_pct))
                    m.set(i, j, poly(deg, bound));
        return m;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace period_strata::testing

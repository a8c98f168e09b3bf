#include "period_strata/cli/random_family.hpp"

#include <algorithm>

namespace period_strata::cli {

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi)
{
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(rng() % span);
}

struct Cell {
    int weight;
    size_t start, size;
};

// split m into parts pieces, each >= 1
std::vector<size_t> random_partition(std::mt19937_64& rng, size_t m, size_t parts)
{
    std::vector<size_t> out(parts, 1);
    for (size_t extra = m - parts; extra > 0; --extra)
        ++out[static_cast<size_t>(uniform(rng, 0, static_cast<long>(parts) - 1))];
    return out;
}

std::optional<DifTower> attempt(const DeRhamDatum& target, std::mt19937_64& rng, size_t rank)
{
    Ring ring = Ring::polynomials("x");
    const int lo = *target.lower(), hi = *target.upper();
    const size_t depth = static_cast<size_t>(hi - lo + 2);

    std::vector<Cell> cells;
    size_t pos = 0;
    for (int w = lo; w <= hi; ++w) {
        size_t m = static_cast<size_t>(target.omega(w));
        if (m == 0)
            continue;
        size_t k = static_cast<size_t>(target.delta(w, w + 1));
        for (size_t sz : random_partition(rng, m, k)) {
            cells.push_back({w, pos, sz});
            pos += sz;
        }
    }
    std::vector<Matrix> blocks(depth, Matrix(ring, rank, rank));
    for (const auto& c : cells)
        for (size_t i = 0; i < c.size; ++i) {
            blocks[0].set(c.start + i, c.start + i, Poly(-c.weight));
            if (i + 1 < c.size)
                blocks[0].set(c.start + i, c.start + i + 1, Poly(1));
        }
    for (size_t i = pos; i < rank; ++i)
        blocks[0].set(i, i, Poly(make_rational(1, 2)));

    auto current = [&]() { return family_datum(DifTower(ring, rank, blocks)); };
    DeRhamDatum have = current();
    for (int len = 2; len <= hi - lo + 1; ++len)
        for (int k = lo; k + len <= hi + 1; ++k) {
            const int l = k + len;
            std::vector<size_t> from, to;
            for (size_t c = 0; c < cells.size(); ++c) {
                if (cells[c].weight == k)
                    from.push_back(c);
                if (cells[c].weight == l - 1)
                    to.push_back(c);
            }
            int tries = 0;
            while (have.delta(k, l) > target.delta(k, l)) {
                if (from.empty() || to.empty() || ++tries > 24)
                    return std::nullopt;
                const Cell& a = cells[from[static_cast<size_t>(uniform(rng, 0, static_cast<long>(from.size()) - 1))]];
                const Cell& b = cells[to[static_cast<size_t>(uniform(rng, 0, static_cast<long>(to.size()) - 1))]];
                // kernel vector of cell a into the cokernel direction of cell b
                const size_t row = b.start + b.size - 1, col = a.start;
                Matrix& blk = blocks[static_cast<size_t>(l - 1 - k)];
                Poly old = blk(row, col);
                blk.set(row, col, old + Poly::x() - Poly(uniform(rng, -4, 4)));
                DeRhamDatum next = current();
                bool ok = next.delta(k, l) < have.delta(k, l);
                for (int a2 = lo; a2 <= hi && ok; ++a2)
                    for (int b2 = a2 + 1; b2 <= hi + 1 && ok; ++b2)
                        ok = next.delta(a2, b2) >= target.delta(a2, b2);
                if (ok)
                    have = next;
                else
                    blk.set(row, col, old);
            }
        }
    DifTower t(ring, rank, blocks);
    if (!(family_datum(t) == target))
        return std::nullopt;
    return t;
}

}  // namespace

DifTower generate_random_family(const DeRhamDatum& target, uint64_t seed, std::optional<size_t> rank,
                                int max_attempts)
{
    const size_t sd = static_cast<size_t>(dimensions(target).sd);
    const size_t n = rank.value_or(std::max<size_t>(sd, 1));
    if (n < sd)
        throw Unrealizable("rank " + std::to_string(n) + " is below the Sen dimension " + std::to_string(sd));
    Ring ring = Ring::polynomials("x");
    if (target.is_zero()) {
        Matrix a0(ring, n, n);
        for (size_t i = 0; i < n; ++i)
            a0.set(i, i, Poly(make_rational(1, 2)));
        return DifTower(ring, n, {a0});
    }
    std::mt19937_64 rng(seed);
    for (int i = 0; i < max_attempts; ++i)
        if (auto t = attempt(target, rng, n))
            return *t;
    throw Unrealizable("no tower found for " + to_literal(target) + " after " + std::to_string(max_attempts) +
                       " attempts");
}

DifTower random_tower(std::mt19937_64& rng, const Ring& ring, size_t rank, size_t depth)
{
    const bool has_x = ring.kind() != RingKind::rationals;
    auto small_poly = [&](int deg) {
        std::vector<Rational> c;
        for (int i = 0; i <= deg; ++i)
            c.emplace_back(uniform(rng, -2, 2));
        return Poly(std::move(c));
    };
    Matrix t(ring, rank, rank);
    for (size_t i = 0; i < rank; ++i) {
        Poly d(-uniform(rng, -1, 3));
        long roll = uniform(rng, 0, 9);
        if (has_x && roll < 2)
            d += Poly::x() * Rational(uniform(rng, 1, 2));
        else if (roll == 2)
            d = Poly(make_rational(2 * uniform(rng, -3, 3) + 1, 2));
        t.set(i, i, d);
        for (size_t j = i + 1; j < rank; ++j)
            if (uniform(rng, 0, 1) == 0)
                t.set(i, j, small_poly(has_x ? 1 : 0));
    }
    Matrix c = Matrix::identity(ring, rank), ci = Matrix::identity(ring, rank);
    for (size_t step = 0; rank > 1 && step < 2 * rank; ++step) {
        size_t i = static_cast<size_t>(uniform(rng, 0, static_cast<long>(rank) - 1));
        size_t j = static_cast<size_t>(uniform(rng, 0, static_cast<long>(rank) - 2));
        if (j >= i)
            ++j;
        Poly f(uniform(rng, -2, 2));
        c.add_row_multiple(i, j, f);
        ci.add_col_multiple(j, i, -f);
    }
    std::vector<Matrix> blocks{c * t * ci};
    for (size_t s = 1; s < depth; ++s) {
        Matrix m(ring, rank, rank);
        for (size_t i = 0; i < rank; ++i)
            for (size_t j = 0; j < rank; ++j)
                if (uniform(rng, 0, 9) < 3)
                    m.set(i, j, small_poly(has_x ? 1 : 0));
        blocks.push_back(std::move(m));
    }
    return DifTower(ring, rank, std::move(blocks));
}

}  // namespace period_strata::cli

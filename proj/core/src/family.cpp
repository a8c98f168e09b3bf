#include "period_strata/family.hpp"

#include <algorithm>
#include <stdexcept>

namespace period_strata {

DifTower::DifTower(Ring ring, size_t rank, std::vector<Matrix> blocks)
    : ring_(std::move(ring)), rank_(rank), blocks_(std::move(blocks))
{
    if (blocks_.empty())
        throw std::invalid_argument("tower needs at least one block");
    for (size_t s = 0; s < blocks_.size(); ++s) {
        const Matrix& b = blocks_[s];
        if (b.rows() != rank_ || b.cols() != rank_)
            throw std::invalid_argument("block " + std::to_string(s) + " is " + std::to_string(b.rows()) + "x" +
                                        std::to_string(b.cols()) + ", expected " + std::to_string(rank_) + "x" +
                                        std::to_string(rank_));
        if (!(b.ring() == ring_))
            throw std::invalid_argument("block " + std::to_string(s) + " is over " + b.ring().to_string() +
                                        ", expected " + ring_.to_string());
    }
}

Matrix DifTower::block(size_t s) const
{
    if (s < blocks_.size())
        return blocks_[s];
    return Matrix(ring_, rank_, rank_);
}

DifTower specialize(const DifTower& t, const RingMap& m)
{
    std::vector<Matrix> bs;
    for (const auto& b : t.blocks())
        bs.push_back(map_entries(b, m));
    return DifTower(m.target(), t.rank(), std::move(bs));
}

RingPoly sen_polynomial(const DifTower& t)
{
    return char_poly(t.block(0));
}

namespace {

// integer roots of the part of P free of x, a superset of the integer roots of P
std::vector<int> weight_candidates(const RingPoly& p)
{
    std::vector<Rational> c;
    for (const auto& a : p.coeffs())
        c.push_back(a.coeff(0));
    Poly base(std::move(c));
    std::vector<int> out;
    if (base.is_zero())
        throw std::invalid_argument("Sen polynomial without a rational part");
    for (const auto& r : rational_roots(base))
        if (is_integer(r)) {
            if (!r.get_num().fits_sint_p())
                throw std::overflow_error("weight out of range");
            out.push_back(-static_cast<int>(r.get_num().get_si()));
        }
    return out;
}

}  // namespace

OmegaMap weight_multiplicities(const RingPoly& p)
{
    if (p.is_zero())
        throw std::invalid_argument("weight multiplicities of the zero polynomial");
    if (!p.is_monic())
        throw std::invalid_argument("weight multiplicities need a monic polynomial");
    OmegaMap om;
    for (int w : weight_candidates(p)) {
        RingPoly lin = RingPoly::linear(RingElement(p.ring(), Poly(-w)));
        RingPoly cur = p;
        int m = 0;
        while (cur.degree() > 0) {
            auto [q, r] = cur.divmod_monic(lin);
            if (!r.is_zero())
                break;
            cur = q;
            ++m;
        }
        if (m > 0)
            om[w] = m;
    }
    return om;
}

SenFactorization factor_sen(const RingPoly& p)
{
    SenFactorization f{p, RingPoly::from_rational(p.ring(), Poly(1)), p, weight_multiplicities(p)};
    for (auto [w, m] : f.omega) {
        RingPoly lin = RingPoly::linear(RingElement(p.ring(), Poly(-w)));
        for (int e = 0; e < m; ++e) {
            f.s = f.s * lin;
            f.q = f.q.divmod_monic(lin).first;
        }
    }
    return f;
}

RingElement cumulative_cofactor(const RingPoly& q, unsigned k)
{
    if (k == 0)
        throw std::invalid_argument("cumulative cofactor needs k >= 1");
    RingElement acc(q.ring(), Poly(1));
    for (unsigned j = 0; j < k; ++j)
        acc = acc * q.eval(RingElement(q.ring(), Poly(-static_cast<long>(j))));
    return acc;
}

Matrix tower_matrix(const DifTower& t, int k, int l)
{
    if (k >= l)
        throw std::invalid_argument("tower window needs k < l, got (" + std::to_string(k) + ", " +
                                    std::to_string(l) + ")");
    const size_t n = t.rank(), len = static_cast<size_t>(l - k);
    Matrix out(t.ring(), n * len, n * len);
    for (size_t a = 0; a < len; ++a) {
        Matrix d = t.block(0) + Matrix::identity(t.ring(), n) * Poly(k + static_cast<long>(a));
        out.set_block(a * n, a * n, d);
        for (size_t s = 1; a + s < len && s < t.depth(); ++s)
            out.set_block((a + s) * n, a * n, t.blocks()[s]);
    }
    return out;
}

namespace {

CohomologyDims artinian_dims(const Matrix& n)
{
    QMatrix q = expand_over_q(n);
    size_t r = rank(q);
    unsigned deg = residue_degree(n.ring());
    return {(q.cols - r) / deg, (q.rows - r) / deg};
}

CohomologyDims dims_of(const Matrix& n)
{
    if (n.ring().kind() == RingKind::quotient)
        return artinian_dims(n);
    size_t r = generic_rank(n);
    return {n.cols() - r, n.rows() - r};
}

}  // namespace

CohomologyDims cohomology_dims(const DifTower& t, int k, int l, const std::optional<RingMap>& at)
{
    Matrix n = tower_matrix(t, k, l);
    if (!at)
        return dims_of(n);
    if (!(at->source() == t.ring()))
        throw std::invalid_argument("locus map starts at " + at->source().to_string() + " but the tower is over " +
                                    t.ring().to_string());
    return dims_of(map_entries(n, *at));
}

DeRhamDatum family_datum(const DifTower& t)
{
    if (!t.ring().is_integral())
        throw std::invalid_argument("family datum needs an integral ring, got " + t.ring().to_string());
    OmegaMap om = weight_multiplicities(sen_polynomial(t));
    DeltaMap dm;
    if (!om.empty()) {
        const int lo = om.begin()->first, hi = om.rbegin()->first + 1;
        for (int k = lo; k < hi; ++k)
            for (int l = k + 1; l <= hi; ++l)
                dm[{k, l}] = static_cast<int>(cohomology_dims(t, k, l).h0);
    }
    auto r = DeRhamDatum::validate(om, dm);
    if (!r.ok())
        throw std::logic_error("tower produced an invalid datum: " + r.violations.front().message);
    return *r.datum;
}

DeRhamDatum pointwise_datum(const DifTower& t, const RingMap& point)
{
    return family_datum(specialize(t, point));
}

DifTower dual_twist(const DifTower& t, int s)
{
    std::vector<Matrix> bs;
    for (size_t j = 0; j < t.depth(); ++j) {
        Matrix b = -t.blocks()[j].transpose();
        if (j == 0)
            b = b + Matrix::identity(t.ring(), t.rank()) * Poly(s);
        bs.push_back(std::move(b));
    }
    return DifTower(t.ring(), t.rank(), std::move(bs));
}

DifTower direct_sum(const DifTower& a, const DifTower& b)
{
    if (!(a.ring() == b.ring()))
        throw std::invalid_argument("direct sum of towers over " + a.ring().to_string() + " and " +
                                    b.ring().to_string());
    const size_t depth = std::max(a.depth(), b.depth());
    std::vector<Matrix> bs;
    for (size_t s = 0; s < depth; ++s)
        bs.push_back(period_strata::direct_sum(a.block(s), b.block(s)));
    return DifTower(a.ring(), a.rank() + b.rank(), std::move(bs));
}

namespace {

Ring locus_ring(const DifTower& t, const std::optional<RingMap>& at)
{
    Ring r = at ? at->target() : t.ring();
    if (at && !(at->source() == t.ring()))
        throw std::invalid_argument("locus map starts at " + at->source().to_string() + " but the tower is over " +
                                    t.ring().to_string());
    if (r.kind() == RingKind::polynomials)
        throw std::invalid_argument("locus " + r.to_string() + " is not Artinian");
    return r;
}

}  // namespace

OmegaMap locus_weights(const DifTower& t, const std::optional<RingMap>& at)
{
    locus_ring(t, at);
    Matrix a0 = at ? map_entries(t.block(0), *at) : t.block(0);
    QMatrix q = expand_over_q(a0);
    std::vector<Poly> entries;
    for (const auto& e : q.e)
        entries.emplace_back(e);
    Matrix qa(Ring::rationals(), q.rows, q.cols, std::move(entries));
    return weight_multiplicities(char_poly(qa));
}

StabilizedDim stabilized_plus_dim(const DifTower& t, int k, const std::optional<RingMap>& at)
{
    OmegaMap w = locus_weights(t, at);
    // past the largest weight every new layer has an invertible diagonal
    // block, so h0 cannot change; one extra step shows the repeat
    int last = k + 1;
    if (!w.empty())
        last = std::max(last, w.rbegin()->first + 1);
    StabilizedDim out;
    for (int l = k + 1; l <= last + 1; ++l)
        out.sequence.push_back(cohomology_dims(t, k, l, at).h0);
    for (size_t i = 1; i < out.sequence.size(); ++i)
        if (out.sequence[i] < out.sequence[i - 1])
            throw std::logic_error("h0 decreased along the tower");
    out.d = out.sequence.back();
    size_t first = 0;
    while (out.sequence[first] != out.d)
        ++first;
    out.l_star = k + 1 + static_cast<int>(first);
    return out;
}

}  // namespace period_strata

#include "period_strata/module_algebra.hpp"

#include <sstream>
#include <stdexcept>

namespace period_strata {

std::vector<Poly> SmithDecomposition::divisors() const
{
    std::vector<Poly> d;
    for (size_t i = 0; i < rank; ++i)
        d.push_back(S(i, i));
    return d;
}

namespace {

struct SmithState {
    Matrix S, U, V;
    bool track;

    void swap_rows(size_t a, size_t b)
    {
        S.swap_rows(a, b);
        if (track)
            U.swap_rows(a, b);
    }
    void swap_cols(size_t a, size_t b)
    {
        S.swap_cols(a, b);
        if (track)
            V.swap_cols(a, b);
    }
    void add_row(size_t target, size_t src, const Poly& f)
    {
        S.add_row_multiple(target, src, f);
        if (track)
            U.add_row_multiple(target, src, f);
    }
    void add_col(size_t target, size_t src, const Poly& f)
    {
        S.add_col_multiple(target, src, f);
        if (track)
            V.add_col_multiple(target, src, f);
    }
    void make_pivot_monic(size_t t)
    {
        Poly inv(1 / S(t, t).lead());
        S.scale_row(t, inv);
        if (track)
            U.scale_row(t, inv);
    }
};

}  // namespace

namespace {

size_t run_smith(SmithState& st)
{
    Matrix& S = st.S;
    const size_t m = S.rows(), n = S.cols();
    size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        int best_deg = -1;
        size_t bi = 0, bj = 0;
        for (size_t i = t; i < m; ++i)
            for (size_t j = t; j < n; ++j) {
                int d = S(i, j).degree();
                if (d >= 0 && (best_deg < 0 || d < best_deg)) {
                    best_deg = d;
                    bi = i;
                    bj = j;
                }
            }
        if (best_deg < 0)
            break;
        st.swap_rows(t, bi);
        st.swap_cols(t, bj);
        for (;;) {
            st.make_pivot_monic(t);
            const Poly pivot = S(t, t);
            for (size_t i = t + 1; i < m; ++i)
                if (!S(i, t).is_zero())
                    st.add_row(i, t, -(S(i, t) / pivot));
            for (size_t j = t + 1; j < n; ++j)
                if (!S(t, j).is_zero())
                    st.add_col(j, t, -(S(t, j) / pivot));

            // leftover remainders have lower degree than the pivot
            int rd = -1;
            size_t ri = 0, rj = 0;
            for (size_t i = t + 1; i < m; ++i) {
                int d = S(i, t).degree();
                if (d >= 0 && (rd < 0 || d < rd)) {
                    rd = d;
                    ri = i;
                    rj = t;
                }
            }
            for (size_t j = t + 1; j < n; ++j) {
                int d = S(t, j).degree();
                if (d >= 0 && (rd < 0 || d < rd)) {
                    rd = d;
                    ri = t;
                    rj = j;
                }
            }
            if (rd >= 0) {
                st.swap_rows(t, ri);
                st.swap_cols(t, rj);
                continue;
            }

            bool fixed = false;
            for (size_t i = t + 1; i < m && !fixed; ++i)
                for (size_t j = t + 1; j < n && !fixed; ++j)
                    if (!divides(pivot, S(i, j))) {
                        st.add_row(t, i, Poly(1));
                        fixed = true;
                    }
            if (!fixed)
                break;
        }
    }
    return t;
}

void require_pid(const Matrix& a)
{
    if (!a.ring().is_pid())
        throw std::invalid_argument("Smith normal form needs Q or Q[x], got " + a.ring().to_string());
}

}  // namespace

SmithDecomposition smith_normal_form(const Matrix& a)
{
    require_pid(a);
    SmithState st{a, Matrix::identity(a.ring(), a.rows()), Matrix::identity(a.ring(), a.cols()), true};
    size_t r = run_smith(st);
    return {st.U, st.S, st.V, r};
}

std::vector<Poly> smith_divisors(const Matrix& a)
{
    require_pid(a);
    Matrix empty(a.ring(), 0, 0);
    SmithState st{a, empty, empty, false};
    size_t r = run_smith(st);
    std::vector<Poly> d;
    for (size_t i = 0; i < r; ++i)
        d.push_back(st.S(i, i));
    return d;
}

std::string ModuleSummary::to_string(const std::string& var) const
{
    std::ostringstream out;
    out << "free rank " << free_rank << ", torsion [";
    for (size_t i = 0; i < torsion_divisors.size(); ++i)
        out << (i ? ", " : "") << torsion_divisors[i].to_string(var);
    out << "]";
    return out.str();
}

size_t tensor_qdim(const ModuleSummary& m, const RingMap& map)
{
    const Ring& target = map.target();
    if (target.kind() == RingKind::polynomials)
        throw std::invalid_argument("tensor product with Q[x] has infinite Q-dimension");
    if (map.source().kind() == RingKind::rationals)
        return m.free_rank * target.qdim();
    if (map.source().kind() != RingKind::polynomials)
        throw std::invalid_argument("module summaries live over Q or Q[x]");
    size_t dim = m.free_rank * target.qdim();
    for (const auto& t : m.torsion_divisors) {
        if (map.kind() == RingMapKind::evaluate_at)
            dim += t.eval(map.point()) == 0 ? 1 : 0;
        else
            dim += static_cast<size_t>(gcd(t, target.modulus()).degree());
    }
    return dim;
}

namespace {

// Column echelon form A V over Q[x] by Euclidean column operations, tracking
// only V. The trailing columns of V whose image is zero span ker A freely.
Matrix kernel_basis_pid(const Matrix& a)
{
    const size_t m = a.rows(), n = a.cols();
    std::vector<std::vector<Poly>> ac(n, std::vector<Poly>(m)), vc(n, std::vector<Poly>(n));
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 0; i < m; ++i)
            ac[j][i] = a(i, j);
        vc[j][j] = Poly(1);
    }
    size_t piv = 0;
    for (size_t i = 0; i < m && piv < n; ++i) {
        for (;;) {
            size_t best = n;
            for (size_t c = piv; c < n; ++c)
                if (!ac[c][i].is_zero() && (best == n || ac[c][i].degree() < ac[best][i].degree()))
                    best = c;
            if (best == n)
                break;
            std::swap(ac[piv], ac[best]);
            std::swap(vc[piv], vc[best]);
            bool rest = false;
            for (size_t c = piv + 1; c < n; ++c) {
                if (ac[c][i].is_zero())
                    continue;
                Poly q = divmod(ac[c][i], ac[piv][i]).first;
                for (size_t k = 0; k < m; ++k)
                    if (!ac[piv][k].is_zero())
                        ac[c][k] -= q * ac[piv][k];
                for (size_t k = 0; k < n; ++k)
                    if (!vc[piv][k].is_zero())
                        vc[c][k] -= q * vc[piv][k];
                rest = rest || !ac[c][i].is_zero();
            }
            if (!rest) {
                ++piv;
                break;
            }
        }
    }
    Matrix k(a.ring(), n, n - piv);
    for (size_t c = piv; c < n; ++c) {
        // scale to a monic leading entry for a stable presentation
        Rational lead = 0;
        for (size_t r = 0; r < n && lead == 0; ++r)
            if (!vc[c][r].is_zero())
                lead = vc[c][r].coeffs().back();
        for (size_t r = 0; r < n; ++r)
            k.set(r, c - piv, vc[c][r] * Poly(Rational(1 / lead)));
    }
    return k;
}

}  // namespace

KernelCokernel kernel_and_cokernel(const Matrix& a)
{
    KernelCokernel out;
    if (a.ring().kind() == RingKind::quotient) {
        QMatrix q = expand_over_q(a);
        size_t r = rank(q);
        out.kernel_dim = q.cols - r;
        out.cokernel_dim = q.rows - r;
        return out;
    }
    out.cokernel = cokernel_summary(a);
    const size_t r = a.rows() - out.cokernel->free_rank;
    out.kernel_basis = r == a.cols() ? Matrix(a.ring(), a.cols(), 0) : kernel_basis_pid(a);
    out.kernel_dim = a.cols() - r;
    out.cokernel_dim = a.rows() - r;
    return out;
}

ModuleSummary cokernel_summary(const Matrix& a)
{
    if (!a.ring().is_pid())
        throw std::invalid_argument("cokernel summary needs Q or Q[x], got " + a.ring().to_string());
    auto ds = smith_divisors(a);
    ModuleSummary coker;
    coker.free_rank = a.rows() - ds.size();
    for (const auto& d : ds)
        if (d.degree() > 0)
            coker.torsion_divisors.push_back(d);
    return coker;
}

size_t generic_rank(const Matrix& a)
{
    switch (a.ring().kind()) {
    case RingKind::quotient:
        throw std::invalid_argument("generic rank over a non-integral ring " + a.ring().to_string());
    case RingKind::rationals:
        return rank(expand_over_q(a));
    case RingKind::polynomials:
        break;
    }
    // Bareiss; columns without a pivot are skipped, which is the same as
    // deleting them, so the divisions stay exact
    const size_t m = a.rows(), n = a.cols();
    std::vector<Poly> e(m * n);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < n; ++j)
            e[i * n + j] = a(i, j);
    auto at = [&](size_t i, size_t j) -> Poly& { return e[i * n + j]; };
    Poly prev(1);
    size_t r = 0;
    for (size_t c = 0; c < n && r < m; ++c) {
        size_t p = r;
        while (p < m && at(p, c).is_zero())
            ++p;
        if (p == m)
            continue;
        if (p != r)
            for (size_t j = 0; j < n; ++j)
                std::swap(at(p, j), at(r, j));
        for (size_t i = r + 1; i < m; ++i) {
            for (size_t j = c + 1; j < n; ++j)
                at(i, j) = (at(r, c) * at(i, j) - at(i, c) * at(r, j)) / prev;
            at(i, c) = Poly();
        }
        prev = at(r, c);
        ++r;
    }
    return r;
}

RingPoly char_poly(const Matrix& a)
{
    if (!a.is_square())
        throw std::invalid_argument("characteristic polynomial of a non-square matrix");
    const Ring& ring = a.ring();
    const size_t n = a.rows();
    std::vector<Poly> c(n + 1);
    c[n] = Poly(1);
    Matrix id = Matrix::identity(ring, n);
    Matrix mk(ring, n, n);
    for (size_t k = 1; k <= n; ++k) {
        mk = a * mk + id * c[n - k + 1];
        Matrix am = a * mk;
        Poly tr;
        for (size_t i = 0; i < n; ++i)
            tr += am(i, i);
        c[n - k] = ring.reduce(tr * Rational(-1, static_cast<long>(k)));
    }
    return {ring, std::move(c)};
}

namespace {

// inverse of a power series a_0 + a_1 S + ... modulo S^k, a_0 a unit
std::vector<Poly> series_inverse(const Ring& ring, const std::vector<Poly>& a, unsigned k)
{
    RingElement inv0 = RingElement(ring, a.empty() ? Poly() : a[0]).inverse();
    std::vector<Poly> b(k);
    b[0] = inv0.value();
    for (unsigned m = 1; m < k; ++m) {
        Poly acc;
        for (unsigned i = 1; i <= m && i < a.size(); ++i)
            acc += a[i] * b[m - i];
        b[m] = ring.reduce(-(acc * inv0.value()));
    }
    return b;
}

RingPoly power(const RingPoly& p, unsigned e)
{
    RingPoly r(p.ring(), {Poly(1)});
    for (unsigned i = 0; i < e; ++i)
        r = r * p;
    return r;
}

// Columns of a projector forming a basis of its image. Over Q[x]/(h^e) the
// image is free and columns independent modulo h form a basis; for other
// moduli the nonzero columns are returned as generators.
Matrix column_basis(const Matrix& proj)
{
    const Ring& r = proj.ring();
    std::optional<Ring> residue;
    if (r.kind() == RingKind::quotient) {
        auto fs = factor(r.modulus());
        if (fs.size() == 1)
            residue = Ring::quotient(fs.front().first, r.var());
    }
    std::vector<size_t> keep;
    if (r.kind() == RingKind::quotient && !residue) {
        for (size_t j = 0; j < proj.cols(); ++j)
            if (!proj.column(j).is_zero())
                keep.push_back(j);
    } else {
        QMatrix acc(proj.rows() * (residue ? residue_degree(*residue) : 1), 0);
        for (size_t j = 0; j < proj.cols(); ++j) {
            Matrix col = proj.column(j);
            if (residue) {
                Matrix red(*residue, col.rows(), 1);
                for (size_t i = 0; i < col.rows(); ++i)
                    red.set(i, 0, col(i, 0));
                col = red;
            }
            QMatrix cand = hstack(acc, expand_over_q(col));
            if (rank(cand) > rank(acc)) {
                acc = cand;
                keep.push_back(j);
            }
        }
    }
    Matrix b(r, proj.rows(), keep.size());
    for (size_t k = 0; k < keep.size(); ++k)
        b.set_block(0, k, proj.column(keep[k]));
    return b;
}

}  // namespace

SplitResult split_by_operator(const Matrix& phi, const std::vector<RootSpec>& roots, const Poly& q)
{
    if (!phi.is_square())
        throw std::invalid_argument("split_by_operator needs a square operator");
    const Ring& ring = phi.ring();
    if (q.is_zero())
        throw std::invalid_argument("cofactor polynomial must be nonzero");
    RingPoly Q = RingPoly::from_rational(ring, q);

    RingElement r = RingElement::constant(ring, 1);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (!(roots[i].r.ring() == ring))
            throw std::invalid_argument("root " + std::to_string(i + 1) + " lies in the wrong ring");
        if (roots[i].k == 0)
            throw std::invalid_argument("root multiplicities must be positive");
        r = r * Q.eval(roots[i].r);
        for (size_t j = i + 1; j < roots.size(); ++j)
            r = r * (roots[i].r - roots[j].r);
    }
    if (!is_unit(r))
        throw std::domain_error("unit hypothesis fails: " + r.to_string() + " is not a unit in " + ring.to_string());

    std::vector<RingPoly> factors;
    RingPoly P = Q;
    for (const auto& rs : roots) {
        factors.push_back(power(RingPoly::linear(rs.r), rs.k));
        P = P * factors.back();
    }
    if (!P.eval(phi).is_zero())
        throw std::domain_error("P(phi) != 0");

    const size_t n = phi.rows();
    SplitResult out;
    Matrix rest = Matrix::identity(ring, n);
    std::vector<SplitBlock> root_blocks;
    for (size_t i = 0; i < roots.size(); ++i) {
        RingPoly Pi = Q;
        for (size_t j = 0; j < roots.size(); ++j)
            if (j != i)
                Pi = Pi * factors[j];
        // invert P_i modulo (T - r_i)^{k_i} through its Taylor expansion at r_i
        RingPoly taylor = Pi.shift(roots[i].r);
        std::vector<Poly> inv = series_inverse(ring, taylor.coeffs(), roots[i].k);
        RingPoly u = RingPoly(ring, inv).shift(-roots[i].r);
        Matrix e = (Pi * u).eval(phi);
        rest = rest - e;
        root_blocks.push_back({BlockKind::root, i + 1, e, column_basis(e)});
    }
    out.blocks.push_back({BlockKind::cofactor, 0, rest, column_basis(rest)});
    for (auto& b : root_blocks)
        out.blocks.push_back(std::move(b));
    return out;
}

FlatSummary localized_flat_summary(const Matrix& a, const Poly& f)
{
    if (f.is_zero())
        throw std::invalid_argument("cannot localize at zero");
    if (!a.ring().is_pid())
        throw std::invalid_argument("localized_flat_summary needs a matrix over Q or Q[x]");
    std::vector<Poly> divs = smith_divisors(a);
    FlatSummary out;
    for (const auto& d : divs) {
        if (d.degree() < 1)
            continue;
        Poly rem = d;
        for (Poly g = gcd(rem, f); g.degree() > 0; g = gcd(rem, f))
            rem = rem / g;
        if (rem.degree() > 0)
            out.offending.push_back(d);
    }
    out.flat = out.offending.empty();
    out.kernel_rank = a.cols() - divs.size();
    out.cokernel_rank = a.rows() - divs.size();
    return out;
}

namespace {

QMatrix multiplication_matrix(const Ring& ring, const Poly& v, size_t copies)
{
    Matrix m(ring, copies, copies);
    for (size_t i = 0; i < copies; ++i)
        m.set(i, i, v);
    return expand_over_q(m);
}

QMatrix power(const QMatrix& m, unsigned e)
{
    QMatrix r(m.rows, m.cols);
    for (size_t i = 0; i < m.rows; ++i)
        r(i, i) = 1;
    for (unsigned i = 0; i < e; ++i)
        r = r * m;
    return r;
}

}  // namespace

BaseChangeDefect base_change_defect(const Matrix& a, const RingMap& m, const RingElement& f, unsigned bound)
{
    if (!(a.ring() == m.source()) || !(f.ring() == m.source()))
        throw std::invalid_argument("base_change_defect: matrix, element and map disagree on the source ring");
    if (!a.ring().is_pid())
        throw std::invalid_argument("base_change_defect needs a source ring Q or Q[x]");
    const Ring& target = m.target();
    if (target.kind() == RingKind::polynomials)
        return {0, 0};  // identity base change

    KernelCokernel kc = kernel_and_cokernel(a);
    Matrix K = map_entries(*kc.kernel_basis, m);
    Matrix At = map_entries(a, m);
    QMatrix EK = expand_over_q(K);
    QMatrix EA = expand_over_q(At);
    QMatrix comp_kernel = nullspace(EK);
    QMatrix ker_at = nullspace(EA);
    const size_t image_rank = rank(EK);

    Poly phi = m.apply(f.value());
    QMatrix phi_q = multiplication_matrix(target, phi, K.cols());
    QMatrix phi_n = multiplication_matrix(target, phi, a.cols());

    BaseChangeDefect out;
    for (unsigned e = 0; e <= bound; ++e) {
        bool kernel_dead = comp_kernel.cols == 0 || rank(power(phi_q, e) * comp_kernel) == 0;
        bool coker_dead = rank(hstack(EK, power(phi_n, e) * ker_at)) == image_rank;
        if (kernel_dead && coker_dead) {
            out.r0 = e;
            break;
        }
    }

    size_t direct = EA.rows - rank(EA);
    if (direct == tensor_qdim(*kc.cokernel, m))
        out.r1 = 0;
    return out;
}

}  // namespace period_strata

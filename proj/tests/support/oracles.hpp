#pragma once

// Independent reference computations used only by the tests. They avoid
// the library's elimination routines on purpose.

#include "period_strata/family.hpp"
#include "period_strata/matrix.hpp"
#include "period_strata/ring_poly.hpp"

#include <vector>

namespace period_strata::testing {

// rank over Q by fraction-free integer elimination
inline size_t oracle_rank(const QMatrix& a)
{
    const size_t m = a.rows, n = a.cols;
    std::vector<std::vector<Integer>> z(m, std::vector<Integer>(n));
    for (size_t i = 0; i < m; ++i) {
        Integer den = 1;
        for (size_t j = 0; j < n; ++j)
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a(i, j).get_den_mpz_t());
        for (size_t j = 0; j < n; ++j)
            z[i][j] = a(i, j).get_num() * (den / a(i, j).get_den());
    }
    Integer prev = 1;
    size_t r = 0;
    for (size_t c = 0; c < n && r < m; ++c) {
        size_t p = r;
        while (p < m && z[p][c] == 0)
            ++p;
        if (p == m)
            continue;
        std::swap(z[p], z[r]);
        for (size_t i = r + 1; i < m; ++i) {
            for (size_t j = c + 1; j < n; ++j)
                z[i][j] = (z[r][c] * z[i][j] - z[i][c] * z[r][j]) / prev;
            z[i][c] = 0;
        }
        prev = z[r][c];
        ++r;
    }
    return r;
}

// determinant by cofactor expansion along the first row
template <class T, class Mul, class Add, class Neg>
T cofactor_det(const std::vector<std::vector<T>>& a, const T& one, const T& zero, Mul mul, Add add, Neg neg)
{
    const size_t n = a.size();
    if (n == 0)
        return one;
    if (n == 1)
        return a[0][0];
    T acc = zero;
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<T>> minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<T> row;
            for (size_t k = 0; k < n; ++k)
                if (k != j)
                    row.push_back(a[i][k]);
            minor.push_back(row);
        }
        T term = mul(a[0][j], cofactor_det(minor, one, zero, mul, add, neg));
        acc = add(acc, j % 2 ? neg(term) : term);
    }
    return acc;
}

inline Poly det_poly(const std::vector<std::vector<Poly>>& a)
{
    return cofactor_det<Poly>(
        a, Poly(1), Poly(), [](const Poly& x, const Poly& y) { return x * y; },
        [](const Poly& x, const Poly& y) { return x + y; }, [](const Poly& x) { return -x; });
}

// det(T*I - A) by cofactor expansion over R[T]
inline RingPoly oracle_char_poly(const Matrix& a)
{
    const Ring& r = a.ring();
    const size_t n = a.rows();
    std::vector<std::vector<RingPoly>> m(n, std::vector<RingPoly>(n, RingPoly(r)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            std::vector<Poly> c{-a(i, j)};
            if (i == j)
                c.push_back(Poly(1));
            m[i][j] = RingPoly(r, c);
        }
    return cofactor_det<RingPoly>(
        m, RingPoly(r, {Poly(1)}), RingPoly(r), [](const RingPoly& x, const RingPoly& y) { return x * y; },
        [](const RingPoly& x, const RingPoly& y) { return x + y; },
        [](const RingPoly& x) { return RingPoly(x.ring()) - x; });
}

inline void choose(size_t n, size_t k, std::vector<std::vector<size_t>>& out, std::vector<size_t>& cur, size_t from = 0)
{
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (size_t i = from; i < n; ++i) {
        cur.push_back(i);
        choose(n, k, out, cur, i + 1);
        cur.pop_back();
    }
}

// gcd of all t x t minors of a matrix over Q[x]
inline Poly oracle_minors_gcd(const Matrix& a, size_t t)
{
    if (t == 0)
        return Poly(1);
    std::vector<std::vector<size_t>> rs, cs;
    std::vector<size_t> cur;
    choose(a.rows(), t, rs, cur);
    choose(a.cols(), t, cs, cur);
    Poly g;
    for (const auto& r : rs)
        for (const auto& c : cs) {
            std::vector<std::vector<Poly>> m(t, std::vector<Poly>(t));
            for (size_t i = 0; i < t; ++i)
                for (size_t j = 0; j < t; ++j)
                    m[i][j] = a(r[i], c[j]);
            g = gcd(g, det_poly(m));
        }
    return g;
}

// evaluate a matrix over Q[x] at a rational point, as a rational matrix
inline QMatrix oracle_specialize(const Matrix& a, const Rational& x)
{
    QMatrix q(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            q(i, j) = a(i, j).eval(x);
    return q;
}

inline size_t oracle_kernel_dim(const QMatrix& a)
{
    return a.cols - oracle_rank(a);
}

// Raw tower matrix: block (a, a) is A_0 + (k + a) I, block (a + s, a) is A_s.
inline std::vector<std::vector<Poly>> oracle_tower_entries(const DifTower& t, int k, int l)
{
    const size_t n = t.rank(), layers = static_cast<size_t>(l - k);
    std::vector<std::vector<Poly>> m(n * layers, std::vector<Poly>(n * layers));
    for (size_t a = 0; a < layers; ++a)
        for (size_t b = 0; b <= a; ++b) {
            const size_t s = a - b;
            if (s >= t.depth())
                continue;
            const Matrix& blk = t.blocks()[s];
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    Poly v = blk(i, j);
                    if (s == 0 && i == j)
                        v = v + Poly(Rational(k + static_cast<int>(a)));
                    m[a * n + i][b * n + j] = v;
                }
        }
    return m;
}

inline QMatrix oracle_eval(const std::vector<std::vector<Poly>>& m, const Rational& x)
{
    const size_t r = m.size(), c = r ? m[0].size() : 0;
    QMatrix q(r, c);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j)
            q(i, j) = m[i][j].eval(x);
    return q;
}

// Matrix of Q[x]/(f) entries written over Q in the basis 1, x, ..., x^{d-1}:
// entry p becomes the d x d block of multiplication by p.
inline QMatrix oracle_expand(const std::vector<std::vector<Poly>>& m, const Poly& f)
{
    const size_t r = m.size(), c = r ? m[0].size() : 0, d = static_cast<size_t>(f.degree());
    QMatrix q(r * d, c * d);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < c; ++j)
            for (size_t col = 0; col < d; ++col) {
                Poly prod = (m[i][j] * Poly::monomial(1, static_cast<unsigned>(col))) % f;
                for (size_t row = 0; row < d; ++row)
                    q(i * d + row, j * d + col) = prod.coeff(static_cast<int>(row));
            }
    return q;
}

inline std::vector<std::vector<Poly>> oracle_entries(const Matrix& a)
{
    std::vector<std::vector<Poly>> m(a.rows(), std::vector<Poly>(a.cols()));
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            m[i][j] = a(i, j);
    return m;
}

// A matrix over Q or Q[x]/(f) as a rational matrix
inline QMatrix oracle_over_q(const Matrix& a)
{
    if (a.ring().kind() == RingKind::quotient)
        return oracle_expand(oracle_entries(a), a.ring().modulus());
    return oracle_eval(oracle_entries(a), 0);
}

inline QMatrix oracle_identity(size_t n)
{
    QMatrix q(n, n);
    for (size_t i = 0; i < n; ++i)
        q(i, i) = 1;
    return q;
}

inline QMatrix oracle_power(const QMatrix& a, unsigned e)
{
    QMatrix out = oracle_identity(a.rows);
    for (unsigned i = 0; i < e; ++i)
        out = out * a;
    return out;
}

inline QMatrix oracle_hstack(const QMatrix& a, const QMatrix& b)
{
    QMatrix q(a.rows, a.cols + b.cols);
    for (size_t i = 0; i < a.rows; ++i) {
        for (size_t j = 0; j < a.cols; ++j)
            q(i, j) = a(i, j);
        for (size_t j = 0; j < b.cols; ++j)
            q(i, a.cols + j) = b(i, j);
    }
    return q;
}

// algebraic multiplicity of the eigenvalue -w of a rational matrix
inline size_t oracle_weight_mult(const QMatrix& a0, int w)
{
    QMatrix s = a0;
    for (size_t i = 0; i < s.rows; ++i)
        s(i, i) += w;
    return oracle_kernel_dim(oracle_power(s, static_cast<unsigned>(s.rows)));
}

}  // namespace period_strata::testing

// Factorization over Q: Yun squarefree decomposition, then Zassenhaus on
// each squarefree part (factor mod a small prime, Hensel lift, recombine).
#include "period_strata/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace period_strata {

namespace {

using ZPoly = std::vector<Integer>;   // integer coefficients, lowest first
using PPoly = std::vector<uint64_t>;  // coefficients mod a word-size prime

void trim(ZPoly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

void trim(PPoly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

ZPoly primitive_integer(const Poly& p)
{
    Integer den = 1;
    for (const auto& c : p.coeffs())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    ZPoly z;
    for (const auto& c : p.coeffs())
        z.push_back(Integer(c.get_num() * (den / c.get_den())));
    Integer g = 0;
    for (const auto& c : z)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (z.back() < 0)
        g = -g;
    for (auto& c : z)
        c /= g;
    return z;
}

Poly to_poly(const ZPoly& z)
{
    std::vector<Rational> c;
    for (const auto& v : z)
        c.emplace_back(v);
    return Poly(std::move(c));
}

// ---- arithmetic in F_p[x] ----

struct Fp {
    uint64_t p;

    uint64_t mul(uint64_t a, uint64_t b) const { return a * b % p; }
    uint64_t add(uint64_t a, uint64_t b) const { return (a + b) % p; }
    uint64_t sub(uint64_t a, uint64_t b) const { return (a + p - b) % p; }
    uint64_t inv(uint64_t a) const
    {
        uint64_t r = 1, b = a, e = p - 2;
        while (e) {
            if (e & 1)
                r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    PPoly reduce(const ZPoly& z) const
    {
        PPoly r;
        Integer pp = static_cast<unsigned long>(p);
        for (const auto& c : z) {
            Integer m = c % pp;
            if (m < 0)
                m += pp;
            r.push_back(m.get_ui());
        }
        trim(r);
        return r;
    }

    PPoly mul(const PPoly& a, const PPoly& b) const
    {
        if (a.empty() || b.empty())
            return {};
        PPoly r(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j)
                r[i + j] = (r[i + j] + a[i] * b[j]) % p;
        trim(r);
        return r;
    }

    PPoly sub(PPoly a, const PPoly& b) const
    {
        if (b.size() > a.size())
            a.resize(b.size(), 0);
        for (size_t i = 0; i < b.size(); ++i)
            a[i] = sub(a[i], b[i]);
        trim(a);
        return a;
    }

    PPoly add(PPoly a, const PPoly& b) const
    {
        if (b.size() > a.size())
            a.resize(b.size(), 0);
        for (size_t i = 0; i < b.size(); ++i)
            a[i] = add(a[i], b[i]);
        trim(a);
        return a;
    }

    std::pair<PPoly, PPoly> divmod(PPoly a, const PPoly& b) const
    {
        if (a.size() < b.size())
            return {{}, a};
        uint64_t li = inv(b.back());
        size_t db = b.size() - 1;
        PPoly q(a.size() - db, 0);
        for (size_t i = a.size(); i-- > db;) {
            uint64_t f = mul(a[i], li);
            q[i - db] = f;
            if (f == 0)
                continue;
            for (size_t j = 0; j <= db; ++j)
                a[i - db + j] = sub(a[i - db + j], mul(f, b[j]));
        }
        a.resize(db);
        trim(a);
        trim(q);
        return {q, a};
    }

    PPoly mod(const PPoly& a, const PPoly& b) const { return divmod(a, b).second; }

    PPoly monic(PPoly a) const
    {
        if (a.empty())
            return a;
        uint64_t li = inv(a.back());
        for (auto& c : a)
            c = mul(c, li);
        return a;
    }

    PPoly gcd(PPoly a, PPoly b) const
    {
        while (!b.empty()) {
            PPoly r = mod(a, b);
            a = std::move(b);
            b = std::move(r);
        }
        return monic(a);
    }

    // s*a + t*b = 1 for coprime a, b
    std::pair<PPoly, PPoly> bezout(const PPoly& a, const PPoly& b) const
    {
        PPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
        while (!r1.empty()) {
            auto [q, r] = divmod(r0, r1);
            PPoly s = sub(s0, mul(q, s1));
            PPoly t = sub(t0, mul(q, t1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s);
            t0 = std::move(t1);
            t1 = std::move(t);
        }
        uint64_t li = inv(r0.back());
        for (auto& c : s0)
            c = mul(c, li);
        for (auto& c : t0)
            c = mul(c, li);
        return {s0, t0};
    }

    PPoly powmod(PPoly base, const Integer& e, const PPoly& m) const
    {
        PPoly r{1};
        base = mod(base, m);
        size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
        for (size_t i = bits; i-- > 0;) {
            r = mod(mul(r, r), m);
            if (mpz_tstbit(e.get_mpz_t(), i))
                r = mod(mul(r, base), m);
        }
        return r;
    }

    PPoly derivative(const PPoly& a) const
    {
        PPoly r;
        for (size_t i = 1; i < a.size(); ++i)
            r.push_back(mul(a[i], i % p));
        trim(r);
        return r;
    }

    // distinct-degree factorization of a monic squarefree polynomial
    std::vector<std::pair<PPoly, unsigned>> ddf(PPoly f) const
    {
        std::vector<std::pair<PPoly, unsigned>> out;
        PPoly x{0, 1};
        PPoly h = x;
        Integer pp = static_cast<unsigned long>(p);
        for (unsigned d = 1; 2 * d <= f.size() - 1; ++d) {
            h = powmod(h, pp, f);
            PPoly g = gcd(sub(h, x), f);
            if (g.size() > 1) {
                out.emplace_back(g, d);
                f = divmod(f, g).first;
                h = mod(h, f);
            }
        }
        if (f.size() > 1)
            out.emplace_back(f, static_cast<unsigned>(f.size() - 1));
        return out;
    }

    void edf(const PPoly& g, unsigned d, std::mt19937_64& rng, std::vector<PPoly>& out) const
    {
        if (g.size() - 1 == d) {
            out.push_back(g);
            return;
        }
        Integer e;
        mpz_ui_pow_ui(e.get_mpz_t(), p, d);
        e = (e - 1) / 2;
        for (;;) {
            PPoly a(g.size() - 1);
            for (auto& c : a)
                c = rng() % p;
            trim(a);
            if (a.size() < 2)
                continue;
            PPoly b = sub(powmod(a, e, g), PPoly{1});
            PPoly h = gcd(b, g);
            if (h.size() > 1 && h.size() < g.size()) {
                edf(h, d, rng, out);
                edf(monic(divmod(g, h).first), d, rng, out);
                return;
            }
        }
    }

    std::vector<PPoly> factor_squarefree(const PPoly& f) const
    {
        std::mt19937_64 rng(0x5eedULL + p);
        std::vector<PPoly> out;
        for (auto& [g, d] : ddf(monic(f)))
            edf(g, d, rng, out);
        return out;
    }
};

// ---- Hensel lifting over Z / p^k ----

ZPoly zreduce(ZPoly a, const Integer& m)
{
    for (auto& c : a) {
        c %= m;
        if (c < 0)
            c += m;
    }
    trim(a);
    return a;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const Integer& m)
{
    if (a.empty() || b.empty())
        return {};
    ZPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return zreduce(std::move(r), m);
}

ZPoly lift(const PPoly& a)
{
    ZPoly r;
    for (auto c : a)
        r.emplace_back(static_cast<unsigned long>(c));
    return r;
}

// Lift F = G*H mod p (G, H monic, coprime mod p) to F = G*H mod p^k.
void hensel_pair(const Fp& fp, const ZPoly& F, ZPoly& G, ZPoly& H, unsigned k)
{
    auto [s, t] = fp.bezout(fp.reduce(G), fp.reduce(H));
    Integer pp = static_cast<unsigned long>(fp.p);
    Integer pj = pp;
    for (unsigned j = 1; j < k; ++j) {
        Integer next = pj * pp;
        ZPoly e = zreduce(F, next);
        ZPoly gh = zmul(G, H, next);
        e.resize(std::max(e.size(), gh.size()));
        for (size_t i = 0; i < gh.size(); ++i)
            e[i] -= gh[i];
        e = zreduce(std::move(e), next);
        for (auto& c : e)
            c /= pj;
        PPoly ep = fp.reduce(e);
        auto [q, b] = fp.divmod(fp.mul(s, ep), fp.reduce(H));
        PPoly a = fp.add(fp.mul(t, ep), fp.mul(q, fp.reduce(G)));
        ZPoly az = lift(a), bz = lift(b);
        if (G.size() < az.size())
            G.resize(az.size());
        if (H.size() < bz.size())
            H.resize(bz.size());
        for (size_t i = 0; i < az.size(); ++i)
            G[i] += pj * az[i];
        for (size_t i = 0; i < bz.size(); ++i)
            H[i] += pj * bz[i];
        trim(G);
        trim(H);
        pj = next;
    }
}

void hensel_tree(const Fp& fp, const ZPoly& F, const std::vector<PPoly>& factors, unsigned k,
                 const Integer& modulus, std::vector<ZPoly>& out)
{
    if (factors.size() == 1) {
        out.push_back(F);
        return;
    }
    size_t half = factors.size() / 2;
    std::vector<PPoly> left(factors.begin(), factors.begin() + half);
    std::vector<PPoly> right(factors.begin() + half, factors.end());
    PPoly g{1}, h{1};
    for (auto& f : left)
        g = fp.mul(g, f);
    for (auto& f : right)
        h = fp.mul(h, f);
    ZPoly G = lift(g), H = lift(h);
    hensel_pair(fp, F, G, H, k);
    hensel_tree(fp, zreduce(G, modulus), left, k, modulus, out);
    hensel_tree(fp, zreduce(H, modulus), right, k, modulus, out);
}

const std::vector<unsigned>& small_primes()
{
    static const std::vector<unsigned> primes = [] {
        std::vector<unsigned> ps;
        std::vector<bool> sieve(20000, true);
        for (unsigned i = 2; i < sieve.size(); ++i) {
            if (!sieve[i])
                continue;
            if (i > 2)
                ps.push_back(i);
            for (unsigned j = i * i; j < sieve.size(); j += i)
                sieve[j] = false;
        }
        return ps;
    }();
    return primes;
}

Integer symmetric(const Integer& c, const Integer& m)
{
    Integer r = c % m;
    if (r < 0)
        r += m;
    if (2 * r > m)
        r -= m;
    return r;
}

bool zdivides(const ZPoly& g, const ZPoly& f, ZPoly& quotient)
{
    auto [q, r] = divmod(to_poly(f), to_poly(g));
    if (!r.is_zero())
        return false;
    quotient.clear();
    for (const auto& c : q.coeffs()) {
        if (c.get_den() != 1)
            return false;
        quotient.push_back(c.get_num());
    }
    return true;
}

void next_subset(std::vector<size_t>& idx, size_t n, bool& done)
{
    size_t s = idx.size();
    for (size_t i = s; i-- > 0;) {
        if (idx[i] < n - s + i) {
            ++idx[i];
            for (size_t j = i + 1; j < s; ++j)
                idx[j] = idx[j - 1] + 1;
            return;
        }
    }
    done = true;
}

// primitive squarefree f with deg >= 2, positive leading coefficient
std::vector<ZPoly> zassenhaus(ZPoly f)
{
    const size_t n = f.size() - 1;
    Integer lc = f.back();

    Fp best{0};
    std::vector<PPoly> best_factors;
    int good = 0;
    for (unsigned p : small_primes()) {
        Fp fp{p};
        if (lc % p == 0)
            continue;
        PPoly fm = fp.reduce(f);
        if (fp.gcd(fm, fp.derivative(fm)).size() != 1)
            continue;
        auto fs = fp.factor_squarefree(fm);
        if (best.p == 0 || fs.size() < best_factors.size()) {
            best = fp;
            best_factors = std::move(fs);
        }
        if (best_factors.size() == 1 || ++good == 5)
            break;
    }
    if (best.p == 0)
        throw std::runtime_error("no suitable prime for factorization");
    if (best_factors.size() == 1)
        return {f};

    Integer maxc = 0;
    for (const auto& c : f)
        maxc = std::max<Integer>(maxc, abs(c));
    Integer bound = abs(lc) * maxc * static_cast<unsigned long>(n + 1);
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n + 1);
    Integer pp = static_cast<unsigned long>(best.p);
    Integer modulus = pp;
    unsigned k = 1;
    while (modulus <= bound) {
        modulus *= pp;
        ++k;
    }

    Integer lc_inv;
    mpz_invert(lc_inv.get_mpz_t(), lc.get_mpz_t(), modulus.get_mpz_t());
    ZPoly F = f;
    for (auto& c : F)
        c *= lc_inv;
    F = zreduce(std::move(F), modulus);
    std::vector<ZPoly> lifted;
    hensel_tree(best, F, best_factors, k, modulus, lifted);

    std::vector<ZPoly> found;
    for (size_t s = 1; 2 * s <= lifted.size();) {
        bool hit = false;
        std::vector<size_t> idx(s);
        for (size_t i = 0; i < s; ++i)
            idx[i] = i;
        for (bool done = false; !done; next_subset(idx, lifted.size(), done)) {
            lc = f.back();
            ZPoly g{lc};
            for (size_t i : idx)
                g = zmul(g, lifted[i], modulus);
            for (auto& c : g)
                c = symmetric(c, modulus);
            trim(g);
            if (f[0] != 0 && (g.empty() || g[0] == 0 || (lc * f[0]) % g[0] != 0))
                continue;
            Poly prim = to_poly(g);
            ZPoly gp = primitive_integer(prim);
            ZPoly q;
            if (!zdivides(gp, f, q))
                continue;
            found.push_back(gp);
            f = q;
            for (size_t i = s; i-- > 0;)
                lifted.erase(lifted.begin() + idx[i]);
            hit = true;
            break;
        }
        if (!hit)
            ++s;
    }
    if (f.size() > 1)
        found.push_back(f);
    return found;
}

// Yun: p = prod a_i^i with a_i squarefree, pairwise coprime
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p)
{
    std::vector<std::pair<Poly, int>> out;
    Poly f = p.monic();
    Poly df = f.derivative();
    Poly a0 = gcd(f, df);
    Poly b = f / a0;
    Poly c = df / a0;
    Poly d = c - b.derivative();
    for (int i = 1; b.degree() > 0; ++i) {
        Poly a = gcd(b, d);
        b = b / a;
        c = d / a;
        d = c - b.derivative();
        if (a.degree() > 0)
            out.emplace_back(a, i);
    }
    return out;
}

}  // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& p)
{
    std::vector<std::pair<Poly, int>> out;
    if (p.degree() < 1)
        return out;
    for (auto& [a, mult] : squarefree_decomposition(p)) {
        if (a.degree() == 1) {
            out.emplace_back(a, mult);
            continue;
        }
        for (auto& z : zassenhaus(primitive_integer(a)))
            out.emplace_back(to_poly(z).monic(), mult);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Rational> rational_roots(const Poly& p)
{
    std::vector<Rational> roots;
    for (auto& [f, m] : factor(p))
        if (f.degree() == 1)
            roots.push_back(-f.coeff(0));
    std::sort(roots.begin(), roots.end());
    return roots;
}

Poly squarefree_part(const Poly& p)
{
    if (p.degree() < 1)
        return Poly(1);
    Poly f = p.monic();
    return f / gcd(f, f.derivative());
}

}  // namespace period_strata

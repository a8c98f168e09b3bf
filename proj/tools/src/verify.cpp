#include "period_strata/cli/verify.hpp"

#include "period_strata/cli/family_file.hpp"
#include "period_strata/cli/random_family.hpp"
#include "period_strata/strata.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace period_strata::cli {

namespace {

long uniform(std::mt19937_64& rng, long lo, long hi)
{
    uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(rng() % span);
}

Poly X()
{
    return Poly::x();
}

std::string describe(const DifTower& t)
{
    std::string s = serialize_family_file(t);
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

class Suite {
public:
    Suite(std::string name, uint64_t seed) : rng(seed) { report.suite = std::move(name), report.seed = seed; }

    void check(bool ok, const std::function<std::string()>& witness)
    {
        if (!ok)
            report.failures.push_back(witness());
    }
    void count() { ++report.cases; }
    void hypothesis(std::string h, bool checked, std::string detail)
    {
        report.ledger.push_back({std::move(h), checked, std::move(detail)});
    }

    std::mt19937_64 rng;
    VerificationReport report;
};

Matrix power(const Matrix& m, unsigned e)
{
    Matrix out = Matrix::identity(m.ring(), m.rows());
    for (unsigned i = 0; i < e; ++i)
        out = out * m;
    return out;
}

QMatrix q_of(const Matrix& m)
{
    return expand_over_q(m);
}

void suite_splitting(Suite& s)
{
    for (int it = 0; it < 200; ++it) {
        Ring ring = Ring::rationals();
        long a = 0;
        if (it % 2 == 1) {
            a = uniform(s.rng, -2, 2);
            unsigned e = static_cast<unsigned>(uniform(s.rng, 1, 3));
            ring = Ring::quotient(pow(X() - Poly(a), e));
        }
        // Jordan cells for a few roots with distinct constant parts, plus
        // an optional companion block of T^2 + 1 as the cofactor
        std::vector<long> consts{-3, -2, -1, 0, 1, 2, 3};
        std::shuffle(consts.begin(), consts.end(), s.rng);
        size_t nroots = static_cast<size_t>(uniform(s.rng, 1, 3));
        bool cof = uniform(s.rng, 0, 1) == 1;
        size_t budget = cof ? 4 : 6;
        std::vector<RootSpec> roots;
        std::vector<std::pair<Poly, size_t>> cells;
        for (size_t i = 0; i < nroots && budget > 0; ++i) {
            Poly r(consts[i]);
            if (ring.kind() == RingKind::quotient)
                r += (X() - Poly(a)) * Rational(uniform(s.rng, -1, 1));
            unsigned k = 0;
            size_t ncells = static_cast<size_t>(uniform(s.rng, 1, 2));
            for (size_t c = 0; c < ncells && budget > 0; ++c) {
                size_t sz = std::min<size_t>(budget, static_cast<size_t>(uniform(s.rng, 1, 2)));
                cells.push_back({r, sz});
                budget -= sz;
                k = std::max<unsigned>(k, static_cast<unsigned>(sz));
            }
            roots.push_back({RingElement(ring, r), k + static_cast<unsigned>(uniform(s.rng, 0, 1))});
        }
        size_t n = (cof ? 2 : 0);
        for (auto& c : cells)
            n += c.second;
        Matrix j(ring, n, n);
        size_t pos = 0;
        if (cof) {
            j.set(0, 1, Poly(-1));
            j.set(1, 0, Poly(1));
            pos = 2;
        }
        for (auto& [r, sz] : cells) {
            for (size_t i = 0; i < sz; ++i) {
                j.set(pos + i, pos + i, r);
                if (i + 1 < sz)
                    j.set(pos + i, pos + i + 1, Poly(1));
            }
            pos += sz;
        }
        Matrix c = Matrix::identity(ring, n), ci = Matrix::identity(ring, n);
        for (size_t step = 0; n > 1 && step < 2 * n; ++step) {
            size_t a = static_cast<size_t>(uniform(s.rng, 0, static_cast<long>(n) - 1));
            size_t b = static_cast<size_t>(uniform(s.rng, 0, static_cast<long>(n) - 2));
            if (b >= a)
                ++b;
            Poly f(uniform(s.rng, -2, 2));
            c.add_row_multiple(a, b, f);
            ci.add_col_multiple(b, a, -f);
        }
        Matrix phi = c * j * ci;
        Poly q = cof ? X() * X() + 1 : Poly(1);
        s.count();
        auto witness = [&](const std::string& what) {
            return [&, what]() {
                std::ostringstream o;
                o << "splitting #" << it << " over " << ring.to_string() << ": " << what << "; phi = " << phi.to_string();
                return o.str();
            };
        };
        SplitResult res;
        try {
            res = split_by_operator(phi, roots, q);
        } catch (const std::exception& e) {
            s.check(false, witness(std::string("threw ") + e.what()));
            continue;
        }
        s.check(res.blocks.size() == roots.size() + 1, witness("block count"));
        if (res.blocks.size() != roots.size() + 1)
            continue;
        Matrix sum(ring, n, n);
        for (size_t a = 0; a < res.blocks.size(); ++a) {
            const Matrix& ea = res.blocks[a].projector;
            sum = sum + ea;
            s.check(ea * phi == phi * ea, witness("projector does not commute with phi"));
            for (size_t b = 0; b < res.blocks.size(); ++b) {
                Matrix want = a == b ? ea : Matrix(ring, n, n);
                s.check(ea * res.blocks[b].projector == want, witness("projectors not orthogonal idempotents"));
            }
            Matrix killer = a == 0 ? eval_at_matrix(q, phi)
                                   : power(phi - Matrix::identity(ring, n) * roots[a - 1].r.value(), roots[a - 1].k);
            s.check((killer * ea).is_zero(), witness("block not killed by its factor"));
            size_t rp = rank(q_of(ea)), rb = rank(q_of(res.blocks[a].basis));
            s.check(rp == rb && rank(hstack(q_of(ea), q_of(res.blocks[a].basis))) == rp,
                    witness("basis does not span the projector image"));
        }
        s.check(sum == Matrix::identity(ring, n), witness("projectors do not sum to 1"));
    }
    s.hypothesis("Q(r_i) and r_i - r_j are units", true, "roots have distinct residues at the closed point; Q = T^2 + 1 or 1");
}

Matrix random_square(std::mt19937_64& rng, const Ring& ring, size_t n, int deg)
{
    Matrix m(ring, n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (uniform(rng, 0, 9) < 6) {
                std::vector<Rational> c;
                int d = static_cast<int>(uniform(rng, 0, deg));
                for (int k = 0; k <= d; ++k)
                    c.emplace_back(uniform(rng, -3, 3));
                m.set(i, j, Poly(std::move(c)));
            }
    return m;
}

void suite_rank_equality(Suite& s)
{
    Ring r = Ring::polynomials("x");
    for (int it = 0; it < 200; ++it) {
        size_t n = static_cast<size_t>(uniform(s.rng, 1, 8));
        Matrix a(r, n, n);
        if (uniform(s.rng, 0, 1) == 0) {
            a = random_square(s.rng, r, n, 4);
        } else {
            size_t inner = static_cast<size_t>(uniform(s.rng, 0, static_cast<long>(n) - 1));
            Matrix b(r, n, inner), c(r, inner, n);
            Matrix fb = random_square(s.rng, r, n, 2), fc = random_square(s.rng, r, n, 2);
            a = fb.block(0, 0, n, inner) * fc.block(0, 0, inner, n);
            if (inner == 0)
                a = Matrix(r, n, n);
        }
        s.count();
        size_t kernel_rank = n - generic_rank(a);
        size_t coker_rank = n - smith_divisors(a).size();
        s.check(kernel_rank == coker_rank, [&]() {
            return "rank equality #" + std::to_string(it) + ": ker " + std::to_string(kernel_rank) + " vs coker " +
                   std::to_string(coker_rank) + " for " + a.to_string();
        });
    }
}

void suite_artinian(Suite& s)
{
    for (int it = 0; it < 100; ++it) {
        long a = uniform(s.rng, -2, 2);
        unsigned e = static_cast<unsigned>(uniform(s.rng, 1, 4));
        Ring ring = Ring::quotient(pow(X() - Poly(a), e));
        size_t n = static_cast<size_t>(uniform(s.rng, 1, 4));
        DifTower t = random_tower(s.rng, ring, n, static_cast<size_t>(uniform(s.rng, 1, 4)));
        s.count();
        for (int k = 0; k < 4; ++k)
            for (int l = k + 1; l <= 4; ++l) {
                auto kc = kernel_and_cokernel(tower_matrix(t, k, l));
                s.check(kc.kernel_dim == kc.cokernel_dim, [&]() {
                    return "artinian h0 != h1 at (" + std::to_string(k) + "," + std::to_string(l) + ") for " +
                           describe(t);
                });
            }
    }
    s.hypothesis("base ring is local Artinian", true, "Q[x]/((x-a)^e), e <= 4");
}

void suite_stabilization(Suite& s)
{
    Ring r = Ring::polynomials("x");
    for (int it = 0; it < 40; ++it) {
        size_t n = static_cast<size_t>(uniform(s.rng, 1, 3));
        DifTower t = random_tower(s.rng, r, n, static_cast<size_t>(uniform(s.rng, 1, 3)));
        std::vector<RingMap> loci{RingMap::evaluate_at(r, uniform(s.rng, -2, 2)),
                                  RingMap::project_to_quotient(r, pow(X() - Poly(uniform(s.rng, -2, 2)), 2))};
        for (const auto& m : loci) {
            OmegaMap w = locus_weights(t, m);
            int lo = w.empty() ? 0 : w.begin()->first, hi = w.empty() ? 0 : w.rbegin()->first;
            for (int k = lo - 1; k <= hi + 1; ++k) {
                s.count();
                std::vector<size_t> seq;
                const int top = std::max(k + 1, hi + 4);
                for (int l = k + 1; l <= top; ++l)
                    seq.push_back(cohomology_dims(t, k, l, m).h0);
                auto fail = [&](const std::string& what) {
                    return [&, what]() {
                        return "stabilization at " + m.to_string() + ", k = " + std::to_string(k) + ": " + what +
                               " for " + describe(t);
                    };
                };
                for (size_t i = 1; i < seq.size(); ++i)
                    s.check(seq[i] >= seq[i - 1], fail("h0 decreased"));
                const int stable_from = std::max(k + 1, hi + 2);
                for (int l = stable_from; l <= top; ++l)
                    s.check(seq[static_cast<size_t>(l - k - 1)] == seq.back(), fail("not stable by U + 2"));
                auto st = stabilized_plus_dim(t, k, m);
                s.check(st.d == seq.back(), fail("stabilized_plus_dim disagrees"));
            }
        }
    }
}

DifTower running_example()
{
    Ring r = Ring::polynomials("x");
    return DifTower(r, 2, {Matrix(r, 2, 2, {0, 0, 0, -1}), Matrix(r, 2, 2, {0, 0, X(), 0})});
}

void suite_running_example(Suite& s)
{
    Ring r = Ring::polynomials("x");
    DifTower t = running_example();
    s.count();
    DeRhamDatum d = family_datum(t);
    s.check(d.delta(0, 2) == 1, [&]() { return "generic Delta(0,2) = " + std::to_string(d.delta(0, 2)); });
    for (long a = -5; a <= 5; ++a) {
        s.count();
        size_t h0 = cohomology_dims(t, 0, 2, RingMap::evaluate_at(r, a)).h0;
        size_t want = a == 0 ? 2 : 1;
        s.check(h0 == want, [&]() { return "pointwise Delta(0,2) at x = " + std::to_string(a) + " is " + std::to_string(h0); });
    }
    s.check(datum_stratum_locus(t, DeRhamDatum::make({{0, 1}, {1, 1}}, {{{0, 1}, 1}, {{1, 2}, 1}, {{0, 2}, 2}})) ==
                Locus::finite({X()}),
            []() { return "Delta(0,2) >= 2 locus is not {x = 0}"; });
    s.count();
    auto bc = base_change_defect(tower_matrix(t, 0, 2), RingMap::evaluate_at(r, 0), RingElement(r, X()));
    s.check(bc.r0.has_value() && bc.r1 == 0u, [&]() {
        return "base change defect r0 = " + (bc.r0 ? std::to_string(*bc.r0) : std::string("none")) +
               ", r1 = " + (bc.r1 ? std::to_string(*bc.r1) : std::string("none"));
    });
}

void suite_flatness(Suite& s)
{
    Ring r = Ring::polynomials("x");
    const size_t m = 2;
    // P = T^2 (T - x); Q = T - x, Q_1 = -x
    DifTower flat(r, 3, {Matrix::diagonal(r, {Poly(0), Poly(0), X()})});
    DifTower counter(r, 3, {Matrix(r, 3, 3, {0, X() - 1, 0, 0, 0, 0, 0, 0, X()})});
    std::vector<RingMap> witnesses{RingMap::evaluate_at(r, 1), RingMap::evaluate_at(r, 2), RingMap::evaluate_at(r, 3),
                                   RingMap::project_to_quotient(r, pow(X() - 1, 2))};

    auto check_family = [&](const DifTower& t, const std::string& label, bool expect_flat) {
        s.count();
        auto f = factor_sen(sen_polynomial(t));
        RingElement q1 = cumulative_cofactor(f.q, 1);
        bool rank_ok = true, unit_ok = true;
        for (const auto& w : witnesses) {
            size_t len = w.target().kind() == RingKind::quotient ? static_cast<size_t>(w.target().modulus().degree()) : 1;
            auto kc = kernel_and_cokernel(map_entries(tower_matrix(t, 0, 1), w));
            rank_ok = rank_ok && kc.kernel_dim == m * len;
            unit_ok = unit_ok && is_unit(apply_ring_map(q1, w));
        }
        FlatSummary fs = localized_flat_summary(tower_matrix(t, 0, 1), q1.value());
        if (expect_flat) {
            s.check(rank_ok && unit_ok, [&]() { return label + ": witness hypotheses fail"; });
            s.check(fs.flat && fs.kernel_rank == m && fs.cokernel_rank == m, [&]() {
                return label + ": expected flat ranks (2,2), got flat = " + std::to_string(fs.flat) + " (" +
                       std::to_string(fs.kernel_rank) + "," + std::to_string(fs.cokernel_rank) + ")";
            });
        } else {
            s.check(!rank_ok, [&]() { return label + ": counter-family should break the kernel-rank hypothesis"; });
            s.check(!fs.flat, [&]() { return label + ": counter-family reported flat"; });
        }
        return std::pair{rank_ok, unit_ok};
    };
    auto [rank_ok, unit_ok] = check_family(flat, "flat family", true);
    check_family(counter, "counter-family", false);
    s.hypothesis("kernel of the Sen operator has rank m = 2 at every witness", rank_ok,
                 "witnesses x = 1, 2, 3 and Q[x]/((x-1)^2) (Q-dimension 2m there)");
    s.hypothesis("Q_1 = -x is a unit at every witness", unit_ok, "checked in each witness ring");
    s.hypothesis("witness breadth bounded", true, "breadth <= 2");
    s.hypothesis("witness family is stably dense", false, "density of the finite witness set is not certified");
}

void suite_base_change(Suite& s)
{
    Ring r = Ring::polynomials("x");
    for (int it = 0; it < 50; ++it) {
        size_t n = static_cast<size_t>(uniform(s.rng, 1, 3));
        DifTower t = random_tower(s.rng, r, n, static_cast<size_t>(uniform(s.rng, 1, 3)));
        int k = static_cast<int>(uniform(s.rng, -1, 1));
        int l = k + static_cast<int>(uniform(s.rng, 1, 3));
        Matrix nm = tower_matrix(t, k, l);
        ModuleSummary coker = cokernel_summary(nm);
        std::vector<RingMap> maps;
        for (int i = 0; i < 3; ++i)
            maps.push_back(RingMap::evaluate_at(r, uniform(s.rng, -3, 3)));
        maps.push_back(RingMap::project_to_quotient(r, pow(X() - Poly(uniform(s.rng, -2, 2)), 2)));
        maps.push_back(RingMap::project_to_quotient(r, X() * X() + 1));
        for (const auto& m : maps) {
            s.count();
            size_t direct = cohomology_dims(t, k, l, m).h1 * residue_degree(m.target());
            size_t via = tensor_qdim(coker, m);
            s.check(direct == via, [&]() {
                return "h1 base change at " + m.to_string() + " window (" + std::to_string(k) + "," +
                       std::to_string(l) + "): " + std::to_string(direct) + " vs " + std::to_string(via) + " for " +
                       describe(t);
            });
        }
    }
    s.hypothesis("targets are field points or Artinian thickenings", true, "evaluate-at, (x-a)^2, x^2+1");
}

void suite_datum_axioms(Suite& s)
{
    Ring r = Ring::polynomials("x");
    for (int it = 0; it < 50; ++it) {
        size_t n = static_cast<size_t>(uniform(s.rng, 1, 3));
        DifTower t = random_tower(s.rng, r, n, static_cast<size_t>(uniform(s.rng, 1, 3)));
        DeRhamDatum d = family_datum(t);
        s.count();
        s.check(DeRhamDatum::validate(d.omega_map(), d.delta_map()).ok(),
                [&]() { return "family datum does not validate for " + describe(t); });
        for (int p = 0; p < 20; ++p) {
            Rational a = make_rational(uniform(s.rng, -6, 6), uniform(s.rng, 1, 2));
            DeRhamDatum pd = pointwise_datum(t, RingMap::evaluate_at(r, a));
            s.check(leq(d, pd), [&]() {
                return "pointwise datum at x = " + to_string(a) + " (" + to_literal(pd) + ") is not above " +
                       to_literal(d) + " for " + describe(t);
            });
        }
    }
}

// all valid data with support in [lo, hi], Omega <= om_max, Delta <= d_max
std::vector<DeRhamDatum> all_data(int lo, int hi, int om_max, int d_max)
{
    std::vector<DeRhamDatum> out;
    const int width = hi - lo + 1;
    std::vector<int> om(static_cast<size_t>(width));
    std::function<void(int)> rec_om = [&](int w) {
        if (w < width) {
            for (int v = 0; v <= om_max; ++v) {
                om[static_cast<size_t>(w)] = v;
                rec_om(w + 1);
            }
            return;
        }
        OmegaMap omap;
        for (int i = 0; i < width; ++i)
            if (om[static_cast<size_t>(i)] > 0)
                omap[lo + i] = om[static_cast<size_t>(i)];
        if (omap.empty()) {
            out.emplace_back();
            return;
        }
        const int a0 = omap.begin()->first, b0 = omap.rbegin()->first + 1;
        std::vector<std::pair<int, int>> cells;
        for (int len = 1; len <= b0 - a0; ++len)
            for (int a = a0; a + len <= b0; ++a)
                cells.emplace_back(a, a + len);
        DeltaMap dm;
        std::function<void(size_t)> rec_d = [&](size_t c) {
            if (c == cells.size()) {
                auto v = DeRhamDatum::validate(omap, dm);
                if (v.ok())
                    out.push_back(*v.datum);
                return;
            }
            for (int v = 0; v <= d_max; ++v) {
                dm[cells[c]] = v;
                rec_d(c + 1);
            }
            dm.erase(cells[c]);
        };
        rec_d(0);
    };
    rec_om(0);
    return out;
}

void suite_min_covers(Suite& s)
{
    auto data = all_data(0, 1, 2, 3);
    for (const auto& d : data) {
        s.count();
        auto covers = min_covers(d, 0, 1);
        auto fail = [&](const std::string& what) { return [&, what]() { return "min_covers of " + to_literal(d) + ": " + what; }; };
        s.check(!covers.empty(), fail("empty output"));
        for (size_t a = 0; a < covers.size(); ++a) {
            s.check(compare(d, covers[a]).order == Order::lt, fail("cover not strictly above"));
            for (size_t b = 0; b < covers.size(); ++b)
                if (a != b)
                    s.check(compare(covers[a], covers[b]).order != Order::lt, fail("covers not an antichain"));
        }
        // nothing valid strictly between D and a cover; exhaustive over the box
        for (const auto& c : covers)
            for (const auto& e : data)
                if (compare(d, e).order == Order::lt && compare(e, c).order == Order::lt)
                    s.check(false, fail("datum " + to_literal(e) + " lies between D and " + to_literal(c)));
    }
}

void suite_strata(Suite& s)
{
    Ring r = Ring::polynomials("x");
    for (int it = 0; it < 20; ++it) {
        size_t n = static_cast<size_t>(uniform(s.rng, 1, 3));
        DifTower t = random_tower(s.rng, r, n, static_cast<size_t>(uniform(s.rng, 1, 2)));
        int i = static_cast<int>(uniform(s.rng, -1, 1));
        int j = i + static_cast<int>(uniform(s.rng, 0, 2));
        auto strata = strata_decomposition(t, i, j);
        for (int p = 0; p < 200; ++p) {
            s.count();
            Rational a = p < 21 ? Rational(p - 10) : make_rational(uniform(s.rng, -12, 12), uniform(s.rng, 1, 4));
            DeRhamDatum want = truncate(pointwise_datum(t, RingMap::evaluate_at(r, a)), i, j);
            int hits = 0;
            bool match = true;
            for (const auto& st : strata)
                if (st.points().contains(a)) {
                    ++hits;
                    match = match && st.datum == want;
                }
            s.check(hits == 1 && match, [&]() {
                return "point x = " + to_string(a) + " lies in " + std::to_string(hits) + " strata on [" +
                       std::to_string(i) + "," + std::to_string(j) + "] for " + describe(t);
            });
        }
        for (const auto& st : strata)
            for (int k = i; k <= j; ++k)
                for (int l = k + 1; l <= j + 1; ++l) {
                    auto rep = stratum_report(t, st, k, l, 25);
                    s.check(rep.verdict != Verdict::counterexample, [&]() {
                        return "stratum " + to_literal(st.datum) + " not constant on (" + std::to_string(k) + "," +
                               std::to_string(l) + ") for " + describe(t);
                    });
                }
    }
}

void suite_self_dual(Suite& s)
{
    Ring q = Ring::rationals();
    DifTower v(q, 2, {Matrix::diagonal(q, {Poly(0), Poly(-1)}), Matrix(q, 2, 2)});
    DifTower sum = direct_sum(v, dual_twist(v, 3));
    OmegaMap w = weight_multiplicities(sen_polynomial(v));
    size_t below = 0;
    for (auto [wt, m] : w)
        if (wt < 2)
            below += static_cast<size_t>(m);
    s.count();
    auto sv = stabilized_plus_dim(v, 0);
    s.check(sv.d == 2 && below == 2, [&]() { return "V summand: d = " + std::to_string(sv.d); });
    s.count();
    auto ss = stabilized_plus_dim(sum, 0);
    s.check(ss.d == below, [&]() { return "V + dual twist: d = " + std::to_string(ss.d); });
}

const std::map<std::string, std::function<void(Suite&)>>& registry()
{
    static const std::map<std::string, std::function<void(Suite&)>> r{
        {"splitting", suite_splitting},       {"rank-equality", suite_rank_equality},
        {"artinian", suite_artinian},         {"stabilization", suite_stabilization},
        {"running-example", suite_running_example}, {"flatness", suite_flatness},
        {"base-change", suite_base_change},   {"datum-axioms", suite_datum_axioms},
        {"min-covers", suite_min_covers},     {"strata", suite_strata},
        {"self-dual", suite_self_dual},
    };
    return r;
}

}  // namespace

std::vector<std::string> suite_names()
{
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry())
        out.push_back(name);
    return out;
}

VerificationReport run_suite(const std::string& name, uint64_t seed)
{
    auto it = registry().find(name);
    if (it == registry().end())
        throw std::invalid_argument("unknown suite '" + name + "'");
    Suite s(name, seed);
    it->second(s);
    return s.report;
}

}  // namespace period_strata::cli

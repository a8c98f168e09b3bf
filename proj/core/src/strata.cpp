#include "period_strata/strata.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace period_strata {

namespace {

std::vector<Poly> normalized(std::vector<Poly> v)
{
    for (auto& p : v) {
        if (p.degree() < 1)
            throw std::invalid_argument("locus orbit must have degree >= 1, got " + p.to_string());
        p = p.monic();
    }
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<Poly> set_union(const std::vector<Poly>& a, const std::vector<Poly>& b)
{
    std::vector<Poly> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<Poly> set_inter(const std::vector<Poly>& a, const std::vector<Poly>& b)
{
    std::vector<Poly> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<Poly> set_diff(const std::vector<Poly>& a, const std::vector<Poly>& b)
{
    std::vector<Poly> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

}  // namespace

Locus::Locus(bool cofinite, std::vector<Poly> orbits) : cofinite_(cofinite), orbits_(std::move(orbits)) {}

Locus Locus::everything()
{
    return Locus(true, {});
}

Locus Locus::finite(std::vector<Poly> orbits)
{
    return Locus(false, normalized(std::move(orbits)));
}

Locus Locus::cofinite(std::vector<Poly> excluded)
{
    return Locus(true, normalized(std::move(excluded)));
}

Locus Locus::zeros(const Poly& g)
{
    if (g.is_zero())
        return everything();
    std::vector<Poly> orbits;
    for (auto& [h, e] : factor(g))
        orbits.push_back(h);
    return finite(std::move(orbits));
}

LocusKind Locus::kind() const
{
    if (orbits_.empty())
        return cofinite_ ? LocusKind::everything : LocusKind::empty;
    return cofinite_ ? LocusKind::cofinite : LocusKind::finite;
}

bool Locus::contains(const Rational& a) const
{
    bool listed = std::any_of(orbits_.begin(), orbits_.end(), [&](const Poly& h) { return h.eval(a) == 0; });
    return listed != cofinite_;
}

bool Locus::contains_orbit(const Poly& h) const
{
    bool listed = std::binary_search(orbits_.begin(), orbits_.end(), h.monic());
    return listed != cofinite_;
}

Locus Locus::complement() const
{
    return Locus(!cofinite_, orbits_);
}

Locus Locus::intersect(const Locus& o) const
{
    if (!cofinite_ && !o.cofinite_)
        return Locus(false, set_inter(orbits_, o.orbits_));
    if (!cofinite_)
        return Locus(false, set_diff(orbits_, o.orbits_));
    if (!o.cofinite_)
        return Locus(false, set_diff(o.orbits_, orbits_));
    return Locus(true, set_union(orbits_, o.orbits_));
}

Locus Locus::unite(const Locus& o) const
{
    return complement().intersect(o.complement()).complement();
}

bool Locus::subset_of(const Locus& o) const
{
    return minus(o).kind() == LocusKind::empty;
}

std::string Locus::to_string(const std::string& var) const
{
    switch (kind()) {
    case LocusKind::everything:
        return "everything";
    case LocusKind::empty:
        return "empty";
    default:
        break;
    }
    std::string out = cofinite_ ? "cofinite{" : "finite{";
    for (size_t i = 0; i < orbits_.size(); ++i)
        out += (i ? ", " : "") + orbits_[i].to_string(var);
    return out + "}";
}

namespace {

void require_line(const DifTower& t)
{
    if (t.ring().kind() != RingKind::polynomials)
        throw std::invalid_argument("strata need a tower over Q[x], got " + t.ring().to_string());
}

// Smith divisors of the tower matrices, computed once per window
class TowerDivisors {
public:
    explicit TowerDivisors(const DifTower& t) : t_(t) {}

    const std::vector<Poly>& at(int k, int l)
    {
        auto it = cache_.find({k, l});
        if (it == cache_.end())
            it = cache_.emplace(std::make_pair(k, l), smith_divisors(tower_matrix(t_, k, l))).first;
        return it->second;
    }

    size_t size(int k, int l) const { return t_.rank() * static_cast<size_t>(l - k); }

    // points where h0(k, l) >= d
    Locus h0_at_least(int k, int l, int d)
    {
        if (d <= 0)
            return Locus::everything();
        const size_t n = size(k, l);
        if (static_cast<size_t>(d) > n)
            return Locus::empty();
        const auto& s = at(k, l);
        // rank at a point is the number of divisors not vanishing there;
        // the divisor chain makes the vanishing ones a tail
        const size_t idx = n - static_cast<size_t>(d) + 1;
        if (idx > s.size())
            return Locus::everything();
        return Locus::zeros(s[idx - 1]);
    }

    const DifTower& tower() const { return t_; }

private:
    const DifTower& t_;
    std::map<std::pair<int, int>, std::vector<Poly>> cache_;
};

Locus sen_locus(const RingPoly& p, size_t rank, int w, int m)
{
    if (m <= 0)
        return Locus::everything();
    if (static_cast<size_t>(m) > rank)
        return Locus::empty();
    RingPoly shifted = p.shift(RingElement(p.ring(), Poly(-w)));
    Poly g;
    for (int c = 0; c < m; ++c)
        g = gcd(g, shifted.coeff(c));
    return Locus::zeros(g);
}

Locus datum_locus(TowerDivisors& td, const RingPoly& p, const DeRhamDatum& d)
{
    Locus out = Locus::everything();
    if (d.is_zero())
        return out;
    for (auto [w, m] : d.omega_map()) {
        out = out.intersect(sen_locus(p, td.tower().rank(), w, m));
        if (out.kind() == LocusKind::empty)
            return out;
    }
    for (auto [key, v] : d.delta_map()) {
        out = out.intersect(td.h0_at_least(key.first, key.second, v));
        if (out.kind() == LocusKind::empty)
            return out;
    }
    return out;
}

}  // namespace

Locus sen_stratum_locus(const DifTower& t, int w, int m)
{
    require_line(t);
    if (m < 1)
        throw std::invalid_argument("sen locus needs m >= 1");
    if (static_cast<size_t>(m) > t.rank())
        throw std::invalid_argument("multiplicity " + std::to_string(m) + " exceeds the rank " +
                                    std::to_string(t.rank()));
    return sen_locus(sen_polynomial(t), t.rank(), w, m);
}

Locus datum_stratum_locus(const DifTower& t, const DeRhamDatum& d)
{
    require_line(t);
    TowerDivisors td(t);
    return datum_locus(td, sen_polynomial(t), d);
}

Locus Stratum::points() const
{
    Locus out = closed;
    for (const auto& r : removed)
        out = out.minus(r.locus);
    return out;
}

DeRhamDatum orbit_datum(const DifTower& t, const Poly& orbit, int i, int j)
{
    require_line(t);
    if (orbit.degree() == 1) {
        Rational a = -orbit.coeff(0) / orbit.coeff(1);
        return truncate(pointwise_datum(t, RingMap::evaluate_at(t.ring(), a)), i, j);
    }
    return truncate(pointwise_datum(t, RingMap::project_to_quotient(t.ring(), orbit)), i, j);
}

std::vector<Stratum> strata_decomposition(const DifTower& t, int i, int j)
{
    require_line(t);
    if (i > j)
        throw std::invalid_argument("strata interval needs i <= j");
    RingPoly p = sen_polynomial(t);
    TowerDivisors td(t);
    DeRhamDatum generic = truncate(family_datum(t), i, j);

    // the truncated datum can only jump where one of these vanishes
    Poly jump(1);
    OmegaMap om = generic.omega_map();
    for (int w = i; w <= j; ++w) {
        int m = om.count(w) ? om[w] : 0;
        Poly c = p.shift(RingElement(p.ring(), Poly(-w))).coeff(m);
        if (!c.is_zero())
            jump = jump * c;
    }
    for (int k = i; k <= j; ++k)
        for (int l = k + 1; l <= j + 1; ++l) {
            const auto& s = td.at(k, l);
            if (!s.empty())
                jump = jump * s.back();
        }

    std::vector<std::pair<DeRhamDatum, std::vector<Poly>>> special;
    std::vector<Poly> moved;
    if (jump.degree() > 0)
        for (auto& [h, e] : factor(jump)) {
            DeRhamDatum d = orbit_datum(t, h, i, j);
            if (d == generic)
                continue;
            moved.push_back(h);
            auto it = std::find_if(special.begin(), special.end(), [&](const auto& s) { return s.first == d; });
            if (it == special.end())
                special.push_back({d, {h}});
            else
                it->second.push_back(h);
        }
    std::sort(special.begin(), special.end(),
              [](const auto& a, const auto& b) { return canonical_less(a.first, b.first); });

    auto build = [&](const DeRhamDatum& d, const Locus& expected) {
        Stratum s{d, datum_locus(td, p, d), {}};
        for (auto& c : min_covers(d, i, j)) {
            Locus l = datum_locus(td, p, c);
            if (l.kind() != LocusKind::empty)
                s.removed.push_back({c, l});
        }
        if (!(s.points() == expected))
            throw std::logic_error("stratum of " + to_literal(d) + " is " + s.points().to_string() +
                                   " but the pointwise data give " + expected.to_string());
        return s;
    };

    std::vector<Stratum> out;
    out.push_back(build(generic, Locus::cofinite(moved)));
    for (auto& [d, hs] : special)
        out.push_back(build(d, Locus::finite(hs)));
    return out;
}

std::string verdict_label(Verdict v)
{
    switch (v) {
    case Verdict::constant:
        return "constant";
    case Verdict::counterexample:
        return "counterexample";
    case Verdict::vacuous:
        return "vacuous";
    }
    return "?";
}

std::vector<Rational> sample_points(const Locus& locus, size_t budget)
{
    std::vector<Rational> out;
    if (locus.kind() == LocusKind::empty)
        return out;
    if (locus.kind() == LocusKind::finite) {
        for (const auto& h : locus.orbits())
            if (h.degree() == 1 && out.size() < budget)
                out.push_back(-h.coeff(0) / h.coeff(1));
        return out;
    }
    for (long n = 0; out.size() < budget; ++n) {
        long a = n % 2 == 1 ? (n + 1) / 2 : -(n / 2);
        if (locus.contains(a))
            out.emplace_back(a);
    }
    return out;
}

StratumReport stratum_report(const DifTower& t, const Stratum& s, int k, int l, size_t budget)
{
    require_line(t);
    if (k >= l)
        throw std::invalid_argument("report window needs k < l");
    StratumReport rep;
    rep.k = k;
    rep.l = l;
    rep.expected = s.datum.delta(k, l);
    Locus pts = s.points();
    auto add = [&](std::string label, const RingMap& m) {
        auto c = cohomology_dims(t, k, l, m);
        bool ok = c.h0 == static_cast<size_t>(rep.expected) && c.h1 == static_cast<size_t>(rep.expected);
        rep.rows.push_back({std::move(label), c.h0, c.h1, ok});
    };
    if (pts.kind() == LocusKind::finite) {
        for (const auto& h : pts.orbits()) {
            if (h.degree() == 1) {
                Rational a = -h.coeff(0) / h.coeff(1);
                add(t.ring().var() + " = " + to_string(a), RingMap::evaluate_at(t.ring(), a));
            } else {
                rep.notes.push_back("no rational point on the orbit " + h.to_string(t.ring().var()) +
                                    "; evaluated over its residue field");
                add(h.to_string(t.ring().var()) + " = 0", RingMap::project_to_quotient(t.ring(), h));
            }
        }
    } else {
        for (const auto& a : sample_points(pts, budget))
            add(t.ring().var() + " = " + to_string(a), RingMap::evaluate_at(t.ring(), a));
    }
    if (rep.rows.empty())
        rep.verdict = Verdict::vacuous;
    else
        rep.verdict = std::all_of(rep.rows.begin(), rep.rows.end(), [](const ReportRow& r) { return r.matches; })
                          ? Verdict::constant
                          : Verdict::counterexample;
    return rep;
}

}  // namespace period_strata

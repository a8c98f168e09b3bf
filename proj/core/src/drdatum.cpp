#include "period_strata/drdatum.hpp"

#include "period_strata/parse_error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace period_strata {

std::string condition_label(Condition c)
{
    switch (c) {
    case Condition::support:
        return "support";
    case Condition::diagonal:
        return "diagonal";
    case Condition::step:
        return "step";
    case Condition::triangle:
        return "triangle";
    case Condition::extension:
        return "extension";
    case Condition::negative:
        return "range";
    }
    return "?";
}

std::string condition_number(Condition c)
{
    switch (c) {
    case Condition::support:
        return "i";
    case Condition::diagonal:
        return "ii";
    case Condition::step:
        return "iii";
    case Condition::triangle:
        return "iv";
    default:
        return "";
    }
}

std::string order_label(Order o)
{
    switch (o) {
    case Order::eq:
        return "eq";
    case Order::lt:
        return "lt";
    case Order::gt:
        return "gt";
    case Order::incomparable:
        return "incomparable";
    }
    return "?";
}

namespace {

int clamp_to(int v, int lo, int hi)
{
    return std::max(lo, std::min(v, hi));
}

}  // namespace

// Builds canonical storage from Omega on a range and a Delta oracle.
struct DatumBuilder {
    static DeRhamDatum build(int lo, const std::vector<int>& omega, const std::function<int(int, int)>& delta)
    {
        DeRhamDatum d;
        size_t first = 0, last = omega.size();
        while (first < last && omega[first] == 0)
            ++first;
        while (last > first && omega[last - 1] == 0)
            --last;
        if (first == last)
            return d;
        d.lo_ = lo + static_cast<int>(first);
        d.omega_.assign(omega.begin() + first, omega.begin() + last);
        const int size = static_cast<int>(d.omega_.size());
        d.delta_.assign(static_cast<size_t>(size * (size + 1) / 2), 0);
        for (int b = 1; b <= size; ++b)
            for (int a = 0; a < b; ++a)
                d.delta_[d.index(d.lo_ + a, d.lo_ + b)] = delta(d.lo_ + a, d.lo_ + b);
        return d;
    }

    static int window_lo(const DeRhamDatum& d) { return d.lo_; }
    static int window_hi(const DeRhamDatum& d) { return d.lo_ + static_cast<int>(d.omega_.size()); }
};

size_t DeRhamDatum::index(int i, int j) const
{
    int a = i - lo_, b = j - lo_;
    return static_cast<size_t>(b * (b - 1) / 2 + a);
}

std::optional<int> DeRhamDatum::lower() const
{
    if (is_zero())
        return std::nullopt;
    return lo_;
}

std::optional<int> DeRhamDatum::upper() const
{
    if (is_zero())
        return std::nullopt;
    return lo_ + static_cast<int>(omega_.size()) - 1;
}

int DeRhamDatum::omega(int w) const
{
    if (w < lo_ || w >= lo_ + static_cast<int>(omega_.size()))
        return 0;
    return omega_[w - lo_];
}

int DeRhamDatum::delta(int i, int j) const
{
    if (is_zero() || i >= j)
        return 0;
    const int hi = lo_ + static_cast<int>(omega_.size());
    int a = clamp_to(i, lo_, hi), b = clamp_to(j, lo_, hi);
    if (a >= b)
        return 0;
    return delta_[index(a, b)];
}

OmegaMap DeRhamDatum::omega_map() const
{
    OmegaMap m;
    for (size_t i = 0; i < omega_.size(); ++i)
        if (omega_[i] != 0)
            m[lo_ + static_cast<int>(i)] = omega_[i];
    return m;
}

DeltaMap DeRhamDatum::delta_map() const
{
    DeltaMap m;
    const int hi = lo_ + static_cast<int>(omega_.size());
    if (is_zero())
        return m;
    for (int a = lo_; a < hi; ++a)
        for (int b = a + 1; b <= hi; ++b)
            if (int v = delta(a, b); v != 0)
                m[{a, b}] = v;
    return m;
}

ValidationResult DeRhamDatum::validate(const OmegaMap& omega, const DeltaMap& delta)
{
    ValidationResult res;
    auto fail = [&](Condition c, std::vector<int> w, std::string msg) {
        res.violations.push_back({c, std::move(w), std::move(msg)});
    };

    std::optional<int> L, U;
    for (auto [w, m] : omega) {
        if (m < 0)
            fail(Condition::support, {w}, "Omega(" + std::to_string(w) + ") = " + std::to_string(m) + " is negative");
        if (m > 0) {
            L = L ? std::min(*L, w) : w;
            U = U ? std::max(*U, w) : w;
        }
    }
    auto om = [&](int w) {
        auto it = omega.find(w);
        return it == omega.end() ? 0 : std::max(it->second, 0);
    };
    for (auto [key, v] : delta) {
        auto [i, j] = key;
        if (i >= j && v != 0)
            fail(Condition::diagonal, {i, j},
                 "Delta(" + std::to_string(i) + "," + std::to_string(j) + ") = " + std::to_string(v) + " with i >= j");
        if (i < j && v < 0)
            fail(Condition::negative, {i, j},
                 "Delta(" + std::to_string(i) + "," + std::to_string(j) + ") = " + std::to_string(v) + " is negative");
    }

    auto given = [&](int i, int j) -> std::optional<int> {
        auto it = delta.find({i, j});
        if (it == delta.end())
            return std::nullopt;
        return it->second;
    };
    // the function on the window, missing entries 0
    auto window = [&](int i, int j) {
        if (!L || i >= j)
            return 0;
        int a = clamp_to(i, *L, *U + 1), b = clamp_to(j, *L, *U + 1);
        if (a >= b)
            return 0;
        return given(a, b).value_or(0);
    };
    auto in_window = [&](int i, int j) { return L && *L <= i && j <= *U + 1; };
    auto G = [&](int i, int j) {
        if (i >= j)
            return 0;
        if (auto g = given(i, j))
            return *g;
        return window(i, j);
    };

    if (!L && delta.empty())
        return res.violations.empty() ? ValidationResult{DeRhamDatum(), {}} : res;

    int lo = L.value_or(0), hi = U ? *U + 1 : 0;
    bool seeded = L.has_value();
    auto widen = [&](int v) {
        if (!seeded) {
            lo = hi = v;
            seeded = true;
        }
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    for (auto [w, m] : omega) {
        widen(w);
        widen(w + 1);
    }
    for (auto [key, v] : delta) {
        widen(key.first);
        widen(key.second);
    }

    for (int w = lo; w < hi; ++w) {
        int s = G(w, w + 1), o = om(w);
        if (s < std::min(o, 1) || s > o)
            fail(Condition::step, {w},
                 "need min(Omega(" + std::to_string(w) + "),1) = " + std::to_string(std::min(o, 1)) + " <= Delta(" +
                     std::to_string(w) + "," + std::to_string(w + 1) + ") = " + std::to_string(s) +
                     " <= Omega = " + std::to_string(o));
    }
    for (int i = lo; i <= hi; ++i)
        for (int j = i + 1; j <= hi; ++j)
            for (int k = j + 1; k <= hi; ++k) {
                int ij = G(i, j), jk = G(j, k), ik = G(i, k);
                if (std::max(ij, jk) > ik || ik > ij + jk) {
                    std::ostringstream m;
                    m << "Delta(" << i << "," << k << ") = " << ik << " outside [max, sum] = [" << std::max(ij, jk)
                      << ", " << ij + jk << "] through j = " << j;
                    fail(Condition::triangle, {i, j, k}, m.str());
                }
            }
    for (auto [key, v] : delta) {
        auto [i, j] = key;
        if (i >= j || in_window(i, j))
            continue;
        if (v != window(i, j))
            fail(Condition::extension, {i, j},
                 "Delta(" + std::to_string(i) + "," + std::to_string(j) + ") = " + std::to_string(v) +
                     " but the clamped value is " + std::to_string(window(i, j)));
    }

    if (!res.violations.empty())
        return res;
    std::vector<int> om_vec;
    if (L)
        for (int w = *L; w <= *U; ++w)
            om_vec.push_back(om(w));
    res.datum = DatumBuilder::build(L.value_or(0), om_vec, window);
    return res;
}

DeRhamDatum DeRhamDatum::make(const OmegaMap& omega, const DeltaMap& delta)
{
    auto r = validate(omega, delta);
    if (r.ok())
        return *r.datum;
    std::string msg = "not a de Rham datum:";
    for (const auto& v : r.violations)
        msg += " " + condition_label(v.condition) + " " + v.message + ";";
    throw std::invalid_argument(msg);
}

namespace {

int wlo(const DeRhamDatum& d)
{
    return DatumBuilder::window_lo(d);
}

int whi(const DeRhamDatum& d)
{
    return DatumBuilder::window_hi(d);
}

std::vector<int> omega_vec(const DeRhamDatum& d)
{
    std::vector<int> v;
    for (int w = wlo(d); w < whi(d); ++w)
        v.push_back(d.omega(w));
    return v;
}

}  // namespace

Classification classify(const DeRhamDatum& d)
{
    Classification c{true, true, true};
    if (d.is_zero())
        return c;
    const int lo = wlo(d), hi = whi(d);
    for (int i = lo; i < hi; ++i) {
        if (d.delta(i, i + 1) != d.omega(i))
            c.full = false;
        if (d.delta(i, i + 1) != std::min(d.omega(i), 1))
            c.sen = false;
    }
    for (int i = lo; i <= hi; ++i)
        for (int j = i + 1; j <= hi; ++j)
            for (int k = j + 1; k <= hi; ++k) {
                int ij = d.delta(i, j), jk = d.delta(j, k), ik = d.delta(i, k);
                if (ik != ij + jk)
                    c.full = false;
                if (ik != std::max(ij, jk))
                    c.hodge_tate = false;
            }
    c.sen = c.sen && c.hodge_tate;
    return c;
}

DeRhamDatum associated(const DeRhamDatum& d, AssociatedKind kind)
{
    if (d.is_zero())
        return d;
    auto step = [&](int k) { return kind == AssociatedKind::hodge_tate ? d.delta(k, k + 1) : std::min(d.omega(k), 1); };
    return DatumBuilder::build(wlo(d), omega_vec(d), [&](int i, int j) {
        int m = 0;
        for (int k = i; k < j; ++k)
            m = std::max(m, step(k));
        return m;
    });
}

Dimensions dimensions(const DeRhamDatum& d)
{
    Dimensions out;
    if (d.is_zero())
        return out;
    for (int i = wlo(d); i < whi(d); ++i) {
        out.sd += d.omega(i);
        out.htd += d.delta(i, i + 1);
    }
    for (int i = wlo(d); i <= whi(d); ++i)
        for (int j = i + 1; j <= whi(d); ++j)
            out.drd = std::max(out.drd, d.delta(i, j));
    return out;
}

int htd_range(const DeRhamDatum& d, int k, int l)
{
    int s = 0;
    for (int i = k; i < l; ++i)
        s += d.delta(i, i + 1);
    return s;
}

DeRhamDatum twist(const DeRhamDatum& d, int n)
{
    if (d.is_zero())
        return d;
    return DatumBuilder::build(wlo(d) - n, omega_vec(d), [&](int i, int j) { return d.delta(i + n, j + n); });
}

DeRhamDatum truncate(const DeRhamDatum& d, int i, int j)
{
    if (d.is_zero() || i > j)
        return DeRhamDatum();
    std::vector<int> om;
    for (int w = i; w <= j; ++w)
        om.push_back(d.omega(w));
    return DatumBuilder::build(i, om, [&](int a, int b) {
        return d.delta(clamp_to(a, i, j + 1), clamp_to(b, i, j + 1));
    });
}

bool supported_in(const DeRhamDatum& d, int i, int j)
{
    return d.is_zero() || (*d.lower() >= i && *d.upper() <= j);
}

Comparison compare(const DeRhamDatum& a, const DeRhamDatum& b, std::optional<std::pair<int, int>> interval)
{
    bool le = true, ge = true;
    if (!(a.is_zero() && b.is_zero())) {
        int lo = a.is_zero() ? wlo(b) : b.is_zero() ? wlo(a) : std::min(wlo(a), wlo(b));
        int hi = a.is_zero() ? whi(b) : b.is_zero() ? whi(a) : std::max(whi(a), whi(b));
        for (int w = lo; w < hi; ++w) {
            le = le && a.omega(w) <= b.omega(w);
            ge = ge && a.omega(w) >= b.omega(w);
        }
        for (int i = lo; i <= hi; ++i)
            for (int j = i + 1; j <= hi; ++j) {
                le = le && a.delta(i, j) <= b.delta(i, j);
                ge = ge && a.delta(i, j) >= b.delta(i, j);
            }
    }
    Comparison c;
    c.order = le && ge ? Order::eq : le ? Order::lt : ge ? Order::gt : Order::incomparable;
    if (interval)
        c.strictly_below_in_interval = c.order == Order::lt && supported_in(b, interval->first, interval->second);
    return c;
}

bool leq(const DeRhamDatum& a, const DeRhamDatum& b)
{
    Order o = compare(a, b).order;
    return o == Order::eq || o == Order::lt;
}

bool canonical_less(const DeRhamDatum& a, const DeRhamDatum& b)
{
    auto oa = a.omega_map(), ob = b.omega_map();
    std::vector<std::pair<int, int>> va(oa.begin(), oa.end()), vb(ob.begin(), ob.end());
    if (va != vb)
        return va < vb;
    auto da = a.delta_map(), db = b.delta_map();
    std::vector<std::pair<std::pair<int, int>, int>> ta(da.begin(), da.end()), tb(db.begin(), db.end());
    return ta < tb;
}

namespace {

// D_w: one more copy of weight w, Delta raised to 1 on windows containing w
DeRhamDatum insert_weight(const DeRhamDatum& d, int w)
{
    int lo = d.is_zero() ? w : std::min(wlo(d), w);
    int hi = d.is_zero() ? w + 1 : std::max(whi(d), w + 1);
    std::vector<int> om;
    for (int v = lo; v < hi; ++v)
        om.push_back(d.omega(v) + (v == w ? 1 : 0));
    return DatumBuilder::build(lo, om, [&](int k, int l) {
        int v = d.delta(k, l);
        return k <= w && w < l ? std::max(v, 1) : v;
    });
}

// every valid datum with the same Omega as d and Delta >= d's
void same_omega_above(const DeRhamDatum& d, std::vector<DeRhamDatum>& out)
{
    if (d.is_zero())
        return;
    const int lo = wlo(d), hi = whi(d);
    const int points = hi - lo + 1;
    std::vector<std::pair<int, int>> cells;
    for (int len = 1; len < points; ++len)
        for (int a = lo; a + len <= hi; ++a)
            cells.emplace_back(a, a + len);
    std::map<std::pair<int, int>, int> val;
    std::function<void(size_t)> rec = [&](size_t c) {
        if (c == cells.size()) {
            DeRhamDatum e = DatumBuilder::build(lo, omega_vec(d), [&](int i, int j) { return val.at({i, j}); });
            if (!(e == d))
                out.push_back(std::move(e));
            return;
        }
        auto [a, b] = cells[c];
        int low = d.delta(a, b), high;
        if (b == a + 1) {
            low = std::max(low, std::min(d.omega(a), 1));
            high = d.omega(a);
        } else {
            high = std::numeric_limits<int>::max();
            for (int m = a + 1; m < b; ++m) {
                int x = val.at({a, m}), y = val.at({m, b});
                low = std::max({low, x, y});
                high = std::min(high, x + y);
            }
        }
        for (int v = low; v <= high; ++v) {
            val[{a, b}] = v;
            rec(c + 1);
        }
        val.erase({a, b});
    };
    rec(0);
}

}  // namespace

std::vector<DeRhamDatum> min_covers(const DeRhamDatum& d, int i, int j)
{
    if (i > j || !supported_in(d, i, j))
        throw std::invalid_argument("min_covers: support of the datum is not inside [" + std::to_string(i) + ", " +
                                    std::to_string(j) + "]");
    std::vector<DeRhamDatum> cand;
    for (int w = i; w <= j; ++w)
        cand.push_back(insert_weight(d, w));
    same_omega_above(d, cand);

    std::vector<DeRhamDatum> minimal;
    for (size_t a = 0; a < cand.size(); ++a) {
        bool dominated = false;
        for (size_t b = 0; b < cand.size() && !dominated; ++b)
            dominated = b != a && compare(cand[b], cand[a]).order == Order::lt;
        if (!dominated && std::find(minimal.begin(), minimal.end(), cand[a]) == minimal.end())
            minimal.push_back(cand[a]);
    }
    std::sort(minimal.begin(), minimal.end(), canonical_less);
    return minimal;
}

std::string to_literal(const DeRhamDatum& d)
{
    std::ostringstream out;
    out << "omega: {";
    bool first = true;
    for (auto [w, m] : d.omega_map()) {
        out << (first ? "" : ", ") << w << ": " << m;
        first = false;
    }
    out << "}; delta: {";
    first = true;
    for (auto [key, v] : d.delta_map()) {
        out << (first ? "" : ", ") << "(" << key.first << "," << key.second << "): " << v;
        first = false;
    }
    out << "}";
    return out.str();
}

namespace {

class LiteralParser {
public:
    explicit LiteralParser(std::string_view s) : s_(s) {}

    std::pair<OmegaMap, DeltaMap> parse()
    {
        OmegaMap om;
        DeltaMap dm;
        keyword("omega");
        expect(':');
        expect('{');
        if (!peek('}')) {
            do {
                size_t at = skip();
                int w = integer();
                expect(':');
                int m = integer();
                if (!om.emplace(w, m).second)
                    throw ParseError("duplicate omega key " + std::to_string(w), at);
            } while (accept(','));
        }
        expect('}');
        expect(';');
        keyword("delta");
        expect(':');
        expect('{');
        if (!peek('}')) {
            do {
                size_t at = skip();
                expect('(');
                int i = integer();
                expect(',');
                int j = integer();
                expect(')');
                expect(':');
                int v = integer();
                if (!dm.emplace(std::make_pair(i, j), v).second)
                    throw ParseError("duplicate delta key", at);
            } while (accept(','));
        }
        expect('}');
        accept(';');
        if (skip() != s_.size())
            throw ParseError("trailing characters in datum literal", pos_);
        return {om, dm};
    }

private:
    size_t skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        return pos_;
    }
    bool peek(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool accept(char c)
    {
        if (!peek(c))
            return false;
        ++pos_;
        return true;
    }
    void expect(char c)
    {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "' in datum literal", pos_);
    }
    void keyword(std::string_view k)
    {
        skip();
        if (s_.substr(pos_, k.size()) != k)
            throw ParseError("expected '" + std::string(k) + "'", pos_);
        pos_ += k.size();
    }
    int integer()
    {
        skip();
        size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
            ++pos_;
        size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (pos_ == digits || pos_ - digits > 9)
            throw ParseError("expected an integer", start);
        return std::stoi(std::string(s_.substr(start, pos_ - start)));
    }

    std::string_view s_;
    size_t pos_ = 0;
};

}  // namespace

std::pair<OmegaMap, DeltaMap> parse_literal_maps(std::string_view text)
{
    return LiteralParser(text).parse();
}

DeRhamDatum parse_literal(std::string_view text)
{
    auto [om, dm] = parse_literal_maps(text);
    return DeRhamDatum::make(om, dm);
}

}  // namespace period_strata

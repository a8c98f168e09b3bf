#include "period_strata/drdatum.hpp"
#include "period_strata/parse_error.hpp"
#include "datum_oracles.hpp"
#include "generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

using namespace period_strata;
using period_strata::testing::Gen;

namespace {

bool has_violation(const ValidationResult& r, Condition c)
{
    return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.condition == c; });
}

DeRhamDatum full_01()
{
    return DeRhamDatum::make({{0, 1}, {1, 1}}, {{{0, 1}, 1}, {{1, 2}, 1}, {{0, 2}, 2}});
}

DeRhamDatum ht_01()
{
    return DeRhamDatum::make({{0, 1}, {1, 1}}, {{{0, 1}, 1}, {{1, 2}, 1}, {{0, 2}, 1}});
}

}  // namespace

TEST_CASE("validate examples", "[drdatum]")
{
    auto zero = DeRhamDatum::validate({}, {});
    REQUIRE(zero.ok());
    CHECK(zero.datum->is_zero());

    auto r = DeRhamDatum::validate({{0, 1}}, {{{0, 1}, 0}});
    CHECK(!r.ok());
    CHECK(has_violation(r, Condition::step));

    auto t = DeRhamDatum::validate({{0, 1}, {1, 1}}, {{{0, 1}, 1}, {{1, 2}, 1}, {{0, 2}, 3}});
    CHECK(!t.ok());
    CHECK(has_violation(t, Condition::triangle));
    bool witness = false;
    for (auto& v : t.violations)
        witness = witness || (v.condition == Condition::triangle && v.witness == std::vector<int>{0, 1, 2});
    CHECK(witness);
}

TEST_CASE("validate edge cases", "[drdatum]")
{
    CHECK(has_violation(DeRhamDatum::validate({{0, -1}}, {}), Condition::support));
    CHECK(has_violation(DeRhamDatum::validate({{0, 1}}, {{{0, 1}, 1}, {{1, 1}, 2}}), Condition::diagonal));
    CHECK(has_violation(DeRhamDatum::validate({{0, 1}}, {{{0, 1}, 1}, {{-1, 0}, -1}}), Condition::negative));
    // outside the window the clamped value is 1
    CHECK(DeRhamDatum::validate({{0, 1}}, {{{0, 1}, 1}, {{-3, 4}, 1}}).ok());
    CHECK(has_violation(DeRhamDatum::validate({{0, 1}}, {{{0, 1}, 1}, {{-3, 4}, 2}}), Condition::extension));
    // a gap in the support still needs Delta across it
    auto gap = DeRhamDatum::validate({{0, 1}, {2, 1}}, {{{0, 1}, 1}, {{2, 3}, 1}});
    CHECK(!gap.ok());
    CHECK(DeRhamDatum::validate({{0, 1}, {2, 1}},
                                {{{0, 1}, 1}, {{2, 3}, 1}, {{0, 2}, 1}, {{0, 3}, 1}, {{1, 3}, 1}})
              .ok());
    CHECK_THROWS_AS(DeRhamDatum::make({{0, 1}}, {}), std::invalid_argument);
}

TEST_CASE("clamp rule reads", "[drdatum]")
{
    auto d = full_01();
    CHECK(d.delta(-5, 1) == 1);
    CHECK(d.delta(-5, 9) == 2);
    CHECK(d.delta(1, 9) == 1);
    CHECK(d.delta(2, 9) == 0);
    CHECK(d.delta(-3, -1) == 0);
    CHECK(d.delta(1, 0) == 0);
    CHECK(*d.lower() == 0);
    CHECK(*d.upper() == 1);
    CHECK(!DeRhamDatum().lower());
}

TEST_CASE("classify examples", "[drdatum]")
{
    auto z = classify(DeRhamDatum());
    CHECK((z.full && z.hodge_tate && z.sen));

    auto a = classify(DeRhamDatum::make({{0, 2}}, {{{0, 1}, 2}}));
    CHECK(a.full);
    CHECK(a.hodge_tate);
    CHECK(!a.sen);

    auto b = classify(ht_01());
    CHECK(b.hodge_tate);
    CHECK(!b.full);
    CHECK(b.sen);
}

TEST_CASE("associated examples", "[drdatum]")
{
    auto ht = associated(full_01(), AssociatedKind::hodge_tate);
    CHECK(ht.delta(0, 2) == 1);
    CHECK(ht == ht_01());
    CHECK(associated(ht_01(), AssociatedKind::hodge_tate) == ht_01());

    auto sen = associated(DeRhamDatum::make({{0, 3}}, {{{0, 1}, 2}}), AssociatedKind::sen);
    CHECK(sen.delta(0, 1) == 1);
    CHECK(sen.omega(0) == 3);
}

TEST_CASE("dimensions examples", "[drdatum]")
{
    CHECK(dimensions(DeRhamDatum()) == Dimensions{0, 0, 0});
    auto full = DeRhamDatum::make({{0, 1}, {2, 2}}, {{{0, 1}, 1},
                                                     {{1, 2}, 0},
                                                     {{2, 3}, 2},
                                                     {{0, 2}, 1},
                                                     {{1, 3}, 2},
                                                     {{0, 3}, 3}});
    CHECK(classify(full).full);
    CHECK(dimensions(full) == Dimensions{3, 3, 3});
    CHECK(dimensions(ht_01()) == Dimensions{2, 2, 1});
    CHECK(htd_range(full, 0, 2) == 1);
    CHECK(htd_range(full, -4, 7) == 3);
}

TEST_CASE("twist and truncate examples", "[drdatum]")
{
    auto d = full_01();
    CHECK(twist(twist(d, 3), -3) == d);
    CHECK(*twist(d, 3).lower() == -3);
    CHECK(twist(d, 3).delta(-3, -1) == 2);
}

TEST_CASE("truncate of a spread full datum", "[drdatum]")
{
    DeltaMap dm;
    auto om = [](int w) { return w == 0 || w == 5 ? 1 : 0; };
    for (int a = 0; a <= 6; ++a)
        for (int b = a + 1; b <= 6; ++b) {
            int s = 0;
            for (int w = a; w < b; ++w)
                s += om(w);
            dm[{a, b}] = s;
        }
    auto d = DeRhamDatum::make({{0, 1}, {5, 1}}, dm);
    REQUIRE(classify(d).full);
    auto t = truncate(d, 0, 1);
    CHECK(t.omega_map() == OmegaMap{{0, 1}});
    CHECK(dimensions(t).drd == 1);
    CHECK(truncate(d, *d.lower(), *d.upper()) == d);
    CHECK(leq(t, d));
}

TEST_CASE("compare examples", "[drdatum]")
{
    auto d = full_01();
    CHECK(compare(d, d).order == Order::eq);
    CHECK(compare(DeRhamDatum(), d).order == Order::lt);
    auto a = DeRhamDatum::make({{0, 2}}, {{{0, 1}, 1}});
    auto b = DeRhamDatum::make({{0, 1}}, {{{0, 1}, 1}});
    CHECK(compare(a, b).order == Order::gt);
    CHECK(compare(b, a).order == Order::lt);
    CHECK(compare(ht_01(), a).order == Order::incomparable);

    CHECK(*compare(b, a, std::pair{0, 0}).strictly_below_in_interval);
    CHECK(!*compare(b, d, std::pair{0, 0}).strictly_below_in_interval);
    CHECK(*compare(b, d, std::pair{0, 1}).strictly_below_in_interval);
    CHECK(!*compare(d, d, std::pair{0, 1}).strictly_below_in_interval);
}

TEST_CASE("min_covers examples", "[drdatum]")
{
    auto z = min_covers(DeRhamDatum(), 0, 0);
    REQUIRE(z.size() == 1);
    CHECK(z[0] == DeRhamDatum::make({{0, 1}}, {{{0, 1}, 1}}));

    auto b = DeRhamDatum::make({{0, 1}}, {{{0, 1}, 1}});
    auto two = min_covers(b, 0, 1);
    REQUIRE(two.size() == 2);
    CHECK(std::find(two.begin(), two.end(), DeRhamDatum::make({{0, 2}}, {{{0, 1}, 1}})) != two.end());
    CHECK(std::find(two.begin(), two.end(), ht_01()) != two.end());

    auto c = DeRhamDatum::make({{0, 2}}, {{{0, 1}, 1}});
    auto cs = min_covers(c, 0, 0);
    CHECK(std::find(cs.begin(), cs.end(), DeRhamDatum::make({{0, 2}}, {{{0, 1}, 2}})) != cs.end());

    CHECK_THROWS_AS(min_covers(b, 1, 2), std::invalid_argument);
}

TEST_CASE("literal round trip and errors", "[drdatum]")
{
    auto d = full_01();
    CHECK(to_literal(d) == "omega: {0: 1, 1: 1}; delta: {(0,1): 1, (0,2): 2, (1,2): 1}");
    CHECK(parse_literal(to_literal(d)) == d);
    CHECK(to_literal(DeRhamDatum()) == "omega: {}; delta: {}");
    CHECK(parse_literal("omega: {}; delta: {}").is_zero());
    CHECK(parse_literal(" omega:{0:1} ; delta:{ (0, 1):1 };") == DeRhamDatum::make({{0, 1}}, {{{0, 1}, 1}}));
    CHECK_THROWS_AS(parse_literal("omega: {0: 1}"), ParseError);
    CHECK_THROWS_AS(parse_literal("omega: {0: 1, 0: 2}; delta: {}"), ParseError);
    CHECK_THROWS_AS(parse_literal("omega: {0: 1}; delta: {}"), std::invalid_argument);
    try {
        parse_literal("omega: {0: x}; delta: {}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 11);
    }
}

TEST_CASE("property: dimension chain, idempotence, twist invariance", "[drdatum][property]")
{
    Gen g(20261018);
    for (int it = 0; it < 400; ++it) {
        int lo = static_cast<int>(g.range(-3, 3));
        auto d = period_strata::testing::random_datum(g, lo, static_cast<int>(g.range(1, 5)), 3);
        auto dims = dimensions(d);
        CHECK(dims.drd <= dims.htd);
        CHECK(dims.htd <= dims.sd);

        auto ht = associated(d, AssociatedKind::hodge_tate);
        auto sen = associated(d, AssociatedKind::sen);
        CHECK(associated(ht, AssociatedKind::hodge_tate) == ht);
        CHECK(associated(sen, AssociatedKind::sen) == sen);
        CHECK(classify(ht).hodge_tate);
        CHECK(classify(sen).sen);
        CHECK(leq(sen, ht));
        CHECK(leq(ht, d));

        int n = static_cast<int>(g.range(-4, 4));
        auto t = twist(d, n);
        auto c0 = classify(d), c1 = classify(t);
        CHECK(c0.full == c1.full);
        CHECK(c0.hodge_tate == c1.hodge_tate);
        CHECK(c0.sen == c1.sen);
        CHECK(dimensions(t) == dims);
        CHECK(twist(t, -n) == d);

        // every output round-trips through validation
        for (const auto& e : {ht, sen, t}) {
            auto r = DeRhamDatum::validate(e.omega_map(), e.delta_map());
            REQUIRE(r.ok());
            CHECK(*r.datum == e);
        }
        if (!d.is_zero()) {
            int a = static_cast<int>(g.range(*d.lower() - 1, *d.upper()));
            int b = static_cast<int>(g.range(a, *d.upper() + 1));
            auto tr = truncate(d, a, b);
            CHECK(leq(tr, d));
            CHECK(DeRhamDatum::validate(tr.omega_map(), tr.delta_map()).ok());
            CHECK(parse_literal(to_literal(d)) == d);
        }
    }
}

TEST_CASE("property: min_covers equals exhaustive search", "[drdatum][property]")
{
    Gen g(77);
    for (int it = 0; it < 60; ++it) {
        int width = static_cast<int>(g.range(1, 3));
        int i = static_cast<int>(g.range(-2, 2));
        int j = i + width - 1;
        auto d = period_strata::testing::random_datum(g, i, width, width == 3 ? 1 : 2);
        auto got = min_covers(d, i, j);
        auto want = period_strata::testing::oracle_min_covers(d, i, j);
        std::sort(want.begin(), want.end(), canonical_less);
        INFO(to_literal(d) << " on [" << i << "," << j << "]");
        CHECK(got == want);
        for (size_t a = 0; a < got.size(); ++a) {
            CHECK(compare(d, got[a]).order == Order::lt);
            for (size_t b = 0; b < got.size(); ++b)
                if (a != b)
                    CHECK(compare(got[a], got[b]).order != Order::lt);
        }
    }
}

#include "period_strata/cli/commands.hpp"
#include "period_strata/cli/expr.hpp"
#include "period_strata/cli/family_file.hpp"
#include "period_strata/cli/random_family.hpp"
#include "period_strata/cli/verify.hpp"
#include "period_strata/family.hpp"
#include "period_strata/parse_error.hpp"
#include "datum_oracles.hpp"
#include "generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace period_strata;
using namespace period_strata::cli;

namespace {

const Poly X = Poly::x();

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text)
{
    auto path = std::filesystem::temp_directory_path() / ("period_strata_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

const char* running_example_text = R"({
  "ring": "QQ[x]",
  "rank": 2,
  "depth": 2,
  "blocks": [
    [["0", "0"], ["0", "-1"]],
    [["0", "0"], ["x", "0"]]
  ],
  "meta": {"name": "running-example"}
})";

DifTower running_example()
{
    Ring r = Ring::polynomials("x");
    return DifTower(r, 2, {Matrix(r, 2, 2, {0, 0, 0, -1}), Matrix(r, 2, 2, {0, 0, X, 0})});
}

}  // namespace

TEST_CASE("parse_poly", "[cli]")
{
    CHECK(parse_poly("3x^2 - x/2 + 1/3", "x") == Poly({make_rational(1, 3), make_rational(-1, 2), 3}));
    CHECK(parse_poly("(x-1)^2", "x") == Poly({1, -2, 1}));
    CHECK(parse_poly("-x", "x") == -X);
    CHECK(parse_poly("2(x+1)x", "x") == Poly({0, 2, 2}));
    CHECK(parse_poly(" 7 ", "") == Poly(7));
    CHECK_THROWS_AS(parse_poly("x", ""), ParseError);
    CHECK_THROWS_AS(parse_poly("1/x", "x"), ParseError);
    CHECK_THROWS_AS(parse_poly("1/0", "x"), ParseError);
    CHECK_THROWS_AS(parse_poly("(x", "x"), ParseError);
    CHECK_THROWS_AS(parse_poly("y", "x"), ParseError);
    CHECK_THROWS_AS(parse_poly("", "x"), ParseError);
}

TEST_CASE("parse_ring_literal", "[cli]")
{
    CHECK(parse_ring_literal("QQ") == Ring::rationals());
    CHECK(parse_ring_literal("QQ[x]") == Ring::polynomials("x"));
    CHECK(parse_ring_literal("QQ[t]") == Ring::polynomials("t"));
    CHECK(parse_ring_literal("QQ[x]/((x-1)^2)") == Ring::quotient(Poly({1, -2, 1})));
    CHECK_THROWS_AS(parse_ring_literal("ZZ"), InputError);
    CHECK_THROWS_AS(parse_ring_literal("QQ[x]/(3)"), InputError);
    CHECK_THROWS_AS(parse_ring_literal("QQ[x"), InputError);
}

TEST_CASE("family files", "[cli]")
{
    SECTION("minimal 1x1 tower")
    {
        auto f = parse_family_file(R"({"ring": "QQ", "rank": 1, "depth": 1, "blocks": [[["0"]]]})");
        CHECK(f.tower == DifTower(Ring::rationals(), 1, {Matrix(Ring::rationals(), 1, 1)}));
        CHECK(!f.meta.name);
    }
    SECTION("running example")
    {
        auto f = parse_family_file(running_example_text);
        CHECK(f.tower == running_example());
        CHECK(f.meta.name == "running-example");
    }
    SECTION("integer entries")
    {
        auto f = parse_family_file(R"({"ring": "QQ", "rank": 1, "depth": 1, "blocks": [[[-3]]]})");
        CHECK(f.tower.blocks()[0](0, 0) == Poly(-3));
    }
    SECTION("round trip is canonical")
    {
        auto f = parse_family_file(running_example_text);
        std::string once = serialize_family_file(f.tower, f.meta);
        auto g = parse_family_file(once);
        CHECK(g.tower == f.tower);
        CHECK(serialize_family_file(g.tower, g.meta) == once);
    }
    SECTION("errors name the location")
    {
        try {
            parse_family_file(
                R"({"ring": "QQ[x]", "rank": 2, "depth": 2, "blocks": [[["0","0"],["0","0"]], [["0","0","1"],["0","0","0"]]]})");
            FAIL("expected an error");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find("blocks[1]") != std::string::npos);
        }
        try {
            parse_family_file(R"({"ring": "QQ", "rank": 1,)");
            FAIL("expected an error");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find("offset") != std::string::npos);
        }
        CHECK_THROWS_AS(parse_family_file(R"({"ring": "QQ", "rank": 1, "depth": 1, "blocks": [[["0"]]], "x": 1})"),
                        InputError);
        CHECK_THROWS_AS(parse_family_file(R"({"ring": "QQ", "rank": 1, "depth": 2, "blocks": [[["0"]]]})"),
                        InputError);
        CHECK_THROWS_AS(parse_family_file(R"({"ring": "QQ", "rank": 1, "depth": 1, "blocks": [[["x"]]]})"),
                        InputError);
    }
}

TEST_CASE("run_command analyze", "[cli]")
{
    std::string path = temp_file("running.fam", running_example_text);
    auto r = run({"analyze", path});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("weights: {0: 1, 1: 1}") != std::string::npos);
    CHECK(r.out.find("generic datum: omega: {0: 1, 1: 1}; delta: {(0,1): 1, (0,2): 1, (1,2): 1}") != std::string::npos);
    // the jump stratum sits at x = 0
    CHECK(r.out.find("delta: {(0,1): 1, (0,2): 2, (1,2): 1}\tfinite{x}") != std::string::npos);

    auto records = run({"--format", "records", "analyze", path});
    CHECK(records.code == exit_ok);
    CHECK(records.out.find("\"omega\":{\"0\":1,\"1\":1}") != std::string::npos);

    std::string wrong = std::string(running_example_text);
    wrong.replace(wrong.find("\"name\""), 6, "\"expected\": \"omega: {0: 2}; delta: {(0,1): 2}\", \"name\"");
    CHECK(run({"analyze", temp_file("wrong.fam", wrong)}).code == exit_failure);
}

TEST_CASE("run_command cohomology", "[cli]")
{
    std::string path = temp_file("running2.fam", running_example_text);
    auto r = run({"cohomology", path, "--k", "0", "--l", "2", "--at", "0"});
    CHECK(r.code == exit_ok);
    CHECK(r.out.find("h0=2 h1=2") != std::string::npos);
    CHECK(run({"cohomology", path, "--k", "0", "--l", "2", "--at", "3"}).out.find("h0=1 h1=1") != std::string::npos);
    CHECK(run({"cohomology", path, "--k", "0", "--l", "2", "--artinian", "x^2"}).out.find("h0=3 h1=3") !=
          std::string::npos);
    CHECK(run({"cohomology", path, "--k", "0", "--l", "2", "--at", "0", "--artinian", "x^2"}).code == exit_input);
    CHECK(run({"cohomology", path, "--k", "2", "--l", "1"}).code == exit_input);
}

TEST_CASE("run_command datum", "[cli]")
{
    auto bad = run({"datum", "validate", "omega: {0: 1, 1: 1}; delta: {(0,1): 1, (0,2): 3, (1,2): 1}"});
    CHECK(bad.code == exit_failure);
    CHECK(bad.out.find("(iv)") != std::string::npos);
    CHECK(run({"datum", "validate", "omega: {0: 1}; delta: {(0,1): 1}"}).code == exit_ok);
    CHECK(run({"datum", "validate", "omega: {0: 1"}).code == exit_input);

    auto covers = run({"datum", "mincovers", "omega: {}; delta: {}", "--interval", "0", "1"});
    CHECK(covers.code == exit_ok);
    CHECK(covers.out == "omega: {0: 1}; delta: {(0,1): 1}\nomega: {1: 1}; delta: {(1,2): 1}\n");

    CHECK(run({"datum", "twist", "omega: {0: 1}; delta: {(0,1): 1}", "--by", "2"}).out ==
          "omega: {-2: 1}; delta: {(-2,-1): 1}\n");
    CHECK(run({"datum", "compare", "omega: {0: 1}; delta: {(0,1): 1}", "omega: {0: 2}; delta: {(0,1): 1}"}).out
              .find("lt") != std::string::npos);
}

TEST_CASE("run_command input errors", "[cli]")
{
    CHECK(run({}).code == exit_input);
    CHECK(run({"analyze"}).code == exit_input);
    CHECK(run({"analyze", "/nonexistent/family.fam"}).code == exit_input);
    CHECK(run({"analyze", temp_file("x.fam", running_example_text), "--bogus"}).code == exit_input);
    CHECK(run({"frobnicate"}).code == exit_input);
    CHECK(run({"verify", "--suite", "no-such-suite"}).code == exit_input);
}

TEST_CASE("verify suites are deterministic per seed", "[cli]")
{
    auto a = run_suite("datum-axioms", 5), b = run_suite("datum-axioms", 5);
    CHECK(a.ok());
    CHECK(a.cases == b.cases);
    CHECK(a.failures == b.failures);
    auto flat = run_suite("flatness", 1);
    CHECK(flat.ok());
    bool assumed = false;
    for (const auto& h : flat.ledger)
        assumed = assumed || !h.checked;
    CHECK(assumed);
    CHECK(run({"verify", "--suite", "running-example"}).code == exit_ok);
}

TEST_CASE("seed from the environment", "[cli]")
{
    const std::string target = "omega: {0: 1, 1: 1}; delta: {(0,1): 1, (0,2): 1, (1,2): 1}";
    auto a = run({"random", "--datum", target, "--seed", "3"});
    ::setenv("PERIOD_STRATA_SEED", "3", 1);
    auto b = run({"random", "--datum", target, "--seed", "99"});
    ::unsetenv("PERIOD_STRATA_SEED");
    CHECK(a.code == exit_ok);
    CHECK(a.out == b.out);
}

TEST_CASE("generate_random_family examples", "[cli]")
{
    DeRhamDatum running = parse_literal("omega: {0: 1, 1: 1}; delta: {(0,1): 1, (0,2): 1, (1,2): 1}");
    CHECK(family_datum(generate_random_family(running, 1)) == running);

    DifTower zero = generate_random_family(DeRhamDatum(), 1);
    CHECK(weight_multiplicities(sen_polynomial(zero)).empty());

    DeRhamDatum full = parse_literal("omega: {0: 2}; delta: {(0,1): 2}");
    DifTower f = generate_random_family(full, 1);
    CHECK(f.blocks()[0].is_zero());
    for (size_t s = 1; s < f.depth(); ++s)
        CHECK(f.blocks()[s].is_zero());

    CHECK(generate_random_family(running, 7) == generate_random_family(running, 7));
    CHECK_THROWS_AS(generate_random_family(running, 1, 1), Unrealizable);
}

TEST_CASE("generated families analyze to their target", "[cli][property]")
{
    testing::Gen g(31);
    int realized = 0;
    for (int it = 0; it < 40; ++it) {
        DeRhamDatum target = testing::random_datum(g, static_cast<int>(g.range(-1, 1)), static_cast<int>(g.range(1, 3)), 2);
        DifTower t(Ring::rationals(), 1, {Matrix(Ring::rationals(), 1, 1)});
        try {
            t = generate_random_family(target, static_cast<uint64_t>(it));
        } catch (const Unrealizable&) {
            continue;
        }
        ++realized;
        INFO(to_literal(target));
        REQUIRE(family_datum(t) == target);
        std::string path =
            temp_file("gen.fam", serialize_family_file(t, {std::string("generated"), to_literal(target)}));
        auto r = run({"analyze", path});
        REQUIRE(r.code == exit_ok);
        CHECK(r.out.find("expected datum: match") != std::string::npos);
    }
    CHECK(realized >= 30);
}

#include "period_strata/cli/commands.hpp"

#include "period_strata/cli/expr.hpp"
#include "period_strata/cli/family_file.hpp"
#include "period_strata/cli/random_family.hpp"
#include "period_strata/cli/verify.hpp"
#include "period_strata/parse_error.hpp"
#include "period_strata/strata.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace period_strata::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
    std::string format = "text";
    std::string file;
    std::vector<int> interval;
    size_t samples = 25;
    int k = 0, l = 1;
    std::string at, artinian;
    std::string literal, other;
    int by = 0;
    std::string suite;
    uint64_t seed = 1;
    std::string datum;
    size_t rank = 0;
    std::string output;
};

bool records(const Options& o)
{
    return o.format == "records";
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string flags(const Classification& c)
{
    std::string s;
    if (c.full)
        s += "full ";
    if (c.hodge_tate)
        s += "hodge_tate ";
    if (c.sen)
        s += "sen ";
    if (s.empty())
        return "none";
    s.pop_back();
    return s;
}

ordered_json omega_json(const OmegaMap& om)
{
    ordered_json j = ordered_json::object();
    for (auto [w, m] : om)
        j[std::to_string(w)] = m;
    return j;
}

std::string omega_text(const OmegaMap& om)
{
    std::string s = "{";
    bool first = true;
    for (auto [w, m] : om) {
        s += (first ? "" : ", ") + std::to_string(w) + ": " + std::to_string(m);
        first = false;
    }
    return s + "}";
}

std::pair<int, int> interval_of(const Options& o, std::pair<int, int> fallback)
{
    if (o.interval.empty())
        return fallback;
    if (o.interval.size() != 2 || o.interval[0] > o.interval[1])
        throw InputError("--interval needs two integers I <= J");
    return {o.interval[0], o.interval[1]};
}

uint64_t effective_seed(uint64_t seed)
{
    if (const char* env = std::getenv("PERIOD_STRATA_SEED")) {
        try {
            size_t used = 0;
            unsigned long long v = std::stoull(env, &used);
            if (used == std::string(env).size())
                return v;
        } catch (const std::exception&) {
        }
        throw InputError(std::string("PERIOD_STRATA_SEED is not an unsigned integer: '") + env + "'");
    }
    return seed;
}

int cmd_analyze(const Options& o, std::ostream& out)
{
    FamilyFile f = parse_family_file(read_file(o.file));
    const DifTower& t = f.tower;
    RingPoly p = sen_polynomial(t);
    OmegaMap om = weight_multiplicities(p);
    ordered_json rec;
    if (f.meta.name)
        rec["name"] = *f.meta.name;
    rec["ring"] = t.ring().to_string();
    rec["sen_polynomial"] = p.to_string();
    rec["omega"] = omega_json(om);
    if (!records(o)) {
        if (f.meta.name)
            out << "family: " << *f.meta.name << "\n";
        out << "ring: " << t.ring().to_string() << "\n";
        out << "Sen polynomial: " << p.to_string() << "\n";
        out << "weights: " << omega_text(om) << "\n";
    }
    int code = exit_ok;
    if (!t.ring().is_integral()) {
        if (!records(o))
            out << "generic datum: not defined over the non-integral ring " << t.ring().to_string() << "\n";
        else
            out << rec.dump() << "\n";
        return code;
    }
    DeRhamDatum d = family_datum(t);
    Dimensions dims = dimensions(d);
    rec["datum"] = to_literal(d);
    rec["classification"] = flags(classify(d));
    rec["dimensions"] = {{"sd", dims.sd}, {"htd", dims.htd}, {"drd", dims.drd}};
    if (!records(o)) {
        out << "generic datum: " << to_literal(d) << "\n";
        out << "classification: " << flags(classify(d)) << "\n";
        out << "dimensions: sd=" << dims.sd << " htd=" << dims.htd << " drd=" << dims.drd << "\n";
    }
    if (f.meta.expected) {
        DeRhamDatum want = parse_literal(*f.meta.expected);
        bool match = want == d;
        rec["expected_match"] = match;
        if (!records(o))
            out << "expected datum: " << (match ? "match" : "MISMATCH, expected " + to_literal(want)) << "\n";
        if (!match)
            code = exit_failure;
    }
    if (t.ring().kind() == RingKind::polynomials) {
        auto [i, j] = interval_of(o, d.is_zero() ? std::pair{0, 0} : std::pair{*d.lower(), *d.upper()});
        auto strata = strata_decomposition(t, i, j);
        ordered_json rows = ordered_json::array();
        if (!records(o))
            out << "strata on [" << i << "," << j << "]:\n" << "datum\tlocus\tdelta\tverdict\n";
        for (const auto& s : strata) {
            std::string windows;
            Verdict verdict = Verdict::vacuous;
            for (int k = i; k <= j; ++k)
                for (int l = k + 1; l <= j + 1; ++l) {
                    windows += (windows.empty() ? "" : " ") + std::string("(") + std::to_string(k) + "," +
                               std::to_string(l) + ")=" + std::to_string(s.datum.delta(k, l));
                    auto rep = stratum_report(t, s, k, l, o.samples);
                    if (rep.verdict == Verdict::counterexample)
                        verdict = Verdict::counterexample;
                    else if (rep.verdict == Verdict::constant && verdict == Verdict::vacuous)
                        verdict = Verdict::constant;
                }
            if (verdict == Verdict::counterexample)
                code = exit_failure;
            std::string locus = s.points().to_string(t.ring().var());
            if (!records(o))
                out << to_literal(s.datum) << "\t" << locus << "\t" << windows << "\t" << verdict_label(verdict)
                    << "\n";
            rows.push_back({{"datum", to_literal(s.datum)},
                            {"locus", locus},
                            {"delta", windows},
                            {"verdict", verdict_label(verdict)}});
        }
        rec["interval"] = {i, j};
        rec["strata"] = rows;
    }
    if (records(o))
        out << rec.dump() << "\n";
    return code;
}

int cmd_cohomology(const Options& o, std::ostream& out)
{
    FamilyFile f = parse_family_file(read_file(o.file));
    const DifTower& t = f.tower;
    if (o.k >= o.l)
        throw InputError("--k must be smaller than --l");
    std::optional<RingMap> at;
    std::string where = "generic";
    if (!o.at.empty() && !o.artinian.empty())
        throw InputError("--at and --artinian are exclusive");
    if (!o.at.empty() || !o.artinian.empty()) {
        if (t.ring().kind() != RingKind::polynomials)
            throw InputError("--at and --artinian need a tower over QQ[x], got " + t.ring().to_string());
        try {
            if (!o.at.empty()) {
                Poly a = parse_poly(o.at, "");
                at = RingMap::evaluate_at(t.ring(), a.coeff(0));
            } else {
                at = RingMap::project_to_quotient(t.ring(), parse_poly(o.artinian, t.ring().var()));
            }
        } catch (const ParseError& e) {
            throw InputError(std::string(o.at.empty() ? "--artinian: " : "--at: ") + e.what());
        }
        where = at->to_string();
    }
    auto c = cohomology_dims(t, o.k, o.l, at);
    if (records(o)) {
        ordered_json rec{{"k", o.k}, {"l", o.l}, {"locus", where}, {"h0", c.h0}, {"h1", c.h1}};
        out << rec.dump() << "\n";
    } else {
        out << "window (" << o.k << "," << o.l << ") at " << where << ": h0=" << c.h0 << " h1=" << c.h1 << "\n";
    }
    return exit_ok;
}

int cmd_datum_validate(const Options& o, std::ostream& out)
{
    auto [om, dm] = parse_literal_maps(o.literal);
    auto r = DeRhamDatum::validate(om, dm);
    if (records(o)) {
        ordered_json rec{{"valid", r.ok()}};
        if (r.ok()) {
            rec["datum"] = to_literal(*r.datum);
            rec["classification"] = flags(classify(*r.datum));
        }
        ordered_json vs = ordered_json::array();
        for (const auto& v : r.violations)
            vs.push_back({{"condition", condition_label(v.condition)},
                          {"number", condition_number(v.condition)},
                          {"witness", v.witness},
                          {"message", v.message}});
        rec["violations"] = vs;
        out << rec.dump() << "\n";
        return r.ok() ? exit_ok : exit_failure;
    }
    if (r.ok()) {
        Dimensions dims = dimensions(*r.datum);
        out << "valid: " << to_literal(*r.datum) << "\n";
        out << "classification: " << flags(classify(*r.datum)) << "\n";
        out << "dimensions: sd=" << dims.sd << " htd=" << dims.htd << " drd=" << dims.drd << "\n";
        return exit_ok;
    }
    out << "invalid\n";
    for (const auto& v : r.violations) {
        std::string num = condition_number(v.condition);
        out << "  condition " << (num.empty() ? "" : "(" + num + ") ") << condition_label(v.condition) << ": "
            << v.message << "\n";
    }
    return exit_failure;
}

int cmd_datum(const std::string& op, const Options& o, std::ostream& out)
{
    if (op == "validate")
        return cmd_datum_validate(o, out);
    DeRhamDatum d = parse_literal(o.literal);
    std::vector<DeRhamDatum> result;
    ordered_json rec;
    if (op == "mincovers") {
        auto [i, j] = interval_of(o, d.is_zero() ? std::pair{0, 0} : std::pair{*d.lower(), *d.upper()});
        result = min_covers(d, i, j);
        rec["interval"] = {i, j};
    } else if (op == "truncate") {
        if (o.interval.empty())
            throw InputError("truncate needs --interval I J");
        auto [i, j] = interval_of(o, {0, 0});
        result.push_back(truncate(d, i, j));
    } else if (op == "twist") {
        result.push_back(twist(d, o.by));
    } else {
        DeRhamDatum e = parse_literal(o.other);
        std::optional<std::pair<int, int>> iv;
        if (!o.interval.empty())
            iv = interval_of(o, {0, 0});
        Comparison c = compare(d, e, iv);
        if (records(o)) {
            rec["order"] = order_label(c.order);
            if (c.strictly_below_in_interval)
                rec["strictly_below_in_interval"] = *c.strictly_below_in_interval;
            out << rec.dump() << "\n";
        } else {
            out << order_label(c.order) << "\n";
            if (c.strictly_below_in_interval)
                out << "strictly below in [" << iv->first << "," << iv->second
                    << "]: " << (*c.strictly_below_in_interval ? "yes" : "no") << "\n";
        }
        return exit_ok;
    }
    if (records(o)) {
        ordered_json list = ordered_json::array();
        for (const auto& r : result)
            list.push_back(to_literal(r));
        rec["data"] = list;
        out << rec.dump() << "\n";
    } else {
        for (const auto& r : result)
            out << to_literal(r) << "\n";
    }
    return exit_ok;
}

int cmd_verify(const Options& o, std::ostream& out)
{
    uint64_t seed = effective_seed(o.seed);
    std::vector<std::string> names;
    if (o.suite == "all")
        names = suite_names();
    else
        names.push_back(o.suite);
    bool ok = true;
    for (const auto& name : names) {
        VerificationReport rep;
        try {
            rep = run_suite(name, seed);
        } catch (const std::invalid_argument& e) {
            std::string known;
            for (const auto& n : suite_names())
                known += " " + n;
            throw InputError(std::string(e.what()) + "; known suites:" + known + " all");
        }
        ok = ok && rep.ok();
        if (records(o)) {
            ordered_json ledger = ordered_json::array();
            for (const auto& h : rep.ledger)
                ledger.push_back({{"hypothesis", h.hypothesis},
                                  {"status", h.checked ? "checked" : "assumed"},
                                  {"detail", h.detail}});
            ordered_json rec{{"suite", rep.suite}, {"seed", rep.seed},          {"cases", rep.cases},
                             {"failures", rep.failures}, {"ledger", ledger}, {"ok", rep.ok()}};
            out << rec.dump() << "\n";
            continue;
        }
        out << "suite " << rep.suite << " (seed " << rep.seed << "): " << rep.cases << " cases, "
            << rep.failures.size() << " failures: " << (rep.ok() ? "PASS" : "FAIL") << "\n";
        for (const auto& h : rep.ledger)
            out << "  hypothesis " << (h.checked ? "checked" : "assumed") << ": " << h.hypothesis << " ("
                << h.detail << ")\n";
        for (const auto& f : rep.failures)
            out << "  failure: " << f << "\n";
    }
    return ok ? exit_ok : exit_failure;
}

int cmd_random(const Options& o, std::ostream& out)
{
    DeRhamDatum target = parse_literal(o.datum);
    uint64_t seed = effective_seed(o.seed);
    std::optional<size_t> rank;
    if (o.rank > 0)
        rank = o.rank;
    DifTower t = generate_random_family(target, seed, rank);
    FamilyMeta meta{"random-" + std::to_string(seed), to_literal(target)};
    std::string text = serialize_family_file(t, meta);
    if (!o.output.empty()) {
        std::ofstream f(o.output, std::ios::binary);
        if (!f)
            throw InputError("cannot write '" + o.output + "'");
        f << text;
        if (!records(o))
            out << "wrote " << o.output << "\n";
    }
    if (o.output.empty() || records(o))
        out << text;
    return exit_ok;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Sen operators, de Rham towers and their strata over Q[x]", "period-strata"};
    app.require_subcommand(1);
    app.add_option("--format", o.format, "text or records")->check(CLI::IsMember({"text", "records"}));

    auto* analyze = app.add_subcommand("analyze", "Sen polynomial, weights, generic datum and strata of a family");
    analyze->add_option("file", o.file, "family file")->required();
    analyze->add_option("--interval", o.interval, "stratification interval I J")->expected(2);
    analyze->add_option("--samples", o.samples, "sample budget per cofinite stratum");

    auto* coh = app.add_subcommand("cohomology", "h0 and h1 of a tower window");
    coh->add_option("file", o.file, "family file")->required();
    coh->add_option("--k", o.k, "lower end k")->required();
    coh->add_option("--l", o.l, "upper end l")->required();
    coh->add_option("--at", o.at, "rational point");
    coh->add_option("--artinian", o.artinian, "modulus such as \"(x-1)^2\"");

    auto* datum = app.add_subcommand("datum", "de Rham datum calculus");
    datum->require_subcommand(1);
    auto add_literal = [&](CLI::App* c) { c->add_option("literal", o.literal, "datum literal")->required(); };
    auto* dv = datum->add_subcommand("validate", "check the axioms");
    add_literal(dv);
    auto* dm = datum->add_subcommand("mincovers", "minimal data strictly above, supported in the interval");
    add_literal(dm);
    dm->add_option("--interval", o.interval, "interval I J")->expected(2);
    auto* dt = datum->add_subcommand("truncate", "truncate to an interval");
    add_literal(dt);
    dt->add_option("--interval", o.interval, "interval I J")->expected(2)->required();
    auto* dw = datum->add_subcommand("twist", "twist by n");
    add_literal(dw);
    dw->add_option("--by", o.by, "twist n")->required();
    auto* dc = datum->add_subcommand("compare", "pointwise order of two data");
    add_literal(dc);
    dc->add_option("other", o.other, "second datum literal")->required();
    dc->add_option("--interval", o.interval, "interval I J for the strict relation")->expected(2);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", o.suite, "suite name or all")->required();
    verify->add_option("--seed", o.seed, "seed (PERIOD_STRATA_SEED overrides)");

    auto* random = app.add_subcommand("random", "random family realizing a datum");
    random->add_option("--datum", o.datum, "target datum literal")->required();
    random->add_option("--seed", o.seed, "seed (PERIOD_STRATA_SEED overrides)");
    random->add_option("--rank", o.rank, "rank, defaults to the Sen dimension");
    random->add_option("--output", o.output, "write the family file here");

    for (auto* sub : {analyze, coh, datum, verify, random})
        sub->fallthrough();
    for (auto* sub : {dv, dm, dt, dw, dc})
        sub->fallthrough();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }

    try {
        if (analyze->parsed())
            return cmd_analyze(o, out);
        if (coh->parsed())
            return cmd_cohomology(o, out);
        if (verify->parsed())
            return cmd_verify(o, out);
        if (random->parsed())
            return cmd_random(o, out);
        for (auto* sub : {dv, dm, dt, dw, dc})
            if (sub->parsed())
                return cmd_datum(sub->get_name(), o, out);
    } catch (const Unrealizable& e) {
        err << "error: " << e.what() << "\n";
        return exit_failure;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }
    err << "error: no command\n";
    return exit_input;
}

}  // namespace period_strata::cli

#include "period_strata/cli/family_file.hpp"

#include "period_strata/cli/expr.hpp"
#include "period_strata/parse_error.hpp"

#include <json.hpp>

#include <cctype>
#include <sstream>

namespace period_strata::cli {

using nlohmann::json;

Ring parse_ring_literal(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
            s.remove_suffix(1);
        return s;
    };
    std::string_view s = trim(text);
    if (s == "QQ")
        return Ring::rationals();
    if (s.substr(0, 3) != "QQ[")
        throw InputError("ring literal '" + std::string(text) + "': expected QQ, QQ[x] or QQ[x]/(f)");
    size_t close = s.find(']');
    if (close == std::string_view::npos)
        throw InputError("ring literal '" + std::string(text) + "': missing ']'");
    std::string var(trim(s.substr(3, close - 3)));
    bool ident = !var.empty() && (std::isalpha(static_cast<unsigned char>(var[0])) || var[0] == '_');
    for (char c : var)
        ident = ident && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!ident)
        throw InputError("ring literal '" + std::string(text) + "': bad variable name '" + var + "'");
    std::string_view rest = trim(s.substr(close + 1));
    if (rest.empty())
        return Ring::polynomials(var);
    if (rest.front() != '/')
        throw InputError("ring literal '" + std::string(text) + "': expected '/(' after the variable");
    rest = trim(rest.substr(1));
    if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')')
        throw InputError("ring literal '" + std::string(text) + "': modulus must be parenthesized");
    Poly f;
    try {
        f = parse_poly(rest.substr(1, rest.size() - 2), var);
    } catch (const ParseError& e) {
        throw InputError("ring literal '" + std::string(text) + "': " + e.what());
    }
    if (f.degree() < 1)
        throw InputError("ring literal '" + std::string(text) + "': modulus must have degree >= 1");
    return Ring::quotient(f, var);
}

namespace {

const json& field(const json& doc, const char* key)
{
    auto it = doc.find(key);
    if (it == doc.end())
        throw InputError(std::string("missing key '") + key + "'");
    return *it;
}

size_t positive(const json& v, const char* key)
{
    if (!v.is_number_integer() || v.get<long long>() < 1)
        throw InputError(std::string("'") + key + "' must be a positive integer");
    return static_cast<size_t>(v.get<long long>());
}

Poly entry(const json& v, const Ring& ring, const std::string& path)
{
    std::string text;
    if (v.is_string())
        text = v.get<std::string>();
    else if (v.is_number_integer())
        text = std::to_string(v.get<long long>());
    else
        throw InputError(path + ": entry must be a string or an integer");
    try {
        Poly p = parse_poly(text, ring.kind() == RingKind::rationals ? std::string() : ring.var());
        return ring.reduce(p);
    } catch (const ParseError& e) {
        throw InputError(path + ": " + e.what());
    }
}

}  // namespace

FamilyFile parse_family_file(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw InputError("family file: syntax error at offset " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!doc.is_object())
        throw InputError("family file must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (it.key() != "ring" && it.key() != "rank" && it.key() != "depth" && it.key() != "blocks" &&
            it.key() != "meta")
            throw InputError("unknown key '" + it.key() + "'");

    const json& ring_v = field(doc, "ring");
    if (!ring_v.is_string())
        throw InputError("'ring' must be a string");
    Ring ring = parse_ring_literal(ring_v.get<std::string>());
    size_t rank = positive(field(doc, "rank"), "rank");
    size_t depth = positive(field(doc, "depth"), "depth");
    const json& blocks_v = field(doc, "blocks");
    if (!blocks_v.is_array())
        throw InputError("'blocks' must be a list of matrices");
    if (blocks_v.size() != depth)
        throw InputError("'blocks' has " + std::to_string(blocks_v.size()) + " matrices but depth is " +
                         std::to_string(depth));

    std::vector<Matrix> blocks;
    for (size_t s = 0; s < blocks_v.size(); ++s) {
        const json& b = blocks_v[s];
        std::string bpath = "blocks[" + std::to_string(s) + "]";
        if (!b.is_array() || b.size() != rank)
            throw InputError(bpath + ": expected " + std::to_string(rank) + " rows, got " +
                             (b.is_array() ? std::to_string(b.size()) : std::string("a non-list")));
        Matrix m(ring, rank, rank);
        for (size_t i = 0; i < rank; ++i) {
            const json& row = b[i];
            std::string rpath = bpath + "[" + std::to_string(i) + "]";
            if (!row.is_array() || row.size() != rank)
                throw InputError(bpath + ": block is not " + std::to_string(rank) + "x" + std::to_string(rank) +
                                 " (row " + std::to_string(i) + " has " +
                                 (row.is_array() ? std::to_string(row.size()) : std::string("no")) + " entries)");
            for (size_t j = 0; j < rank; ++j)
                m.set(i, j, entry(row[j], ring, rpath + "[" + std::to_string(j) + "]"));
        }
        blocks.push_back(std::move(m));
    }

    FamilyMeta meta;
    if (auto it = doc.find("meta"); it != doc.end()) {
        if (!it->is_object())
            throw InputError("'meta' must be an object");
        for (auto m = it->begin(); m != it->end(); ++m) {
            if (!m->is_string())
                throw InputError("meta." + m.key() + " must be a string");
            if (m.key() == "name")
                meta.name = m->get<std::string>();
            else if (m.key() == "expected")
                meta.expected = m->get<std::string>();
            else
                throw InputError("unknown meta key '" + m.key() + "'");
        }
    }
    return {DifTower(ring, rank, std::move(blocks)), meta};
}

std::string serialize_family_file(const DifTower& t, const FamilyMeta& meta)
{
    const std::string var = t.ring().var();
    std::ostringstream out;
    out << "{\n";
    out << "  \"ring\": " << json(t.ring().to_string()).dump() << ",\n";
    out << "  \"rank\": " << t.rank() << ",\n";
    out << "  \"depth\": " << t.depth() << ",\n";
    out << "  \"blocks\": [\n";
    for (size_t s = 0; s < t.depth(); ++s) {
        out << "    [\n";
        for (size_t i = 0; i < t.rank(); ++i) {
            out << "      [";
            for (size_t j = 0; j < t.rank(); ++j)
                out << (j ? ", " : "") << json(t.blocks()[s](i, j).to_string(var)).dump();
            out << "]" << (i + 1 < t.rank() ? "," : "") << "\n";
        }
        out << "    ]" << (s + 1 < t.depth() ? "," : "") << "\n";
    }
    out << "  ]";
    if (meta.name || meta.expected) {
        out << ",\n  \"meta\": {";
        bool first = true;
        if (meta.name) {
            out << "\n    \"name\": " << json(*meta.name).dump();
            first = false;
        }
        if (meta.expected)
            out << (first ? "" : ",") << "\n    \"expected\": " << json(*meta.expected).dump();
        out << "\n  }";
    }
    out << "\n}\n";
    return out.str();
}

}  // namespace period_strata::cli

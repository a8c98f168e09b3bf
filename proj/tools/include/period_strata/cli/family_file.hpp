#pragma once

#include "period_strata/family.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace period_strata::cli {

// Malformed input: bad syntax, wrong shapes, unknown keys or values.
// The message names the location (byte offset or JSON path).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FamilyMeta {
    std::optional<std::string> name;
    std::optional<std::string> expected;  // datum literal
};

struct FamilyFile {
    DifTower tower;
    FamilyMeta meta;
};

// "QQ", "QQ[x]" or "QQ[x]/(modulus)"
Ring parse_ring_literal(std::string_view text);

FamilyFile parse_family_file(std::string_view text);
// canonical form: keys in the order ring, rank, depth, blocks, meta
std::string serialize_family_file(const DifTower& t, const FamilyMeta& meta = {});

}  // namespace period_strata::cli

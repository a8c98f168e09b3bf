#pragma once

#include <stdexcept>
#include <string>

namespace period_strata {

// Syntax error with the byte offset into the parsed text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, size_t position)
        : std::runtime_error(what + " at offset " + std::to_string(position)), position_(position) {}

    size_t position() const { return position_; }

private:
    size_t position_;
};

}  // namespace period_strata

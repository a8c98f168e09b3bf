#include "period_strata/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace period_strata {

Rational make_rational(long num, long den)
{
    if (den == 0)
        throw std::domain_error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text)
{
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        return std::nullopt;
    Integer n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0)
        return std::nullopt;
    Rational q(n, d);
    q.canonicalize();
    if (negative)
        q = -q;
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

}  // namespace period_strata

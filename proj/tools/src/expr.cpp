#include "period_strata/cli/expr.hpp"

#include "period_strata/parse_error.hpp"

#include <cctype>

namespace period_strata::cli {

namespace {

class ExprParser {
public:
    ExprParser(std::string_view s, const std::string& var) : s_(s), var_(var) {}

    Poly parse()
    {
        Poly p = expr();
        if (skip() != s_.size())
            throw ParseError("unexpected '" + std::string(1, s_[pos_]) + "'", pos_);
        return p;
    }

private:
    size_t skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        return pos_;
    }

    bool at(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_factor()
    {
        skip();
        if (pos_ >= s_.size())
            return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
               c == '_' || c == '(';
    }

    Poly expr()
    {
        Poly acc = term();
        for (;;) {
            if (at('+')) {
                ++pos_;
                acc += term();
            } else if (at('-')) {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Poly term()
    {
        Poly acc = unary();
        for (;;) {
            if (at('*')) {
                ++pos_;
                acc *= unary();
            } else if (at('/')) {
                size_t where = pos_++;
                Poly d = unary();
                if (!d.is_constant() || d.is_zero())
                    throw ParseError("division by a non-constant or zero", where);
                acc *= Rational(1) / d.coeff(0);
            } else if (starts_factor()) {
                acc *= power();
            } else {
                return acc;
            }
        }
    }

    Poly unary()
    {
        if (at('-')) {
            ++pos_;
            return -unary();
        }
        if (at('+')) {
            ++pos_;
            return unary();
        }
        return power();
    }

    Poly power()
    {
        Poly base = atom();
        if (at('^')) {
            ++pos_;
            skip();
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            if (pos_ == start || pos_ - start > 4)
                throw ParseError("expected a small nonnegative exponent", start);
            return pow(base, static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
        }
        return base;
    }

    Poly atom()
    {
        skip();
        if (pos_ >= s_.size())
            throw ParseError("unexpected end of expression", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!at(')'))
                throw ParseError("expected ')'", pos_);
            ++pos_;
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            return Poly(Rational(Integer(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            if (var_.empty() || name != var_)
                throw ParseError("unknown variable '" + name + "'" + (var_.empty() ? "" : ", expected '" + var_ + "'"),
                                 start);
            return Poly::x();
        }
        throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
    }

    std::string_view s_;
    const std::string& var_;
    size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const std::string& var)
{
    return ExprParser(text, var).parse();
}

}  // namespace period_strata::cli

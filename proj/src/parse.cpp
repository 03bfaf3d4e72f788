#include "lndkit/parse.hpp"

#include "lndkit/errors.hpp"

#include <cctype>

namespace lndkit {

namespace {

class Parser {
public:
    Parser(std::string_view text, const VarTablePtr& vars) : text_(text), vars_(vars) {}

    Poly parse()
    {
        skip_space();
        if (pos_ >= text_.size())
            throw ParseError("empty expression", pos_);
        Poly p = expr();
        skip_space();
        if (pos_ < text_.size())
            throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return p;
    }

private:
    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr()
    {
        Poly acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Poly term()
    {
        Poly acc = unary();
        for (;;) {
            skip_space();
            std::size_t at = pos_;
            if (accept('*')) {
                acc *= unary();
            }
            else if (accept('/')) {
                skip_space();
                at = pos_;
                Poly d = unary();
                if (!d.is_constant())
                    throw ParseError("division by a non-constant", at);
                if (d.is_zero())
                    throw ParseError("division by zero", at);
                acc = acc.scaled(1 / d.constant_term());
            }
            else {
                if (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                                            text_[pos_] == '('))
                    throw ParseError("missing operator (multiplication must be written with '*')", at);
                return acc;
            }
        }
    }

    Poly unary()
    {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return power();
    }

    Poly power()
    {
        Poly base = atom();
        if (accept('^')) {
            skip_space();
            std::size_t at = pos_;
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (start == pos_)
                throw ParseError("expected a nonnegative integer exponent", at);
            std::string digits(text_.substr(start, pos_ - start));
            if (digits.size() > 5 || std::stoul(digits) > 65535)
                throw ParseError("exponent too large", at);
            skip_space();
            if (pos_ < text_.size() && text_[pos_] == '^')
                throw ParseError("chained exponent; use parentheses", pos_);
            return base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    Poly atom()
    {
        skip_space();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of expression", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!accept(')'))
                throw ParseError("expected ')'", pos_);
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            return Poly::constant(vars_, Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string_view name = text_.substr(start, pos_ - start);
            if (!vars_->contains(name))
                throw UnknownVariable(std::string(name));
            return Poly::variable(vars_, name);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    std::string_view text_;
    const VarTablePtr& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const VarTablePtr& vars)
{
    return Parser(text, vars).parse();
}

}  // namespace lndkit

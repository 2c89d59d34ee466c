#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "quivar/errors.hpp"

namespace quivar::detail {

struct Token {
    enum class Kind { number, ident, op, end };
    Kind kind = Kind::end;
    std::string text;
    std::size_t pos = 0;

    bool is_op(char c) const { return kind == Kind::op && text.size() == 1 && text[0] == c; }
};

// Tokenizer shared by the expression grammars. Operators are single
// characters; "::" is returned as one token for matrix literal prefactors.
class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }
    bool accept_op(char c) {
        if (!tok_.is_op(c)) return false;
        advance();
        return true;
    }
    void expect_op(char c) {
        if (!accept_op(c)) fail(std::string("expected '") + c + "'");
    }
    [[noreturn]] void fail(const std::string& msg) const {
        std::string got = tok_.kind == Token::Kind::end ? "end of input" : "'" + tok_.text + "'";
        throw ParseError("syntax error: " + msg + ", got " + got, tok_.pos);
    }
    std::string_view source() const { return src_; }

private:
    void advance() {
        while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
        tok_ = Token{};
        tok_.pos = i_;
        if (i_ >= src_.size()) return;
        char c = src_[i_];
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
            std::size_t j = i_;
            while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
            if (j < src_.size() && src_[j] == '.') {
                ++j;
                while (j < src_.size() && std::isdigit(static_cast<unsigned char>(src_[j]))) ++j;
            }
            tok_.kind = Token::Kind::number;
            tok_.text = std::string(src_.substr(i_, j - i_));
            i_ = j;
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i_;
            while (j < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[j])) || src_[j] == '_')) ++j;
            tok_.kind = Token::Kind::ident;
            tok_.text = std::string(src_.substr(i_, j - i_));
            i_ = j;
            return;
        }
        if (c == ':' && i_ + 1 < src_.size() && src_[i_ + 1] == ':') {
            tok_.kind = Token::Kind::op;
            tok_.text = "::";
            i_ += 2;
            return;
        }
        if (std::string_view("+-*/^(),;=").find(c) == std::string_view::npos)
            throw ParseError(std::string("syntax error: unexpected character '") + c + "'", i_);
        tok_.kind = Token::Kind::op;
        tok_.text = std::string(1, c);
        ++i_;
    }

    std::string_view src_;
    std::size_t i_ = 0;
    Token tok_;
};

// Exact value of an integer or decimal literal.
inline mpq_class literal_value(const std::string& text) {
    auto dot = text.find('.');
    if (dot == std::string::npos) return mpq_class(mpz_class(text, 10));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (digits.empty()) digits = "0";
    mpz_class num(digits, 10);
    mpz_class den = 1;
    for (std::size_t k = dot + 1; k < text.size(); ++k) den *= 10;
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace quivar::detail

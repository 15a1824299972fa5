#include "qeuclid/text.hpp"

#include <cctype>
#include <stdexcept>

namespace qeuclid {

namespace {

class TermLexer {
public:
    explicit TermLexer(std::string_view text) : text_(text) {}

    std::vector<ParsedTerm> parse()
    {
        std::vector<ParsedTerm> out;
        skip_ws();
        if (pos_ == text_.size()) {
            throw std::invalid_argument("empty expression");
        }
        if (peek() == '0' && rest_is_zero()) {
            return out;
        }
        bool negate = false;
        if (peek() == '-') {
            negate = true;
            ++pos_;
        } else if (peek() == '+') {
            ++pos_;
        }
        for (;;) {
            ParsedTerm t = term();
            if (negate) {
                t.coeff = -t.coeff;
            }
            out.push_back(std::move(t));
            skip_ws();
            if (pos_ == text_.size()) {
                return out;
            }
            if (peek() == '+') {
                negate = false;
            } else if (peek() == '-') {
                negate = true;
            } else {
                fail("expected '+' or '-'");
            }
            ++pos_;
        }
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("parse error at " + std::to_string(pos_) + ": " + what + " in '" +
                                    std::string(text_) + "'");
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
            ++pos_;
        }
    }

    bool rest_is_zero() const
    {
        std::size_t p = pos_ + 1;
        while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p])) != 0) {
            ++p;
        }
        return p == text_.size();
    }

    int signed_int()
    {
        skip_ws();
        bool neg = false;
        if (peek() == '-' || peek() == '+') {
            neg = peek() == '-';
            ++pos_;
        }
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected integer");
        }
        int v = std::stoi(std::string(text_.substr(start, pos_ - start)));
        return neg ? -v : v;
    }

    int exponent()
    {
        skip_ws();
        if (peek() != '^') {
            return 1;
        }
        ++pos_;
        skip_ws();
        if (peek() == '(') {
            ++pos_;
            int e = signed_int();
            skip_ws();
            if (peek() != ')') {
                fail("expected ')'");
            }
            ++pos_;
            return e;
        }
        return signed_int();
    }

    // Label directly after a letter name: optional '-' then digits.
    int label()
    {
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected index");
        }
        int v = std::stoi(std::string(text_.substr(start, pos_ - start)));
        return neg ? -v : v;
    }

    bool starts_with(std::string_view word) const { return text_.substr(pos_).starts_with(word); }

    ParsedTerm term()
    {
        ParsedTerm t;
        for (;;) {
            factor(t);
            skip_ws();
            if (peek() != '*') {
                return t;
            }
            ++pos_;
        }
    }

    void factor(ParsedTerm& t)
    {
        skip_ws();
        char c = peek();
        if (c == '(') {
            int depth = 0;
            std::size_t start = pos_;
            do {
                if (pos_ >= text_.size()) {
                    fail("unbalanced parentheses");
                }
                if (text_[pos_] == '(') {
                    ++depth;
                } else if (text_[pos_] == ')') {
                    --depth;
                }
                ++pos_;
            } while (depth > 0);
            Scalar v = Scalar::parse(text_.substr(start, pos_ - start));
            t.coeff *= v.pow(exponent());
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
            std::size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek())) != 0) {
                ++pos_;
            }
            t.coeff *= Scalar::parse(text_.substr(start, pos_ - start)).pow(exponent());
            return;
        }
        if (starts_with("xibar")) {
            pos_ += 5;
            int l = label();
            t.letters.push_back({Gen::xibar, l, exponent()});
            return;
        }
        if (starts_with("xi")) {
            pos_ += 2;
            int l = label();
            t.letters.push_back({Gen::xi, l, exponent()});
            return;
        }
        ++pos_;
        switch (c) {
        case 'x': {
            int l = label();
            t.letters.push_back({Gen::x, l, exponent()});
            return;
        }
        case 'r': {
            int l = label();
            t.letters.push_back({Gen::r, l, exponent()});
            return;
        }
        case 'L':
            t.letters.push_back({Gen::lambda, 0, exponent()});
            return;
        case 'K':
            t.letters.push_back({Gen::kappa, 0, exponent()});
            return;
        case 'q':
        case 's':
        case 'i':
        case 'h':
        case 'k':
            t.coeff *= Scalar::parse(std::string(1, c)).pow(exponent());
            return;
        default:
            --pos_;
            fail(std::string("unexpected character '") + c + "'");
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<ParsedTerm> parse_terms(std::string_view text) { return TermLexer(text).parse(); }

std::string letter_string(const Letter& l)
{
    std::string out;
    switch (l.gen) {
    case Gen::lambda:
        out = "L";
        break;
    case Gen::kappa:
        out = "K";
        break;
    case Gen::r:
        out = "r" + std::to_string(l.label);
        break;
    case Gen::x:
        out = "x" + std::to_string(l.label);
        break;
    case Gen::xi:
        out = "xi" + std::to_string(l.label);
        break;
    case Gen::xibar:
        out = "xibar" + std::to_string(l.label);
        break;
    }
    if (l.exp != 1) {
        out += "^" + std::to_string(l.exp);
    }
    return out;
}

}  // namespace qeuclid

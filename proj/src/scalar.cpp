#include "qeuclid/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <utility>

namespace qeuclid {

// ---------------------------------------------------------------------------
// Gauss

Gauss::Gauss(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im))
{
    re_.canonicalize();
    im_.canonicalize();
}

Gauss Gauss::inverse() const
{
    if (is_zero()) {
        throw DivisionByZero("Gaussian rational division by zero");
    }
    mpq_class norm = re_ * re_ + im_ * im_;
    return Gauss(re_ / norm, -im_ / norm);
}

Gauss& Gauss::operator+=(const Gauss& o)
{
    re_ += o.re_;
    if (sgn(o.im_) != 0) {
        im_ += o.im_;
    }
    return *this;
}

Gauss& Gauss::operator-=(const Gauss& o)
{
    re_ -= o.re_;
    if (sgn(o.im_) != 0) {
        im_ -= o.im_;
    }
    return *this;
}

Gauss& Gauss::operator*=(const Gauss& o)
{
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

Gauss& Gauss::operator/=(const Gauss& o)
{
    if (o.is_zero()) {
        throw DivisionByZero("Gaussian rational division by zero");
    }
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

Gauss Gauss::pow(long e) const
{
    Gauss base = e < 0 ? inverse() : *this;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Gauss out(1);
    while (n != 0) {
        if ((n & 1U) != 0) {
            out *= base;
        }
        n >>= 1U;
        if (n != 0) {
            base *= base;
        }
    }
    return out;
}

std::string Gauss::to_string() const
{
    if (sgn(im_) == 0) {
        return re_.get_str();
    }
    std::string out = re_.get_str();
    out += sgn(im_) < 0 ? "-" : "+";
    mpq_class mag = abs(im_);
    out += mag.get_str();
    out += "*i";
    return out;
}

Gauss Gauss::parse(std::string_view text)
{
    Scalar v = Scalar::parse(text);
    if (!(v.shift() == 0 && v.den().is_one() && v.num().degree() <= 0)) {
        throw std::invalid_argument("not a Gaussian rational: " + std::string(text));
    }
    return v.is_zero() ? Gauss() : v.num().coeffs()[0];
}

std::ostream& operator<<(std::ostream& os, const Gauss& g) { return os << g.to_string(); }

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(Gauss c)
{
    if (!c.is_zero()) {
        coeffs_.push_back(std::move(c));
    }
}

Poly::Poly(std::vector<Gauss> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(Gauss c, std::size_t degree)
{
    Poly p;
    if (!c.is_zero()) {
        p.coeffs_.assign(degree + 1, Gauss());
        p.coeffs_[degree] = std::move(c);
    }
    return p;
}

void Poly::trim()
{
    while (!coeffs_.empty() && coeffs_.back().is_zero()) {
        coeffs_.pop_back();
    }
}

std::size_t Poly::low_order() const
{
    std::size_t k = 0;
    while (k < coeffs_.size() && coeffs_[k].is_zero()) {
        ++k;
    }
    return k;
}

Poly& Poly::operator+=(const Poly& o)
{
    if (o.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size());
    }
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
        coeffs_[k] += o.coeffs_[k];
    }
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    if (o.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size());
    }
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
        coeffs_[k] -= o.coeffs_[k];
    }
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<Gauss> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            if (!b.coeffs_[j].is_zero()) {
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
    }
    return Poly(std::move(out));
}

Poly Poly::scaled(const Gauss& c) const
{
    if (c.is_zero()) {
        return {};
    }
    Poly p = *this;
    for (auto& x : p.coeffs_) {
        x *= c;
    }
    return p;
}

Poly Poly::shifted_down(std::size_t k) const
{
    Poly p;
    if (k < coeffs_.size()) {
        p.coeffs_.assign(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end());
    }
    return p;
}

Poly Poly::shifted_up(std::size_t k) const
{
    if (is_zero()) {
        return {};
    }
    Poly p;
    p.coeffs_.assign(k, Gauss());
    p.coeffs_.insert(p.coeffs_.end(), coeffs_.begin(), coeffs_.end());
    return p;
}

Poly Poly::conj() const
{
    Poly p = *this;
    for (auto& c : p.coeffs_) {
        c = c.conj();
    }
    return p;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b)
{
    if (b.is_zero()) {
        throw DivisionByZero("polynomial division by zero");
    }
    Poly rem = a;
    if (rem.degree() < b.degree()) {
        return {Poly(), rem};
    }
    std::vector<Gauss> quot(static_cast<std::size_t>(rem.degree() - b.degree() + 1));
    Gauss inv_lead = b.lead().inverse();
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        auto shift = static_cast<std::size_t>(rem.degree() - b.degree());
        Gauss factor = rem.lead() * inv_lead;
        for (std::size_t k = 0; k < b.coeffs_.size(); ++k) {
            rem.coeffs_[k + shift] -= factor * b.coeffs_[k];
        }
        quot[shift] = std::move(factor);
        rem.coeffs_.pop_back();
        rem.trim();
    }
    return {Poly(std::move(quot)), rem};
}

Poly Poly::gcd(Poly a, Poly b)
{
    while (!b.is_zero()) {
        Poly r = divmod(a, b).second;
        if (!r.is_zero()) {
            r = r.scaled(r.lead().inverse());  // monic remainders keep coefficients small
        }
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) {
        a = a.scaled(a.lead().inverse());
    }
    return a;
}

Gauss Poly::eval(const Gauss& x) const
{
    Gauss acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= x;
        acc += *it;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(long v) : num_(Gauss(v)), den_(Gauss(1)) {}

Scalar::Scalar(Gauss c) : num_(std::move(c)), den_(Gauss(1)) {}

Scalar Scalar::s_pow(long e)
{
    Scalar out(1);
    out.shift_ = e;
    return out;
}

Scalar Scalar::from_laurent(const Poly& p, long shift)
{
    Scalar out;
    out.num_ = p;
    out.den_ = Poly(Gauss(1));
    out.shift_ = shift;
    out.normalize();
    return out;
}

void Scalar::normalize()
{
    if (num_.is_zero()) {
        shift_ = 0;
        den_ = Poly(Gauss(1));
        return;
    }
    if (std::size_t k = num_.low_order(); k != 0) {
        num_ = num_.shifted_down(k);
        shift_ += static_cast<long>(k);
    }
    if (std::size_t k = den_.low_order(); k != 0) {
        den_ = den_.shifted_down(k);
        shift_ -= static_cast<long>(k);
    }
    if (den_.degree() > 0) {
        Poly g = Poly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Poly::divmod(num_, g).first;
            den_ = Poly::divmod(den_, g).first;
        }
    }
    if (!den_.lead().is_one()) {
        Gauss inv = den_.lead().inverse();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

Scalar Scalar::inverse() const
{
    if (is_zero()) {
        throw DivisionByZero("Scalar division by zero");
    }
    Scalar out;
    out.num_ = den_;
    out.den_ = num_;
    out.shift_ = -shift_;
    out.normalize();
    return out;
}

Scalar Scalar::conj() const
{
    Scalar out;
    out.num_ = num_.conj();
    out.den_ = den_.conj();
    out.shift_ = shift_;
    return out;
}

Scalar Scalar::pow(long e) const
{
    Scalar base = e < 0 ? inverse() : *this;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Scalar out(1);
    while (n != 0) {
        if ((n & 1U) != 0) {
            out *= base;
        }
        n >>= 1U;
        if (n != 0) {
            base *= base;
        }
    }
    return out;
}

Scalar& Scalar::operator+=(const Scalar& o)
{
    if (o.is_zero()) {
        return *this;
    }
    if (is_zero()) {
        return *this = o;
    }
    long base = std::min(shift_, o.shift_);
    Poly a = num_.shifted_up(static_cast<std::size_t>(shift_ - base));
    Poly b = o.num_.shifted_up(static_cast<std::size_t>(o.shift_ - base));
    if (den_ == o.den_) {
        num_ = a + b;
    } else {
        num_ = a * o.den_ + b * den_;
        den_ = den_ * o.den_;
    }
    shift_ = base;
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (is_zero() || o.is_zero()) {
        return *this = Scalar();
    }
    shift_ += o.shift_;
    if (den_.is_one() && o.den_.is_one()) {
        num_ = num_ * o.num_;
        return *this;
    }
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::operator-() const
{
    Scalar out = *this;
    out.num_ = out.num_.scaled(Gauss(-1));
    return out;
}

Gauss Scalar::eval(const Gauss& s0) const
{
    if (is_zero()) {
        return {};
    }
    Gauss d = den_.eval(s0);
    if (d.is_zero() || (s0.is_zero() && shift_ < 0)) {
        throw PoleError("pole at s = " + s0.to_string());
    }
    if (s0.is_zero()) {
        return shift_ > 0 ? Gauss() : num_.eval(s0) / d;
    }
    return num_.eval(s0) * s0.pow(shift_) / d;
}

namespace {

std::string coeff_term(const Gauss& c, long exp, bool first)
{
    std::string out;
    std::string mono;
    if (exp == 1) {
        mono = "s";
    } else if (exp != 0) {
        mono = "s^" + std::to_string(exp);
    }
    if (c.is_real()) {
        mpq_class v = c.re();
        bool neg = sgn(v) < 0;
        if (neg) {
            out += first ? "-" : " - ";
            v = -v;
        } else if (!first) {
            out += " + ";
        }
        if (mono.empty()) {
            out += v.get_str();
        } else if (v == 1) {
            out += mono;
        } else {
            out += v.get_str() + "*" + mono;
        }
        return out;
    }
    if (!first) {
        out += " + ";
    }
    out += "(" + c.to_string() + ")";
    if (!mono.empty()) {
        out += "*" + mono;
    }
    return out;
}

std::string laurent_string(const Poly& p, long shift)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    bool first = true;
    const auto& cs = p.coeffs();
    for (std::size_t k = cs.size(); k-- > 0;) {
        if (cs[k].is_zero()) {
            continue;
        }
        out += coeff_term(cs[k], static_cast<long>(k) + shift, first);
        first = false;
    }
    return out;
}

// Recursive-descent parser for rational expressions over Q(i)(s).
class ScalarParser {
public:
    explicit ScalarParser(std::string_view text) : text_(text) {}

    Scalar parse()
    {
        Scalar v = expr();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input");
        }
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("scalar parse error at " + std::to_string(pos_) + ": " + what + " in '" +
                                    std::string(text_) + "'");
    }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Scalar expr()
    {
        Scalar v = term();
        for (;;) {
            if (accept('+')) {
                v += term();
            } else if (accept('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    Scalar term()
    {
        Scalar v = unary();
        for (;;) {
            if (accept('*')) {
                v *= unary();
            } else if (accept('/')) {
                v /= unary();
            } else {
                return v;
            }
        }
    }

    Scalar unary()
    {
        if (accept('-')) {
            return -unary();
        }
        if (accept('+')) {
            return unary();
        }
        return power();
    }

    long integer()
    {
        skip_ws();
        bool neg = false;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
            neg = text_[pos_] == '-';
            ++pos_;
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected integer exponent");
        }
        long v = std::stol(std::string(text_.substr(start, pos_ - start)));
        return neg ? -v : v;
    }

    Scalar power()
    {
        Scalar base = atom();
        if (accept('^')) {
            if (accept('(')) {
                long e = integer();
                if (!accept(')')) {
                    fail("expected ')'");
                }
                return base.pow(e);
            }
            return base.pow(integer());
        }
        return base;
    }

    Scalar atom()
    {
        skip_ws();
        if (pos_ >= text_.size()) {
            fail("unexpected end of input");
        }
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Scalar v = expr();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) {
                ++pos_;
            }
            mpz_class z(std::string(text_.substr(start, pos_ - start)));
            return Scalar(Gauss(mpq_class(z)));
        }
        ++pos_;
        switch (c) {
        case 's':
            return Scalar::s_pow(1);
        case 'q':
            return Scalar::s_pow(2);
        case 'i':
            return Scalar(Gauss::i());
        case 'h':
            return Scalar::s_pow(1) - Scalar::s_pow(-1);
        case 'k':
            return Scalar::s_pow(2) - Scalar::s_pow(-2);
        default:
            --pos_;
            fail(std::string("unexpected character '") + c + "'");
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string Scalar::to_string() const
{
    return "(" + laurent_string(num_, shift_) + ")/(" + laurent_string(den_, 0) + ")";
}

Scalar Scalar::parse(std::string_view text) { return ScalarParser(text).parse(); }

std::ostream& operator<<(std::ostream& os, const Scalar& a) { return os << a.to_string(); }

}  // namespace qeuclid

#pragma once

// Exact arithmetic in Q(i)(s), where s = q^{1/2}.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qeuclid {

class DivisionByZero : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a numeric evaluation hits a pole of the rational function.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Gaussian rational a + b i with a, b in Q.
class Gauss {
public:
    Gauss() = default;
    Gauss(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    Gauss(mpq_class re, mpq_class im = 0);

    static Gauss i() { return Gauss(0, 1); }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    Gauss conj() const { return Gauss(re_, -im_); }
    Gauss inverse() const;

    Gauss& operator+=(const Gauss& o);
    Gauss& operator-=(const Gauss& o);
    Gauss& operator*=(const Gauss& o);
    Gauss& operator/=(const Gauss& o);

    friend Gauss operator+(Gauss a, const Gauss& b) { return a += b; }
    friend Gauss operator-(Gauss a, const Gauss& b) { return a -= b; }
    friend Gauss operator*(Gauss a, const Gauss& b) { return a *= b; }
    friend Gauss operator/(Gauss a, const Gauss& b) { return a /= b; }
    Gauss operator-() const { return Gauss(-re_, -im_); }

    friend bool operator==(const Gauss& a, const Gauss& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const Gauss& a, const Gauss& b) { return !(a == b); }

    Gauss pow(long e) const;

    /// "a/b", or "a/b+c/d*i" when the imaginary part is nonzero.
    std::string to_string() const;
    static Gauss parse(std::string_view text);

private:
    mpq_class re_;
    mpq_class im_;
};

std::ostream& operator<<(std::ostream& os, const Gauss& g);

/// Dense univariate polynomial in s over Q(i); coeffs_[k] multiplies s^k.
class Poly {
public:
    Poly() = default;
    explicit Poly(Gauss c);
    explicit Poly(std::vector<Gauss> coeffs);

    static Poly monomial(Gauss c, std::size_t degree);

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<Gauss>& coeffs() const { return coeffs_; }
    const Gauss& lead() const { return coeffs_.back(); }
    /// Multiplicity of the root s = 0.
    std::size_t low_order() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Gauss& c) const;
    Poly shifted_down(std::size_t k) const;
    Poly shifted_up(std::size_t k) const;
    Poly conj() const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

    /// Quotient and remainder; divisor must be nonzero.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    /// Monic gcd (zero when both inputs are zero).
    static Poly gcd(Poly a, Poly b);

    Gauss eval(const Gauss& x) const;

private:
    void trim();
    std::vector<Gauss> coeffs_;
};

/// Element of Q(i)(s) stored as s^shift * num / den with num(0) != 0,
/// den(0) != 0, den monic and gcd(num, den) = 1. Zero is num = 0, shift = 0.
class Scalar {
public:
    Scalar() : den_(Gauss(1)) {}
    Scalar(long v);  // NOLINT(google-explicit-constructor)
    Scalar(Gauss c);  // NOLINT(google-explicit-constructor)

    static Scalar s_pow(long e);
    /// q^{e/2} = s^e; named for readability at call sites using half-integer q powers.
    static Scalar q_pow_half(long twice_e) { return s_pow(twice_e); }
    static Scalar from_laurent(const Poly& p, long shift);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return shift_ == 0 && num_.is_one() && den_.is_one(); }
    bool is_laurent() const { return den_.is_one(); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    long shift() const { return shift_; }

    Scalar inverse() const;
    /// Complex conjugation of coefficients (s is treated as real).
    Scalar conj() const;
    Scalar pow(long e) const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    Scalar operator-() const;

    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        return a.shift_ == b.shift_ && a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Exact value at s = s0; throws PoleError if den(s0) = 0 (or s0 = 0 with a negative power).
    Gauss eval(const Gauss& s0) const;

    /// "(num)/(den)" with the numerator written as a Laurent polynomial in s.
    std::string to_string() const;
    /// Parses any rational expression in s, q, i, h, k with + - * / ^ and parentheses.
    static Scalar parse(std::string_view text);

private:
    void normalize();

    long shift_ = 0;
    Poly num_;
    Poly den_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& a);

}  // namespace qeuclid

#pragma once

// Coefficient fields for the engine. Every algebraic routine is a template over
// a field object that supplies the scalar type and powers of s = q^{1/2}:
//   SymbolicField  - exact rational functions in s
//   NumericField   - exact Gaussian rationals obtained by fixing s = s0

#include "qeuclid/scalar.hpp"

#include <map>
#include <string>

namespace qeuclid {

enum class Mode { symbolic, numeric };

std::string to_string(Mode m);

class SymbolicField {
public:
    using scalar_type = Scalar;

    static constexpr Mode mode = Mode::symbolic;

    Scalar s_pow(long e) const { return Scalar::s_pow(e); }
    Scalar q_pow(long e) const { return Scalar::s_pow(2 * e); }
    Scalar from_int(long v) const { return Scalar(v); }
    Scalar from_gauss(const Gauss& g) const { return Scalar(g); }
    Scalar lift(const Scalar& a) const { return a; }
    Scalar conj(const Scalar& a) const { return a.conj(); }
    bool real_q() const { return true; }
    std::string describe() const { return "symbolic"; }
};

class NumericField {
public:
    using scalar_type = Gauss;

    static constexpr Mode mode = Mode::numeric;

    explicit NumericField(Gauss s0);

    const Gauss& point() const { return s0_; }

    Gauss s_pow(long e) const;
    Gauss q_pow(long e) const { return s_pow(2 * e); }
    Gauss from_int(long v) const { return Gauss(v); }
    Gauss from_gauss(const Gauss& g) const { return g; }
    /// Evaluates a symbolic scalar at the sample point; throws PoleError on a pole.
    Gauss lift(const Scalar& a) const { return a.eval(s0_); }
    Gauss conj(const Gauss& a) const { return a.conj(); }
    /// True when s0 is real, which is what the star structure needs.
    bool real_q() const { return s0_.is_real(); }
    std::string describe() const { return "numeric(s=" + s0_.to_string() + ")"; }

private:
    Gauss s0_;
    Gauss s_inv_;
};

inline bool is_zero(const Scalar& a) { return a.is_zero(); }
inline bool is_zero(const Gauss& a) { return a.is_zero(); }
inline std::string scalar_string(const Scalar& a) { return a.to_string(); }
inline std::string scalar_string(const Gauss& a) { return a.to_string(); }

}  // namespace qeuclid

#include "qeuclid/field.hpp"

#include <stdexcept>

namespace qeuclid {

std::string to_string(Mode m) { return m == Mode::symbolic ? "symbolic" : "numeric"; }

NumericField::NumericField(Gauss s0) : s0_(std::move(s0))
{
    if (s0_.is_zero()) {
        throw PoleError("s = 0 is not an admissible sample point");
    }
    s_inv_ = s0_.inverse();
}

Gauss NumericField::s_pow(long e) const { return e >= 0 ? s0_.pow(e) : s_inv_.pow(-e); }

}  // namespace qeuclid

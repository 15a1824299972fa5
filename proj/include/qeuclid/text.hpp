#pragma once

// Tokenizer for the textual element/form syntax, e.g.
//   "(q - 1)*L^-2*r1^-1*x-1*xi1 - 2*x0^2"

#include "qeuclid/scalar.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qeuclid {

enum class Gen { lambda, kappa, r, x, xi, xibar };

struct Letter {
    Gen gen;
    int label = 0;  // r index or coordinate label; unused for lambda and kappa
    int exp = 1;

    friend bool operator==(const Letter&, const Letter&) = default;
};

struct ParsedTerm {
    Scalar coeff{1};
    std::vector<Letter> letters;
};

/// Splits text into signed products of scalar factors and generator letters.
std::vector<ParsedTerm> parse_terms(std::string_view text);

std::string letter_string(const Letter& l);

}  // namespace qeuclid

#pragma once

// JSON export of the constructed objects, and the matching import used for round trips.

#include "qeuclid/frame.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qeuclid {

/// rhat, metric, projectors, lambda, theta, L.
const std::vector<std::string>& export_kinds();

/// Symbolic export for one dimension. Element-valued entries use the text syntax of
/// Algebra::to_string. Throws std::invalid_argument for an unknown kind.
std::string export_json(int N, const std::string& what, const std::vector<CalculusKind>& calculi,
                        const GammaChoice& gamma = {});

/// Rebuilds every exported object from its text and compares it with a fresh build;
/// returns the first mismatch.
std::optional<std::string> check_roundtrip(const std::string& json, const GammaChoice& gamma = {});

}  // namespace qeuclid

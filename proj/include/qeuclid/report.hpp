#pragma once

// Identity suite runner and JSON reports.

#include "qeuclid/frame.hpp"
#include "qeuclid/geometry.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qeuclid {

inline constexpr const char* engine_version = "qeuclid 1.0.0";
inline constexpr const char* rhat_convention = "FRT; rho_i < 0 for i > 0; RLL as R L2 L1 = L2 L1 R";

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::vector<int> Ns{3};
    std::vector<CalculusKind> calculi{CalculusKind::unbarred, CalculusKind::barred};
    Mode mode = Mode::symbolic;
    int samples = 3;
    std::uint64_t seed = 1;
    /// Raw --gamma text; parsed with parse_gamma_choice.
    std::string gamma;
    /// Identity names or name prefixes; empty runs everything.
    std::vector<std::string> only;
    bool negative_controls = false;
    bool force = false;
    unsigned threads = 0;  // 0: QEUCLID_THREADS or hardware concurrency
};

/// "gamma0=2*default,gammabar1=i*q^-1,glued". Any explicit override makes the choice
/// non-strict so that a broken constraint is reported rather than thrown.
GammaChoice parse_gamma_choice(const std::string& text);

/// Throws ConfigError naming the offending field.
void validate(const RunConfig& cfg);

/// Sample points s0 = q0^{1/2} for numeric mode, reproducible from the seed.
std::vector<Gauss> sample_points(int count, std::uint64_t seed);

struct Record {
    std::string identity;
    int N = 0;
    std::string calculus;  // "unbarred", "barred", "both" or "-"
    std::string mode;      // "symbolic" or "numeric(s=...)"
    bool pass = false;
    std::optional<std::string> witness;
    std::optional<std::string> value;
    bool negative_control = false;
};

struct Report {
    RunConfig config;
    std::vector<Record> records;

    std::size_t failed() const;
    /// Every non-negative-control identity passes.
    bool green() const;
    std::string to_json() const;
};

Report run_suite(const RunConfig& cfg);

/// Every identity name the suite can emit.
const std::vector<std::string>& identity_names();

unsigned pool_size(unsigned requested);

}  // namespace qeuclid

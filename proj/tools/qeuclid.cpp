#include "qeuclid/export.hpp"
#include "qeuclid/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace qeuclid;

namespace {

std::vector<CalculusKind> calculi_from(const std::string& s)
{
    if (s == "unbarred") {
        return {CalculusKind::unbarred};
    }
    if (s == "barred") {
        return {CalculusKind::barred};
    }
    if (s == "both") {
        return {CalculusKind::unbarred, CalculusKind::barred};
    }
    throw ConfigError("--calculus: expected unbarred, barred or both, got '" + s + "'");
}

Mode mode_from(const std::string& s)
{
    if (s == "symbolic") {
        return Mode::symbolic;
    }
    if (s == "numeric") {
        return Mode::numeric;
    }
    throw ConfigError("--mode: expected symbolic or numeric, got '" + s + "'");
}

void emit(const std::string& text, const std::string& out)
{
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open '" + out + "' for writing");
    }
    f << text;
    if (!f) {
        throw std::runtime_error("write to '" + out + "' failed");
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Verifier for differential geometry on quantum Euclidean spaces"};
    app.require_subcommand(1);

    std::vector<int> Ns{3};
    std::string calculus = "both";
    std::string mode = "symbolic";
    int samples = 3;
    std::uint64_t seed = 1;
    std::string gamma;
    std::vector<std::string> only;
    std::string out;
    bool force = false;
    bool negative = false;
    std::string what = "all";
    bool roundtrip = false;

    auto* verify = app.add_subcommand("verify", "run the identity suite");
    auto* exp = app.add_subcommand("export", "write constructed objects as JSON");
    for (auto* sc : {verify, exp}) {
        sc->add_option("--N", Ns, "dimensions")->delimiter(',')->expected(1, -1);
        sc->add_option("--calculus", calculus, "unbarred, barred or both");
        sc->add_option("--gamma", gamma, "gamma overrides, e.g. gamma0=2*default or glued");
        sc->add_option("--out", out, "output file (default stdout)");
    }
    verify->add_option("--mode", mode, "symbolic or numeric");
    verify->add_option("--samples", samples, "numeric sample points");
    verify->add_option("--seed", seed, "numeric sample seed");
    verify->add_option("--only", only, "identity names or prefixes")->delimiter(',');
    verify->add_flag("--force", force, "allow symbolic N > 5");
    verify->add_flag("--negative-controls", negative, "also run the negative controls");
    exp->add_option("--what", what, "rhat, metric, projectors, lambda, theta, L or all");
    exp->add_flag("--check", roundtrip, "re-import the export and compare");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) {
            RunConfig cfg;
            cfg.Ns = Ns;
            cfg.calculi = calculi_from(calculus);
            cfg.mode = mode_from(mode);
            cfg.samples = samples;
            cfg.seed = seed;
            cfg.gamma = gamma;
            cfg.only = only;
            cfg.force = force;
            cfg.negative_controls = negative;
            auto rep = run_suite(cfg);
            emit(rep.to_json(), out);
            for (const auto& r : rep.records) {
                if (!r.pass && !r.negative_control) {
                    std::cerr << "FAIL " << r.identity << " N=" << r.N << " " << r.calculus << " " << r.mode;
                    if (r.witness) {
                        std::cerr << ": " << *r.witness;
                    }
                    std::cerr << "\n";
                }
            }
            std::cerr << rep.records.size() - rep.failed() << "/" << rep.records.size() << " records pass, "
                      << (rep.green() ? "green" : "not green") << "\n";
            return rep.green() ? 0 : 1;
        }

        auto calc = calculi_from(calculus);
        auto gc = parse_gamma_choice(gamma);
        std::vector<std::string> kinds;
        if (what == "all") {
            kinds = export_kinds();
        } else if (std::find(export_kinds().begin(), export_kinds().end(), what) != export_kinds().end()) {
            kinds = {what};
        } else {
            throw ConfigError("--what: unknown object '" + what + "'");
        }
        for (int N : Ns) {
            if (N < 3) {
                throw ConfigError("--N: dimension " + std::to_string(N) + " is below 3");
            }
        }
        std::string text;
        bool bad = false;
        for (int N : Ns) {
            for (const auto& k : kinds) {
                auto j = export_json(N, k, calc, gc);
                if (roundtrip) {
                    if (auto w = check_roundtrip(j, gc)) {
                        std::cerr << "round trip N=" << N << " " << k << ": " << *w << "\n";
                        bad = true;
                    }
                }
                text += j;
            }
        }
        emit(text, out);
        return bad ? 1 : 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const GammaError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#include "qeuclid/report.hpp"

#include "qeuclid/constants.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <memory>
#include <random>
#include <thread>

namespace qeuclid {

namespace {

using Check = std::function<std::optional<std::string>()>;

template <class F>
struct World {
    IndexData idx;
    F f;
    BraidTensor<F> rhat;
    Projectors<F> P;
    BraidTensor<F> rinv;
    std::unique_ptr<Algebra<F>> A;
    std::unique_ptr<Calculus<F>> un;
    std::unique_ptr<Calculus<F>> bar;

    World(int N, const F& field)
        : idx(N), f(field), rhat(build_rhat(idx, f)), P(spectral_projectors(rhat, idx, f)),
          rinv(rhat_inverse(P, idx, f))
    {
        A = std::make_unique<Algebra<F>>(idx, f, P.anti);
        un = std::make_unique<Calculus<F>>(*A, rhat, P, CalculusKind::unbarred);
        bar = std::make_unique<Calculus<F>>(*A, rhat, P, CalculusKind::barred);
    }

    const Calculus<F>& calc(CalculusKind k) const { return k == CalculusKind::unbarred ? *un : *bar; }
};

std::string witness_string(const TensorWitness& w)
{
    std::string out = w.detail + " at (";
    for (std::size_t i = 0; i < w.component.size(); ++i) {
        out += (i ? "," : "") + std::to_string(w.component[i]);
    }
    return out + ")";
}

std::optional<std::string> tensor_check(const std::optional<TensorWitness>& w)
{
    if (!w) {
        return std::nullopt;
    }
    return witness_string(*w);
}

// Emits records for one (N, field) world and one group of identities.
template <class F>
class Runner {
public:
    Runner(const RunConfig& cfg, const World<F>& W, std::string mode, std::vector<Record>& out)
        : cfg_(cfg), W_(W), mode_(std::move(mode)), out_(out)
    {
    }

    bool wanted(const std::string& name) const
    {
        if (cfg_.only.empty()) {
            return true;
        }
        return std::any_of(cfg_.only.begin(), cfg_.only.end(),
                           [&](const std::string& p) { return name.compare(0, p.size(), p) == 0; });
    }

    void record(const std::string& name, const std::string& calc, const Check& check, bool negative = false,
                std::optional<std::string> value = std::nullopt)
    {
        if (!wanted(name)) {
            return;
        }
        Record r;
        r.identity = name;
        r.N = W_.idx.N();
        r.calculus = calc;
        r.mode = mode_;
        r.negative_control = negative;
        r.value = std::move(value);
        try {
            r.witness = check();
        } catch (const std::exception& e) {
            r.witness = std::string("exception: ") + e.what();
        }
        r.pass = !r.witness.has_value();
        out_.push_back(std::move(r));
    }

    void shared();
    void calculus(CalculusKind kind);

private:
    LambdaFamily<F> lambda(CalculusKind kind, const GammaChoice& gc) const
    {
        return build_lambda(*W_.A, kind, resolve_gammas(W_.idx, kind, gc));
    }

    const RunConfig& cfg_;
    const World<F>& W_;
    std::string mode_;
    std::vector<Record>& out_;
};

template <class F>
void Runner<F>::shared()
{
    const auto& W = W_;
    const auto& idx = W.idx;
    const auto& f = W.f;
    const auto& A = *W.A;
    record("rhat-braid", "-", [&] { return tensor_check(verify_braid(W.rhat, idx)); });
    record("rhat-characteristic", "-", [&] { return tensor_check(verify_characteristic(W.rhat, idx, f)); });
    {
        std::size_t N = static_cast<std::size_t>(idx.N());
        std::size_t rs = 0, ra = 0, rt = 0;
        record("projector-ranks", "-", [&]() -> std::optional<std::string> {
            rs = rank(W.P.sym, idx, f);
            ra = rank(W.P.anti, idx, f);
            rt = rank(W.P.trace, idx, f);
            if (rs == N * (N + 1) / 2 - 1 && ra == N * (N - 1) / 2 && rt == 1) {
                return std::nullopt;
            }
            return "ranks " + std::to_string(rs) + "," + std::to_string(ra) + "," + std::to_string(rt);
        });
        if (!out_.empty() && out_.back().identity == "projector-ranks") {
            out_.back().value = std::to_string(rs) + "," + std::to_string(ra) + "," + std::to_string(rt);
        }
    }
    record("x-confluence", "-", [&]() -> std::optional<std::string> {
        auto w = A.check_confluence();
        if (!w) {
            return std::nullopt;
        }
        return "x" + std::to_string(w->i) + " x" + std::to_string(w->j) + " x" + std::to_string(w->k) + ": " +
               w->lhs + " vs " + w->rhs;
    });
    record("radius-x-exchange", "-", [&]() -> std::optional<std::string> {
        auto w = A.check_radius_exchange();
        if (!w) {
            return std::nullopt;
        }
        return "r" + std::to_string((*w)[0]) + "^2 x" + std::to_string((*w)[1]);
    });
    if (f.real_q()) {
        record("star-relations", "both", [&]() -> std::optional<std::string> {
            const auto& U = *W.un;
            const auto& B = *W.bar;
            const auto one = f.from_int(1);
            for (int i : idx.labels()) {
                for (int j : idx.labels()) {
                    std::vector<Letter> lhs{{Gen::x, i, 1}, {Gen::xi, j, 1}};
                    auto image = conjugate_word(lhs, one, B);
                    for (const auto& [kl, c] : U.cross().row(i, j)) {
                        std::vector<Letter> w{{Gen::xi, kl[0], 1}, {Gen::x, kl[1], 1}};
                        image -= conjugate_word(w, c, B);
                    }
                    if (!B.is_zero(image)) {
                        return "star of x" + std::to_string(i) + " xi" + std::to_string(j) + " relation = " +
                               B.to_string(image);
                    }
                    // and back
                    std::vector<Letter> blhs{{Gen::x, i, 1}, {Gen::xibar, j, 1}};
                    auto back = conjugate_word(blhs, one, U);
                    for (const auto& [kl, c] : B.cross().row(i, j)) {
                        std::vector<Letter> w{{Gen::xibar, kl[0], 1}, {Gen::x, kl[1], 1}};
                        back -= conjugate_word(w, c, U);
                    }
                    if (!U.is_zero(back)) {
                        return "star of x" + std::to_string(i) + " xibar" + std::to_string(j) + " relation = " +
                               U.to_string(back);
                    }
                }
            }
            return std::nullopt;
        });
    }

    if (idx.odd()) {
        GammaChoice glued;
        glued.glued = true;
        auto lm = lambda(CalculusKind::unbarred, glued);
        auto lp = lambda(CalculusKind::barred, glued);
        auto Lm = build_L(A, lm);
        auto Lp = build_L(A, lp);
        record("glued-gamma", "both", [&]() -> std::optional<std::string> {
            if (auto w = gamma_violation(idx, CalculusKind::unbarred, true, lm.gamma)) {
                return w;
            }
            return gamma_violation(idx, CalculusKind::barred, true, lp.gamma, &lm.gamma);
        });
        record("glued-RLL", "both", [&]() -> std::optional<std::string> {
            if (auto w = check_RLL(A, W.rhat, Lm)) {
                return "L-: " + *w;
            }
            if (auto w = check_RLL(A, W.rhat, Lp)) {
                return "L+: " + *w;
            }
            return std::nullopt;
        });
        record("glued-gLL", "both", [&]() -> std::optional<std::string> {
            for (const auto* L : {&Lm, &Lp}) {
                auto g = check_gLL(A, *L);
                if (!g.c || !g.c_prime) {
                    return (L == &Lm ? "L-: " : "L+: ") + g.witness;
                }
            }
            return std::nullopt;
        });
        std::optional<std::string> variant;
        record("glued-mixed", "both", [&]() -> std::optional<std::string> {
            variant = check_mixed(A, W.rhat, W.rinv, Lp, Lm);
            if (variant) {
                return std::nullopt;
            }
            return std::string("no ordering of R L+ L- = L- L+ R holds");
        });
        if (variant && !out_.empty() && out_.back().identity == "glued-mixed") {
            out_.back().value = *variant;
        }
    }

    if (!cfg_.negative_controls) {
        return;
    }
    if (!idx.odd()) {
        record(
            "nc-mixed-even", "both",
            [&]() -> std::optional<std::string> {
                auto Lm = build_L(A, lambda(CalculusKind::unbarred, {}));
                auto Lp = build_L(A, lambda(CalculusKind::barred, {}));
                if (auto v = check_mixed(A, W.rhat, W.rinv, Lp, Lm)) {
                    return std::nullopt;
                }
                return std::string("no ordering of R L+ L- = L- L+ R holds for the even-N halves");
            },
            true);
    }
    record(
        "nc-rhat-entry", "-",
        [&]() -> std::optional<std::string> {
            auto bad = W.rhat;
            int n = idx.n();
            bad.set(n, -n, -n, n, W.rhat.at(n, -n, -n, n) * f.from_int(2));
            if (auto w = verify_braid(bad, idx)) {
                return witness_string(*w);
            }
            if (auto w = verify_characteristic(bad, idx, f)) {
                return witness_string(*w);
            }
            return std::nullopt;
        },
        true, "R^{n,-n}_{-n,n} x 2");
}

template <class F>
void Runner<F>::calculus(CalculusKind kind)
{
    const auto& W = W_;
    const auto& idx = W.idx;
    const auto& f = W.f;
    const auto& A = *W.A;
    const auto& C = W.calc(kind);
    const std::string tag = to_string(kind);
    const bool un = kind == CalculusKind::unbarred;

    record("d-squared", tag, [&]() -> std::optional<std::string> {
        // x-monomials of degree <= 3 in normal order, with and without Lambda
        std::vector<Element<F>> probes{A.lambda()};
        std::vector<Element<F>> layer{A.one()};
        for (int deg = 1; deg <= 3; ++deg) {
            std::vector<Element<F>> next;
            for (std::size_t p = 0; p < idx.size(); ++p) {
                for (const auto& e : layer) {
                    next.push_back(A.mul(e, A.x(idx.label(p))));
                }
            }
            layer = next;
            probes.insert(probes.end(), layer.begin(), layer.end());
        }
        probes.push_back(A.mul(A.lambda(2), A.mul(A.x(idx.n()), A.x(-idx.n()))));
        for (const auto& p : probes) {
            auto dd = C.d(C.d(p));
            if (!C.is_zero(dd)) {
                return "d d(" + A.to_string(p) + ") = " + C.to_string(dd);
            }
        }
        return std::nullopt;
    });
    record("d-relations", tag, [&]() -> std::optional<std::string> {
        for (int i : idx.labels()) {
            for (int j : idx.labels()) {
                FormElement<F> rel(1);
                for (const auto& [kl, c] : W.P.anti.row(i, j)) {
                    rel += (C.mul(C.xi(kl[0]), A.x(kl[1])) + C.mul(A.x(kl[0]), C.xi(kl[1]))).scaled(c);
                }
                if (!C.is_zero(rel)) {
                    return "d(P_a x x) component (" + std::to_string(i) + "," + std::to_string(j) +
                           ") = " + C.to_string(rel);
                }
            }
        }
        return std::nullopt;
    });
    record("wedge-relations", tag, [&]() -> std::optional<std::string> {
        for (int i : idx.labels()) {
            for (int j : idx.labels()) {
                FormElement<F> sym(2), tr(2);
                for (const auto& [kl, c] : W.P.sym.row(i, j)) {
                    sym += C.wedge(A.constant(c), kl[0], kl[1]);
                }
                for (const auto& [kl, c] : W.P.trace.row(i, j)) {
                    tr += C.wedge(A.constant(c), kl[0], kl[1]);
                }
                if (!C.is_zero(sym) || !C.is_zero(tr)) {
                    return "P_s / P_t xi xi component (" + std::to_string(i) + "," + std::to_string(j) + ")";
                }
            }
        }
        return std::nullopt;
    });
    std::optional<std::string> inner;
    record("radius-xi-exchange", tag, [&]() -> std::optional<std::string> {
        // xi^j r^2 = q^{-+2} r^2 xi^j for the full radius
        auto r2 = A.radius_sq(idx.n());
        auto factor = f.q_pow(un ? -2 : 2);
        for (int j : idx.labels()) {
            auto diff = C.mul(C.xi(j), r2) - C.mul(r2, C.xi(j)).scaled(factor);
            if (!C.is_zero(diff)) {
                return "xi" + std::to_string(j) + " r^2 - q^{-+2} r^2 xi" + std::to_string(j) + " = " +
                       C.to_string(diff);
            }
        }
        if (auto w = C.check_radius_exchange()) {
            inner = "r" + std::to_string(w->i) + " has no exchange with xi" + std::to_string(w->j);
        }
        return std::nullopt;
    });
    if (inner && !out_.empty() && out_.back().identity == "radius-xi-exchange") {
        out_.back().value = *inner;
    }

    // frame
    GammaChoice gc = parse_gamma_choice(cfg_.gamma);
    gc.glued = gc.glued && idx.odd();
    auto lam = lambda(kind, gc);
    auto fr = build_frame(C, lam);
    record("gamma-constraints", tag, [&]() -> std::optional<std::string> {
        if (gc.glued && !un) {
            auto partner = resolve_gammas(idx, CalculusKind::unbarred, gc);
            return gamma_violation(idx, kind, true, lam.gamma, &partner);
        }
        return gamma_violation(idx, kind, gc.glued, lam.gamma);
    });
    record("frame-commutation", tag, [&] { return check_frame_commutation(C, fr); });
    if (A.has_kappa()) {
        record("frame-commutation-K", tag, [&] { return check_frame_commutation(C, fr, FrameTarget::kappa); });
    }
    record("frame-duality", tag, [&] { return check_frame_duality(C, lam, fr); });
    record("frame-basis", tag, [&] { return check_frame_basis(C, lam, fr); });
    record("lambda-relations", tag, [&] { return check_lambda_relations(A, W.P, lam); });
    record("theta-wedge", tag, [&] { return check_theta_wedge(C, W.P, fr); });
    auto theta = build_dirac(C, lam, fr);
    record("dirac-closed-form", tag, [&]() -> std::optional<std::string> {
        auto cf = dirac_closed_form(C);
        if (C.is_zero(theta - cf)) {
            return std::nullopt;
        }
        return "-lambda_a theta^a = " + C.to_string(theta) + ", closed form " + C.to_string(cf);
    });
    record("dirac-df", tag, [&] { return check_dirac_df(C, theta); });

    auto L = build_L(A, lam);
    {
        std::string pattern;
        for (const auto& v : vanishing_entries(A, L)) {
            pattern += (pattern.empty() ? "" : " ") + std::string("(") + std::to_string(v[0]) + "," +
                       std::to_string(v[1]) + ")";
        }
        record("L-vanishing", tag, [] { return std::optional<std::string>(); }, false,
               pattern.empty() ? "none" : pattern);
    }
    record("RLL", tag, [&] { return check_RLL(A, W.rhat, L); });
    std::optional<std::string> gvalue;
    record("gLL", tag, [&]() -> std::optional<std::string> {
        auto g = check_gLL(A, L);
        if (g.c && g.c_prime) {
            gvalue = "c=" + scalar_string(*g.c) + " c'=" + scalar_string(*g.c_prime);
            return std::nullopt;
        }
        return g.witness;
    });
    if (gvalue && !out_.empty() && out_.back().identity == "gLL") {
        out_.back().value = gvalue;
    }

    // geometry
    record("coordinate-metric", tag, [&] { return check_coordinate_metric(C, lam); });
    for (auto v : {SigmaVariant::q_rhat, SigmaVariant::q_rhat_inverse}) {
        const auto S = build_sigma(idx, f, W.rhat, W.rinv, v).S;
        const std::string sfx = "[" + to_string(v) + "]";
        record("torsion-bilinearity" + sfx, tag, [&] { return check_torsion_bilinearity(S, W.P, idx, f); });
        record("sigma-braid" + sfx, tag, [&] { return tensor_check(verify_braid(S, idx)); });
        std::optional<std::string> factor;
        record("metric-compatibility" + sfx, tag, [&]() -> std::optional<std::string> {
            auto c = metric_compatibility(S, A.metric(), idx);
            if (!c.factor) {
                return c.witness;
            }
            factor = scalar_string(*c.factor) + "; exact placement " +
                     (c.factor_swapped ? scalar_string(*c.factor_swapped) : std::string("not proportional"));
            auto want = f.q_pow(v == SigmaVariant::q_rhat ? 2 : -2);
            if (!is_zero(*c.factor - want)) {
                return "factor " + scalar_string(*c.factor) + ", expected " + scalar_string(want);
            }
            if (is_zero(*c.factor - f.from_int(1))) {
                return std::string("factor is 1");
            }
            return std::nullopt;
        });
        if (factor && !out_.empty() && out_.back().identity == "metric-compatibility" + sfx) {
            out_.back().value = factor;
        }
        record("torsion" + sfx, tag, [&] { return check_torsion(C, lam, fr, S); });
        record("right-leibniz" + sfx, tag, [&] { return check_right_leibniz(A, lam, S); });
        record("curvature" + sfx, tag, [&] { return check_curvature(A, W.P, lam, S); });
        record("coordinate-sigma" + sfx, tag, [&] { return check_coordinate_sigma(A, lam, S); });
    }

    if (!cfg_.negative_controls) {
        return;
    }
    record(
        "nc-gamma", tag,
        [&]() -> std::optional<std::string> {
            GammaChoice bad;
            bad.strict = false;
            int a = idx.odd() ? 0 : 1;
            (un ? bad.scale : bad.bar_scale)[a] = Scalar(2);
            auto bl = lambda(kind, bad);
            auto bf = build_frame(C, bl);
            if (auto w = check_frame_duality(C, bl, bf)) {
                return w;
            }
            return check_dirac_df(C, build_dirac(C, bl, bf));
        },
        true, idx.odd() ? "gamma0 x 2" : "gamma1 x 2");
    record(
        "nc-sigma-scaling", tag,
        [&]() -> std::optional<std::string> {
            auto S = W.rhat.scaled(f.q_pow(2));
            if (auto w = check_torsion_bilinearity(S, W.P, idx, f)) {
                return w;
            }
            return check_torsion(C, lam, fr, S);
        },
        true, "S = q^2 R");
    record(
        "nc-sigma-wrong", tag, [&] { return check_curvature(A, W.P, lam, W.rhat); }, true, "S = R");
}

struct Unit {
    int N;
    std::optional<Gauss> point;
    int group;  // 0 shared, 1 unbarred, 2 barred
};

template <class F>
std::vector<Record> run_unit(const RunConfig& cfg, const F& field, const Unit& u)
{
    std::vector<Record> out;
    std::string mode = F::mode == Mode::symbolic ? "symbolic" : field.describe();
    try {
        World<F> W(u.N, field);
        Runner<F> R(cfg, W, mode, out);
        if (u.group == 0) {
            R.shared();
        } else {
            R.calculus(u.group == 1 ? CalculusKind::unbarred : CalculusKind::barred);
        }
    } catch (const std::exception& e) {
        Record r;
        r.identity = "setup";
        r.N = u.N;
        r.calculus = u.group == 0 ? "-" : (u.group == 1 ? "unbarred" : "barred");
        r.mode = mode;
        r.witness = std::string("exception: ") + e.what();
        out.push_back(r);
    }
    return out;
}

}  // namespace

GammaChoice parse_gamma_choice(const std::string& text)
{
    GammaChoice gc;
    std::size_t pos = 0;
    while (pos <= text.size() && !text.empty()) {
        auto comma = text.find(',', pos);
        std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        pos = comma == std::string::npos ? text.size() + 1 : comma + 1;
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (item.empty()) {
            continue;
        }
        if (item == "glued") {
            gc.glued = true;
            continue;
        }
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("--gamma: expected name=value in '" + item + "'");
        }
        std::string name = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        bool barred = name.rfind("gammabar", 0) == 0;
        std::string num = name.substr(barred ? 8 : (name.rfind("gamma", 0) == 0 ? 5 : name.size()));
        if (num.empty() || name.size() == num.size()) {
            throw ConfigError("--gamma: unknown constant '" + name + "'");
        }
        int label = 0;
        try {
            std::size_t used = 0;
            label = std::stoi(num, &used);
            if (used != num.size()) {
                throw std::invalid_argument(num);
            }
        } catch (const std::exception&) {
            throw ConfigError("--gamma: bad label in '" + name + "'");
        }
        const std::string suffix = "*default";
        bool scale = val.size() >= suffix.size() && val.compare(val.size() - suffix.size(), suffix.size(), suffix) == 0;
        if (scale) {
            val.resize(val.size() - suffix.size());
        }
        Scalar v;
        try {
            v = val == "default" ? Scalar(1) : Scalar::parse(val);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("--gamma: ") + e.what());
        }
        if (val == "default") {
            scale = true;
        }
        auto& target = scale ? (barred ? gc.bar_scale : gc.scale) : (barred ? gc.bar_value : gc.value);
        target[label] = v;
        gc.strict = false;
    }
    return gc;
}

void validate(const RunConfig& cfg)
{
    if (cfg.Ns.empty()) {
        throw ConfigError("--N: no dimension given");
    }
    for (int N : cfg.Ns) {
        if (N < 3) {
            throw ConfigError("--N: dimension " + std::to_string(N) + " is below 3");
        }
        if (cfg.mode == Mode::symbolic && N > 5 && !cfg.force) {
            throw ConfigError("--N: symbolic mode at N = " + std::to_string(N) +
                              " exceeds the time budget; use --mode numeric or --force");
        }
    }
    if (cfg.calculi.empty()) {
        throw ConfigError("--calculus: nothing selected");
    }
    if (cfg.mode == Mode::numeric && cfg.samples < 1) {
        throw ConfigError("--samples: numeric mode needs at least one sample");
    }
    for (const auto& o : cfg.only) {
        const auto& names = identity_names();
        bool hit = std::any_of(names.begin(), names.end(),
                               [&](const std::string& n) { return n.compare(0, o.size(), o) == 0; });
        if (!hit) {
            throw ConfigError("--only: no identity matches '" + o + "'");
        }
    }
    auto gc = parse_gamma_choice(cfg.gamma);
    for (int N : cfg.Ns) {
        IndexData idx(N);
        for (const auto* m : {&gc.value, &gc.scale, &gc.bar_value, &gc.bar_scale}) {
            for (const auto& [a, v] : *m) {
                if (!idx.valid(a) || (a == 0 && !idx.odd())) {
                    throw ConfigError("--gamma: no constant with label " + std::to_string(a) + " at N = " +
                                      std::to_string(N));
                }
            }
        }
    }
}

std::vector<Gauss> sample_points(int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<Gauss> out;
    while (static_cast<int>(out.size()) < count) {
        long den = 2 + static_cast<long>(rng() % 8);
        long num = den + 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(2 * den));
        Gauss s(mpq_class(num, den));
        if (std::find(out.begin(), out.end(), s) == out.end()) {
            out.push_back(s);
        }
    }
    return out;
}

unsigned pool_size(unsigned requested)
{
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("QEUCLID_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

const std::vector<std::string>& identity_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n{"rhat-braid",       "rhat-characteristic", "projector-ranks",   "x-confluence",
                                   "radius-x-exchange", "star-relations",     "glued-gamma",       "glued-RLL",
                                   "glued-gLL",         "glued-mixed",        "d-squared",         "d-relations",
                                   "wedge-relations",   "radius-xi-exchange", "gamma-constraints", "frame-commutation",
                                   "frame-commutation-K", "frame-duality",    "frame-basis",       "lambda-relations",
                                   "theta-wedge",       "dirac-closed-form",  "dirac-df",          "L-vanishing",
                                   "RLL",               "gLL",                "coordinate-metric", "nc-mixed-even",
                                   "nc-rhat-entry",     "nc-gamma",           "nc-sigma-scaling",  "nc-sigma-wrong"};
        for (const char* v : {"[qR]", "[(qR)^-1]"}) {
            for (const char* b : {"torsion-bilinearity", "sigma-braid", "metric-compatibility", "torsion",
                                  "right-leibniz", "curvature", "coordinate-sigma"}) {
                n.push_back(std::string(b) + v);
            }
        }
        return n;
    }();
    return names;
}

Report run_suite(const RunConfig& cfg)
{
    validate(cfg);
    std::vector<Unit> units;
    std::vector<std::optional<Gauss>> points;
    if (cfg.mode == Mode::symbolic) {
        points.push_back(std::nullopt);
    } else {
        for (const auto& p : sample_points(cfg.samples, cfg.seed)) {
            points.push_back(p);
        }
    }
    for (int N : cfg.Ns) {
        for (const auto& p : points) {
            units.push_back({N, p, 0});
            for (auto k : cfg.calculi) {
                units.push_back({N, p, k == CalculusKind::unbarred ? 1 : 2});
            }
        }
    }
    std::vector<std::vector<Record>> results(units.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < units.size(); i = next++) {
            const auto& u = units[i];
            results[i] = u.point ? run_unit(cfg, NumericField(*u.point), u) : run_unit(cfg, SymbolicField{}, u);
        }
    };
    unsigned n = std::min<std::size_t>(pool_size(cfg.threads), units.size());
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) {
        pool.emplace_back(work);
    }
    work();
    for (auto& t : pool) {
        t.join();
    }
    Report rep;
    rep.config = cfg;
    for (auto& r : results) {
        rep.records.insert(rep.records.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
    }
    return rep;
}

std::size_t Report::failed() const
{
    return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const Record& r) {
        return !r.pass && !r.negative_control;
    }));
}

bool Report::green() const { return failed() == 0; }

std::string Report::to_json() const
{
    using nlohmann::ordered_json;
    ordered_json j;
    j["engine"] = engine_version;
    j["rhat_convention"] = rhat_convention;
    ordered_json c;
    c["N"] = config.Ns;
    std::vector<std::string> calc;
    for (auto k : config.calculi) {
        calc.push_back(to_string(k));
    }
    c["calculus"] = calc;
    c["mode"] = to_string(config.mode);
    c["samples"] = config.mode == Mode::numeric ? config.samples : 0;
    c["seed"] = config.seed;
    c["gamma"] = config.gamma;
    c["only"] = config.only;
    c["negative_controls"] = config.negative_controls;
    j["config"] = c;
    ordered_json recs = ordered_json::array();
    std::size_t passed = 0, controls = 0, controls_tripped = 0;
    for (const auto& r : records) {
        ordered_json e;
        e["identity"] = r.identity;
        e["N"] = r.N;
        e["calculus"] = r.calculus;
        e["mode"] = r.mode;
        e["status"] = r.pass ? "pass" : "fail";
        if (r.witness) {
            e["witness"] = *r.witness;
        }
        if (r.value) {
            e["value"] = *r.value;
        }
        if (r.negative_control) {
            e["negative_control"] = true;
            ++controls;
            controls_tripped += r.pass ? 0 : 1;
        } else if (r.pass) {
            ++passed;
        }
        recs.push_back(e);
    }
    j["records"] = recs;
    ordered_json s;
    s["total"] = records.size() - controls;
    s["passed"] = passed;
    s["failed"] = failed();
    s["negative_controls"] = controls;
    s["negative_controls_failing_as_expected"] = controls_tripped;
    s["green"] = green();
    j["summary"] = s;
    return j.dump(2) + "\n";
}

}  // namespace qeuclid

#include "qeuclid/geometry.hpp"

#include <stdexcept>

namespace qeuclid {

std::string to_string(SigmaVariant v)
{
    return v == SigmaVariant::q_rhat ? "qR" : "(qR)^-1";
}

SigmaVariant parse_sigma_variant(const std::string& s)
{
    if (s == "qR") {
        return SigmaVariant::q_rhat;
    }
    if (s == "(qR)^-1") {
        return SigmaVariant::q_rhat_inverse;
    }
    throw std::invalid_argument("unknown sigma variant '" + s + "'");
}

namespace {

std::string idx_str(std::initializer_list<int> ls)
{
    std::string out = "(";
    bool first = true;
    for (int v : ls) {
        out += (first ? "" : ",") + std::to_string(v);
        first = false;
    }
    return out + ")";
}

}  // namespace

template <class F>
SigmaMap<F> build_sigma(const IndexData& idx, const F& field, const BraidTensor<F>& rhat,
                        const BraidTensor<F>& rhat_inv, SigmaVariant v)
{
    (void)idx;
    SigmaMap<F> out;
    out.variant = v;
    out.S = v == SigmaVariant::q_rhat ? rhat.scaled(field.q_pow(1)) : rhat_inv.scaled(field.q_pow(-1));
    return out;
}

template <class F>
std::optional<std::string> check_torsion_bilinearity(const BraidTensor<F>& S, const Projectors<F>& P,
                                                     const IndexData& idx, const F& field)
{
    auto m = (S + BraidTensor<F>::identity(idx, field)) * P.anti;
    if (m.is_zero()) {
        return std::nullopt;
    }
    const auto& [key, v] = *m.entries().begin();
    return "((S + 1) P_a)^{" + std::to_string(key[0]) + "," + std::to_string(key[1]) + "}_{" +
           std::to_string(key[2]) + "," + std::to_string(key[3]) + "} = " + scalar_string(v);
}

template <class F>
std::optional<std::array<typename F::scalar_type, 3>> sigma_plus_one_spectrum(const BraidTensor<F>& S,
                                                                              const Projectors<F>& P)
{
    using T = typename F::scalar_type;
    std::array<T, 3> mu;
    const BraidTensor<F>* ps[] = {&P.sym, &P.anti, &P.trace};
    BraidTensor<F> rebuilt;
    for (int k = 0; k < 3; ++k) {
        auto sp = S * *ps[k];
        const auto& [key, pv] = *ps[k]->entries().begin();
        mu[k] = sp.at(key[0], key[1], key[2], key[3]) / pv;
        if (!(sp - ps[k]->scaled(mu[k])).is_zero()) {
            return std::nullopt;
        }
        rebuilt = k == 0 ? ps[k]->scaled(mu[k]) : rebuilt + ps[k]->scaled(mu[k]);
    }
    if (!(rebuilt - S).is_zero()) {
        return std::nullopt;
    }
    for (auto& m : mu) {
        m = m + T(1);
    }
    return mu;
}

template <class F>
Compatibility<F> metric_compatibility(const BraidTensor<F>& S, const MetricTensor<F>& g, const IndexData& idx)
{
    using T = typename F::scalar_type;
    Compatibility<F> out;
    // M[a][c][b][d] = sum S^{ae}_{df} g^{fg} S^{(cb or bc)}_{eg}
    auto run = [&](bool swapped, std::optional<T>& factor, const char* name) {
        std::map<std::array<int, 4>, T> M;
        for (const auto& [k1, s1] : S.entries()) {
            int a = k1[0], e = k1[1], d = k1[2], f = k1[3];
            int gl = -f;
            T gf = g.at(f, gl);
            for (int u : idx.labels()) {
                // second factor S^{u,w}_{e,g}, w running; read by row scan of the transpose
                for (int w : idx.labels()) {
                    T s2 = S.at(u, w, e, gl);
                    if (is_zero(s2)) {
                        continue;
                    }
                    // swapped: S^{bc}_{eg} with (b, c) = (u, w); plain: S^{cb}_{eg} with (c, b) = (u, w)
                    std::array<int, 4> key = swapped ? std::array<int, 4>{a, w, u, d} : std::array<int, 4>{a, u, w, d};
                    auto it = M.find(key);
                    T add = s1 * gf * s2;
                    if (it == M.end()) {
                        M.emplace(key, add);
                    } else {
                        it->second = it->second + add;
                    }
                }
            }
        }
        int n = idx.n();
        T g0 = g.at(n, -n);
        auto it = M.find({n, -n, n, n});
        if (it == M.end()) {
            out.witness += std::string(name) + ": component " + idx_str({n, -n, n, n}) + " vanishes; ";
            return;
        }
        T c = it->second / g0;
        for (int a : idx.labels()) {
            for (int cc : idx.labels()) {
                for (int b : idx.labels()) {
                    for (int d : idx.labels()) {
                        auto jt = M.find({a, cc, b, d});
                        T got = jt == M.end() ? T(0) : jt->second;
                        T want = (a == -cc && b == d) ? c * g.at(a, cc) : T(0);
                        if (!is_zero(got - want)) {
                            out.witness += std::string(name) + ": component " + idx_str({a, cc, b, d}) + " = " +
                                           scalar_string(got) + "; ";
                            return;
                        }
                    }
                }
            }
        }
        factor = c;
    };
    run(false, out.factor, "S g S^{cb}");
    run(true, out.factor_swapped, "S g S^{bc}");
    return out;
}

template <class F>
std::map<std::array<int, 3>, Element<F>> connection(const Algebra<F>& A, const LambdaFamily<F>& lam,
                                                    const BraidTensor<F>& S)
{
    std::map<std::array<int, 3>, Element<F>> out;
    for (int a : A.index().labels()) {
        for (int c : A.index().labels()) {
            out[{a, c, a}] += lam.lambda.at(c);
        }
    }
    for (const auto& [key, s] : S.entries()) {
        // - lambda_b S^{ab}_{cd}
        out[{key[0], key[2], key[3]}] -= lam.lambda.at(key[1]).scaled(s);
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second.empty() ? out.erase(it) : std::next(it);
    }
    return out;
}

template <class F>
std::optional<std::string> check_torsion(const Calculus<F>& C, const LambdaFamily<F>& lam, const FrameFamily<F>& fr,
                                         const BraidTensor<F>& S)
{
    const auto& A = C.algebra();
    const auto& idx = A.index();
    std::map<std::array<int, 2>, FormElement<F>> tt;
    for (int a : idx.labels()) {
        for (int b : idx.labels()) {
            tt[{a, b}] = frame_product(C, fr, a, b);
        }
    }
    auto conn = connection(A, lam, S);
    for (int a : idx.labels()) {
        // d theta^a = -(theta theta^a + theta^a theta) = lambda_b (theta^b theta^a + theta^a theta^b)
        FormElement<F> dth(2);
        for (int b : idx.labels()) {
            dth += C.mul(lam.lambda.at(b), tt.at({b, a}) + tt.at({a, b}));
        }
        FormElement<F> piD(2);
        for (const auto& [key, coef] : conn) {
            if (key[0] == a) {
                piD += C.mul(coef, tt.at({key[1], key[2]}));
            }
        }
        auto diff = dth - piD;
        if (!C.is_zero(diff)) {
            return "torsion of theta^" + std::to_string(a) + " = " + C.to_string(diff);
        }
    }
    return std::nullopt;
}

template <class F>
std::optional<std::string> check_right_leibniz(const Algebra<F>& A, const LambdaFamily<F>& lam,
                                               const BraidTensor<F>& S)
{
    const auto& idx = A.index();
    auto conn = connection(A, lam, S);
    for (int a : idx.labels()) {
        for (int j : idx.labels()) {
            auto x = A.x(j);
            std::map<std::array<int, 2>, Element<F>> diff;
            // D(theta^a x^j) = -theta (x) x^j theta^a + sigma(x^j theta^a (x) theta)
            for (int c : idx.labels()) {
                diff[{c, a}] += A.mul(lam.lambda.at(c), x);
            }
            for (const auto& [key, s] : S.entries()) {
                if (key[0] == a) {
                    diff[{key[2], key[3]}] -= A.mul(x, lam.lambda.at(key[1])).scaled(s);
                }
            }
            // - sigma(theta^a (x) [lambda_e, x^j] theta^e)
            for (const auto& [key, s] : S.entries()) {
                if (key[0] == a) {
                    diff[{key[2], key[3]}] -= A.commutator(lam.lambda.at(key[1]), x).scaled(s);
                }
            }
            // - (D theta^a) x^j
            for (const auto& [key, coef] : conn) {
                if (key[0] == a) {
                    diff[{key[1], key[2]}] -= A.mul(coef, x);
                }
            }
            for (const auto& [cd, v] : diff) {
                if (!A.is_zero(v)) {
                    return "right Leibniz at theta^" + std::to_string(a) + " x" + std::to_string(j) +
                           ", component " + idx_str({cd[0], cd[1]}) + " = " + A.to_string(v);
                }
            }
        }
    }
    return std::nullopt;
}

template <class F>
std::optional<std::string> check_curvature(const Algebra<F>& A, const Projectors<F>& P, const LambdaFamily<F>& lam,
                                           const BraidTensor<F>& S)
{
    const auto& idx = A.index();
    auto conn = connection(A, lam, S);
    std::map<int, std::vector<std::pair<std::array<int, 2>, const Element<F>*>>> by_a;
    for (const auto& [key, coef] : conn) {
        by_a[key[0]].push_back({{key[1], key[2]}, &coef});
    }
    for (int a : idx.labels()) {
        // coefficients of theta^i (x) theta^j (x) theta^k
        std::map<std::array<int, 3>, Element<F>> c3;
        for (const auto& [cd, f] : by_a[a]) {
            int c = cd[0], d = cd[1];
            // d f (x) theta^c (x) theta^d
            for (int e : idx.labels()) {
                auto df = A.commutator(lam.lambda.at(e), *f);
                if (!df.empty()) {
                    c3[{e, c, d}] += df;
                }
            }
            // f D theta^c (x) theta^d
            for (const auto& [gh, h] : by_a[c]) {
                c3[{gh[0], gh[1], d}] += A.mul(*f, *h);
            }
            // f sigma_12(theta^c (x) D theta^d)
            for (const auto& [gh, h] : by_a[d]) {
                auto fh = A.mul(*f, *h);
                for (const auto& [ij, s] : S.row(c, gh[0])) {
                    c3[{ij[0], ij[1], gh[1]}] += fh.scaled(s);
                }
            }
        }
        // pi_12: theta^i theta^j = P_a^{ij}_{mn} theta^m theta^n
        std::map<std::array<int, 3>, Element<F>> proj;
        for (const auto& [ijk, v] : c3) {
            for (const auto& [mn, p] : P.anti.row(ijk[0], ijk[1])) {
                proj[{mn[0], mn[1], ijk[2]}] += v.scaled(p);
            }
        }
        for (const auto& [mnk, v] : proj) {
            if (!A.is_zero(v)) {
                return "Curv(theta^" + std::to_string(a) + ") component " + idx_str({mnk[0], mnk[1], mnk[2]}) +
                       " = " + A.to_string(v);
            }
        }
    }
    return std::nullopt;
}

template <class F>
std::optional<std::string> check_coordinate_metric(const Calculus<F>& C, const LambdaFamily<F>& lam)
{
    const auto& A = C.algebra();
    const auto& idx = A.index();
    const auto& g = A.metric();
    auto L2 = A.lambda(C.kind() == CalculusKind::unbarred ? 2 : -2);
    for (int i : idx.labels()) {
        for (int j : idx.labels()) {
            // g(E^i_a theta^a (x) E^j_b theta^b) = E^i_a g^{ab} E^j_b
            Element<F> v;
            for (int a : idx.labels()) {
                auto ei = A.commutator(lam.lambda.at(a), A.x(i));
                auto ej = A.commutator(lam.lambda.at(-a), A.x(j));
                v += A.mul(ei, ej).scaled(g.at(a, -a));
            }
            auto want = i == -j ? L2.scaled(g.at(i, j)) : Element<F>();
            if (!A.is_zero(v - want)) {
                return "g(xi" + std::to_string(i) + " (x) xi" + std::to_string(j) + ") = " + A.to_string(v);
            }
        }
    }
    return std::nullopt;
}

template <class F>
std::optional<std::string> check_coordinate_sigma(const Algebra<F>& A, const LambdaFamily<F>& lam,
                                                  const BraidTensor<F>& S)
{
    const auto& idx = A.index();
    std::map<std::array<int, 2>, Element<F>> E;
    for (int i : idx.labels()) {
        for (int a : idx.labels()) {
            E[{i, a}] = A.commutator(lam.lambda.at(a), A.x(i));
        }
    }
    // E^i_a E^j_b S^{ab}_{cd} = S^{ij}_{hk} E^h_c E^k_d
    std::map<std::array<int, 4>, Element<F>> EE;
    for (int i : idx.labels()) {
        for (int j : idx.labels()) {
            for (int a : idx.labels()) {
                for (int b : idx.labels()) {
                    EE[{i, j, a, b}] = A.mul(E.at({i, a}), E.at({j, b}));
                }
            }
        }
    }
    for (int i : idx.labels()) {
        for (int j : idx.labels()) {
            for (int c : idx.labels()) {
                for (int d : idx.labels()) {
                    Element<F> diff;
                    for (int a : idx.labels()) {
                        for (int b : idx.labels()) {
                            auto s = S.at(a, b, c, d);
                            if (!is_zero(s)) {
                                diff += EE.at({i, j, a, b}).scaled(s);
                            }
                        }
                    }
                    for (const auto& [hk, s] : S.row(i, j)) {
                        diff -= EE.at({hk[0], hk[1], c, d}).scaled(s);
                    }
                    if (!A.is_zero(diff)) {
                        return "sigma(xi" + std::to_string(i) + " (x) xi" + std::to_string(j) + ") component " +
                               idx_str({c, d}) + " = " + A.to_string(diff);
                    }
                }
            }
        }
    }
    return std::nullopt;
}

#define QEUCLID_INSTANTIATE(F)                                                                                       \
    template SigmaMap<F> build_sigma<F>(const IndexData&, const F&, const BraidTensor<F>&, const BraidTensor<F>&,   \
                                        SigmaVariant);                                                              \
    template std::optional<std::string> check_torsion_bilinearity<F>(const BraidTensor<F>&, const Projectors<F>&,  \
                                                                     const IndexData&, const F&);                   \
    template std::optional<std::array<typename F::scalar_type, 3>> sigma_plus_one_spectrum<F>(                     \
        const BraidTensor<F>&, const Projectors<F>&);                                                               \
    template Compatibility<F> metric_compatibility<F>(const BraidTensor<F>&, const MetricTensor<F>&,               \
                                                      const IndexData&);                                            \
    template std::map<std::array<int, 3>, Element<F>> connection<F>(const Algebra<F>&, const LambdaFamily<F>&,     \
                                                                    const BraidTensor<F>&);                         \
    template std::optional<std::string> check_torsion<F>(const Calculus<F>&, const LambdaFamily<F>&,               \
                                                         const FrameFamily<F>&, const BraidTensor<F>&);             \
    template std::optional<std::string> check_right_leibniz<F>(const Algebra<F>&, const LambdaFamily<F>&,          \
                                                               const BraidTensor<F>&);                              \
    template std::optional<std::string> check_curvature<F>(const Algebra<F>&, const Projectors<F>&,                \
                                                           const LambdaFamily<F>&, const BraidTensor<F>&);          \
    template std::optional<std::string> check_coordinate_metric<F>(const Calculus<F>&, const LambdaFamily<F>&);    \
    template std::optional<std::string> check_coordinate_sigma<F>(const Algebra<F>&, const LambdaFamily<F>&,       \
                                                                  const BraidTensor<F>&);

QEUCLID_INSTANTIATE(SymbolicField)
QEUCLID_INSTANTIATE(NumericField)

#undef QEUCLID_INSTANTIATE

}  // namespace qeuclid

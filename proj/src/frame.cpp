#include "qeuclid/frame.hpp"

#include "qeuclid/constants.hpp"


namespace qeuclid {

namespace {

const Scalar I{Gauss(0, 1)};

std::string label_name(CalculusKind kind, int a)
{
    return std::string(kind == CalculusKind::unbarred ? "gamma" : "gammabar") + std::to_string(a);
}

// Product constraint gamma_a gamma_{-a} (or gamma_0 itself) for one half.
std::map<int, Scalar> product_targets(const IndexData& idx, CalculusKind kind)
{
    SymbolicField f;
    const Scalar h = const_h(f);
    const Scalar k = const_k(f);
    const long sign = kind == CalculusKind::unbarred ? -1 : 1;
    std::map<int, Scalar> out;
    for (int a = idx.odd() ? 0 : 1; a <= idx.n(); ++a) {
        if (a == 0) {
            // gamma_0 = -q^{-1/2} h^{-1}; gammabar_0 = q^{1/2} h^{-1}
            out[0] = Scalar(sign) * f.s_pow(sign) / h;
        } else if (a == 1 && idx.odd()) {
            out[1] = -f.q_pow(sign) / (h * h);
        } else if (a == 1) {
            out[1] = Scalar(1) / (k * k);
        } else {
            out[a] = -f.q_pow(sign) / (k * k) * const_omega(idx, f, a) * const_omega(idx, f, a - 1);
        }
    }
    return out;
}

}  // namespace

std::map<int, Scalar> default_gammas(const IndexData& idx, CalculusKind kind, bool glued)
{
    if (glued && !idx.odd()) {
        throw GammaError("the glued family exists only for odd N");
    }
    SymbolicField f;
    const Scalar h = const_h(f);
    const Scalar k = const_k(f);
    if (glued && kind == CalculusKind::barred) {
        std::map<int, Scalar> out;
        for (const auto& [a, g] : default_gammas(idx, CalculusKind::unbarred, true)) {
            out[a] = -f.q_pow(1) * g;
        }
        return out;
    }
    const long sign = kind == CalculusKind::unbarred ? -1 : 1;
    std::map<int, Scalar> out;
    if (idx.odd()) {
        out[0] = Scalar(sign) * f.s_pow(sign) / h;
        if (glued) {
            // gamma_1^2 = -q^{-2} h^{-2}, gamma_{-1} = q gamma_1
            out[1] = I * f.q_pow(-1) / h;
            out[-1] = f.q_pow(1) * out[1];
        } else {
            out[1] = I * f.s_pow(sign) / h;
            out[-1] = out[1];
        }
    } else {
        out[1] = Scalar(1) / k;
        out[-1] = out[1];
    }
    for (int a = 2; a <= idx.n(); ++a) {
        // The even split needs sqrt(omega_a omega_{a-1}); split the factors instead.
        out[a] = I * f.s_pow(sign) / k * const_omega(idx, f, a);
        out[-a] = I * f.s_pow(sign) / k * const_omega(idx, f, a - 1);
    }
    return out;
}

std::optional<std::string> gamma_violation(const IndexData& idx, CalculusKind kind, bool glued,
                                           const std::map<int, Scalar>& gamma, const std::map<int, Scalar>* partner)
{
    for (int a : idx.labels()) {
        if (!gamma.count(a)) {
            return label_name(kind, a) + " missing";
        }
        if (gamma.at(a).is_zero()) {
            return label_name(kind, a) + " = 0";
        }
    }
    for (const auto& [a, target] : product_targets(idx, kind)) {
        Scalar got = a == 0 ? gamma.at(0) : gamma.at(a) * gamma.at(-a);
        if (got != target) {
            std::string lhs = a == 0 ? label_name(kind, 0) : label_name(kind, a) + " " + label_name(kind, -a);
            return lhs + " = " + target.to_string() + " violated (got " + got.to_string() + ")";
        }
    }
    if (glued && kind == CalculusKind::barred && partner) {
        SymbolicField f;
        for (int a : idx.labels()) {
            if (gamma.at(a) != -f.q_pow(1) * partner->at(a)) {
                return label_name(kind, a) + " = -q " + label_name(CalculusKind::unbarred, a) + " violated";
            }
        }
    }
    return std::nullopt;
}

std::map<int, Scalar> resolve_gammas(const IndexData& idx, CalculusKind kind, const GammaChoice& choice)
{
    auto apply = [&](std::map<int, Scalar> g, const std::map<int, Scalar>& value,
                     const std::map<int, Scalar>& scale, CalculusKind which) {
        for (const auto& [a, v] : value) {
            if (!idx.valid(a)) {
                throw GammaError("no constant " + label_name(which, a) + " at N = " + std::to_string(idx.N()));
            }
            g[a] = v;
        }
        for (const auto& [a, v] : scale) {
            if (!idx.valid(a)) {
                throw GammaError("no constant " + label_name(which, a) + " at N = " + std::to_string(idx.N()));
            }
            g[a] *= v;
        }
        return g;
    };
    auto unbarred = apply(default_gammas(idx, CalculusKind::unbarred, choice.glued), choice.value, choice.scale,
                          CalculusKind::unbarred);
    std::map<int, Scalar> out = unbarred;
    if (kind == CalculusKind::barred) {
        std::map<int, Scalar> base = default_gammas(idx, CalculusKind::barred, false);
        if (choice.glued) {
            SymbolicField f;
            for (auto& [a, g] : base) {
                g = -f.q_pow(1) * unbarred.at(a);
            }
        }
        out = apply(base, choice.bar_value, choice.bar_scale, CalculusKind::barred);
    }
    if (choice.strict) {
        if (auto v = gamma_violation(idx, kind, choice.glued, out, &unbarred)) {
            throw GammaError(*v);
        }
    }
    return out;
}

template <class F>
LambdaFamily<F> build_lambda(const Algebra<F>& A, CalculusKind kind, const std::map<int, Scalar>& gamma)
{
    const auto& idx = A.index();
    const auto& f = A.field();
    const int lam = kind == CalculusKind::unbarred ? 1 : -1;
    LambdaFamily<F> out;
    out.kind = kind;
    out.gamma = gamma;
    for (int a : idx.labels()) {
        Element<F> e = A.lambda(lam);
        if (a == 0) {
            e = A.mul(e, A.x(0, -1));
        } else if (!idx.odd() && std::abs(a) == 1) {
            // K^{-+1} for lambda, K^{+-1} for lambdabar
            e = A.mul(A.mul(e, A.x(a, -1)), A.kappa(a > 0 ? -lam : lam));
        } else {
            int m = std::abs(a);
            e = A.mul(A.mul(A.mul(e, A.r(m, -1)), A.r(m - 1, -1)), A.x(-a));
        }
        out.lambda.emplace(a, e.scaled(f.lift(gamma.at(a))));
    }
    return out;
}

template <class F>
FrameFamily<F> build_frame(const Calculus<F>& C, const LambdaFamily<F>& lam)
{
    const auto& A = C.algebra();
    const auto& idx = A.index();
    const auto& g = A.metric();
    FrameFamily<F> out;
    out.kind = lam.kind;
    Element<F> pre = A.lambda(lam.kind == CalculusKind::unbarred ? -2 : 2);
    for (int a : idx.labels()) {
        auto& row = out.comp[a];
        for (int l : idx.labels()) {
            auto c = A.commutator(lam.lambda.at(-a), A.x(-l));
            row[l] = A.mul(pre, c).scaled(g.at(a, -a) * g.at(-l, l));
        }
    }
    return out;
}

template <class F>
FormElement<F> frame_form(const Calculus<F>& C, const FrameFamily<F>& fr, int a)
{
    return C.one_form(fr.comp.at(a));
}

template <class F>
FormElement<F> frame_product(const Calculus<F>& C, const FrameFamily<F>& fr, int a, int b)
{
    const auto& A = C.algebra();
    FormElement<F> out(2);
    for (const auto& [m, cb] : fr.comp.at(b)) {
        if (cb.empty()) {
            continue;
        }
        for (const auto& [p, ca] : fr.comp.at(a)) {
            if (!ca.empty()) {
                out += C.wedge(A.mul(cb, ca), p, m);
            }
        }
    }
    return out;
}

template <class F>
std::optional<std::string> check_frame_commutation(const Calculus<F>& C, const FrameFamily<F>& fr,
                                                   FrameTarget target)
{
    const auto& A = C.algebra();
    const auto& idx = A.index();
    std::vector<std::pair<std::string, Element<F>>> gens;
    if (target == FrameTarget::coordinates) {
        for (int j : idx.labels()) {
            gens.push_back({"x" + std::to_string(j), A.x(j)});
        }
        gens.push_back({"L", A.lambda()});
    } else if (A.has_kappa()) {
        gens.push_back({"K", A.kappa()});
    }
    const char* th = fr.kind == CalculusKind::unbarred ? "theta" : "thetabar";
    for (int a : idx.labels()) {
        auto t = frame_form(C, fr, a);
        for (const auto& [name, x] : gens) {
            auto c = C.commutator(t, x);
            if (!C.is_zero(c)) {
                return "[" + std::string(th) + std::to_string(a) + ", " + name + "] = " + C.to_string(c);
            }
        }
    }
    return std::nullopt;
}

template <class F>
std::optional<std::string> check_frame_duality(const Calculus<F>& C, const LambdaFamily<F>& lam,
                                               const FrameFamily<F>& fr)
{
    const auto& A = C.algebra();
    const auto& idx = A.index();
    for (int j : idx.labels()) {
        FormElement<F> sum(1);
        for (int a : idx.labels()) {
            sum += C.mul(A.commutator(lam.lambda.at(a), A.x(j)), frame_form(C, fr, a));
        }
        auto diff = sum - C.d(A.x(j));
        if (!C.is_zero(diff)) {
            return "[lambda_a, x" + std::to_string(j) + "] theta^a - d x" + std::to_string(j) + " = " +
                   C.to_string(diff);
        }
    }
    return std::nullopt;
}

template <class F>
std::optional<std::string> check_frame_basis(const Calculus<F>& C, const LambdaFamily<F>& lam,
                                             const FrameFamily<F>& fr)
{
    // E^j_a = [lambda_a, x^j] inverts theta^a_l on both sides.
    const auto& A = C.algebra();
    const auto& idx = A.index();
    std::map<int, std::map<int, Element<F>>> E;
    for (int j : idx.labels()) {
        for (int a : idx.labels()) {
            E[j][a] = A.commutator(lam.lambda.at(a), A.x(j));
        }
    }
    for (int u : idx.labels()) {
        for (int v : idx.labels()) {
            Element<F> left, right;
            for (int w : idx.labels()) {
                left += A.mul(E.at(u).at(w), fr.comp.at(w).at(v));
                right += A.mul(fr.comp.at(u).at(w), E.at(w).at(v));
            }
            Element<F> id = u == v ? A.one() : Element<F>();
            if (!A.is_zero(left - id)) {
                return "(E theta)^" + std::to_string(u) + "_" + std::to_string(v) + " = " + A.to_string(left);
            }
            if (!A.is_zero(right - id)) {
                return "(theta E)^" + std::to_string(u) + "_" + std::to_string(v) + " = " + A.to_string(right);
            }
        }
    }
    return std::nullopt;
}

template <class F>
std::optional<std::string> check_lambda_relations(const Algebra<F>& A, const Projectors<F>& P,
                                                  const LambdaFamily<F>& lam)
{
    const auto& idx = A.index();
    auto Pt = P.anti.transposed();
    std::map<std::array<int, 2>, Element<F>> prod;
    for (int a : idx.labels()) {
        for (int b : idx.labels()) {
            prod[{a, b}] = A.mul(lam.lambda.at(a), lam.lambda.at(b));
        }
    }
    for (int c : idx.labels()) {
        for (int d : idx.labels()) {
            Element<F> sum;
            for (const auto& [ab, v] : Pt.row(c, d)) {
                sum += prod.at(ab).scaled(v);
            }
            if (!A.is_zero(sum)) {
                return "P_a^{ab}_{" + std::to_string(c) + "," + std::to_string(d) + "} lambda_a lambda_b = " +
                       A.to_string(sum);
            }
        }
    }
    return std::nullopt;
}

template <class F>
std::optional<std::string> check_theta_wedge(const Calculus<F>& C, const Projectors<F>& P, const FrameFamily<F>& fr)
{
    const auto& idx = C.algebra().index();
    std::map<std::array<int, 2>, FormElement<F>> prod;
    for (int a : idx.labels()) {
        for (int b : idx.labels()) {
            prod[{a, b}] = frame_product(C, fr, a, b);
        }
    }
    for (int a : idx.labels()) {
        for (int b : idx.labels()) {
            FormElement<F> sum(2);
            for (const auto& [cd, v] : P.anti.row(a, b)) {
                sum += prod.at(cd).scaled(v);
            }
            auto diff = sum - prod.at({a, b});
            if (!C.is_zero(diff)) {
                return "P_a^{" + std::to_string(a) + "," + std::to_string(b) + "}_{cd} theta^c theta^d - theta^" +
                       std::to_string(a) + " theta^" + std::to_string(b) + " = " + C.to_string(diff);
            }
        }
    }
    return std::nullopt;
}

template <class F>
LMatrix<F> build_L(const Algebra<F>& A, const LambdaFamily<F>& lam)
{
    const auto& idx = A.index();
    const auto& g = A.metric();
    LMatrix<F> out;
    Element<F> pre = A.lambda(lam.kind == CalculusKind::unbarred ? -1 : 1);
    for (int i : idx.labels()) {
        for (int j : idx.labels()) {
            auto c = A.commutator(lam.lambda.at(-i), A.x(-j));
            out.entries[i][j] = A.mul(pre, c).scaled(g.at(i, -i) * g.at(-j, j));
        }
    }
    return out;
}

template <class F>
std::vector<std::array<int, 2>> vanishing_entries(const Algebra<F>& A, const LMatrix<F>& L)
{
    std::vector<std::array<int, 2>> out;
    for (const auto& [i, row] : L.entries) {
        for (const auto& [j, e] : row) {
            if (A.is_zero(e)) {
                out.push_back({i, j});
            }
        }
    }
    return out;
}

namespace {

// sum_{kl} R^{ij}_{kl} X^k_m Y^l_n - sum_{kl} Y^i_k X^j_l R^{kl}_{mn} over all (i,j,m,n). The
// flags reverse the order of the two entries in each product.
template <class F>
std::optional<std::string> braided_check(const Algebra<F>& A, const BraidTensor<F>& R, const LMatrix<F>& X,
                                         const LMatrix<F>& Y, bool left_rev, bool right_rev)
{
    const auto& idx = A.index();
    using Key = std::array<int, 4>;
    std::map<Key, Element<F>> left_prod, right_prod;
    for (int k : idx.labels()) {
        for (int m : idx.labels()) {
            for (int l : idx.labels()) {
                for (int n : idx.labels()) {
                    const auto& xe = X.entries.at(k).at(m);
                    const auto& ye = Y.entries.at(l).at(n);
                    left_prod[{k, m, l, n}] = left_rev ? A.mul(ye, xe) : A.mul(xe, ye);
                    const auto& yr = Y.entries.at(k).at(m);
                    const auto& xr = X.entries.at(l).at(n);
                    right_prod[{k, m, l, n}] = right_rev ? A.mul(xr, yr) : A.mul(yr, xr);
                }
            }
        }
    }
    auto Rt = R.transposed();
    for (int i : idx.labels()) {
        for (int j : idx.labels()) {
            for (int m : idx.labels()) {
                for (int n : idx.labels()) {
                    Element<F> sum;
                    for (const auto& [kl, v] : R.row(i, j)) {
                        sum += left_prod.at({kl[0], m, kl[1], n}).scaled(v);
                    }
                    for (const auto& [kl, v] : Rt.row(m, n)) {
                        sum -= right_prod.at({i, kl[0], j, kl[1]}).scaled(v);
                    }
                    if (!A.is_zero(sum)) {
                        return "component (" + std::to_string(i) + "," + std::to_string(j) + ";" + std::to_string(m) +
                               "," + std::to_string(n) + ") = " + A.to_string(sum);
                    }
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace

template <class F>
std::optional<std::string> check_RLL(const Algebra<F>& A, const BraidTensor<F>& rhat, const LMatrix<F>& L)
{
    // R^{ij}_{kl} L^l_n L^k_m = L^j_l L^i_k R^{kl}_{mn}: the entries of the second tensor factor
    // stand to the left, which is the FRT relation written with P R-hat P.
    return braided_check(A, rhat, L, L, true, true);
}

template <class F>
std::optional<std::string> check_RLL_literal(const Algebra<F>& A, const BraidTensor<F>& rhat, const LMatrix<F>& L)
{
    return braided_check(A, rhat, L, L, false, false);
}

template <class F>
GLLResult<F> check_gLL(const Algebra<F>& A, const LMatrix<F>& L)
{
    const auto& idx = A.index();
    const auto& g = A.metric();
    GLLResult<F> out;
    auto extract = [&](bool transposed, std::optional<typename F::scalar_type>& c) {
        const char* name = transposed ? "L^T g L" : "L g L^T";
        std::map<std::array<int, 2>, Element<F>> M;
        for (int i : idx.labels()) {
            for (int j : idx.labels()) {
                Element<F> sum;
                for (int k : idx.labels()) {
                    // second tensor factor on the left, as in check_RLL
                    if (transposed) {
                        // L^l_j g_{kl} L^k_i, l = -k
                        sum += A.mul(L.entries.at(-k).at(j), L.entries.at(k).at(i)).scaled(g.at(k, -k));
                    } else {
                        // L^j_l g^{kl} L^i_k, l = -k
                        sum += A.mul(L.entries.at(j).at(-k), L.entries.at(i).at(k)).scaled(g.at(k, -k));
                    }
                }
                M[{i, j}] = sum;
            }
        }
        int n = idx.n();
        auto probe = A.constant_value(M.at({n, -n}));
        if (!probe) {
            out.witness += std::string(name) + " entry (" + std::to_string(n) + "," + std::to_string(-n) +
                           ") is not constant: " + A.to_string(M.at({n, -n})) + "; ";
            return;
        }
        auto cand = *probe / g.at(n, -n);
        for (int i : idx.labels()) {
            for (int j : idx.labels()) {
                auto expect = i == -j ? A.constant(cand * g.at(i, j)) : Element<F>();
                if (!A.is_zero(M.at({i, j}) - expect)) {
                    out.witness += std::string(name) + " entry (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") = " + A.to_string(M.at({i, j})) + "; ";
                    return;
                }
            }
        }
        c = cand;
    };
    extract(false, out.c);
    extract(true, out.c_prime);
    return out;
}

template <class F>
std::optional<std::string> check_mixed(const Algebra<F>& A, const BraidTensor<F>& rhat, const BraidTensor<F>& rhat_inv,
                                       const LMatrix<F>& Lplus, const LMatrix<F>& Lminus)
{
    struct Side {
        const char* name;
        const LMatrix<F>* X;
        const LMatrix<F>* Y;
    };
    const Side pairs[] = {{"+-", &Lplus, &Lminus}, {"-+", &Lminus, &Lplus}};
    const std::pair<const char*, const BraidTensor<F>*> mats[] = {{"R", &rhat}, {"R^-1", &rhat_inv}};
    for (const auto& [rn, R] : mats) {
        for (const auto& p : pairs) {
            for (int lr = 0; lr < 2; ++lr) {
                for (int rr = 0; rr < 2; ++rr) {
                    if (!braided_check(A, *R, *p.X, *p.Y, lr != 0, rr != 0)) {
                        std::string x = p.name[0] == '+' ? "L+" : "L-";
                        std::string y = p.name[0] == '+' ? "L-" : "L+";
                        std::string left = lr ? y + "2 " + x + "1" : x + "1 " + y + "2";
                        std::string right = rr ? x + "2 " + y + "1" : y + "1 " + x + "2";
                        return std::string(rn) + " " + left + " = " + right + " " + rn;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

template <class F>
FormElement<F> build_dirac(const Calculus<F>& C, const LambdaFamily<F>& lam, const FrameFamily<F>& fr)
{
    FormElement<F> out(1);
    for (const auto& [a, l] : lam.lambda) {
        out -= C.mul(l, frame_form(C, fr, a));
    }
    return out;
}

template <class F>
FormElement<F> dirac_closed_form(const Calculus<F>& C)
{
    const auto& A = C.algebra();
    const auto& idx = A.index();
    const auto& f = A.field();
    const auto& g = A.metric();
    const bool un = C.kind() == CalculusKind::unbarred;
    auto c = const_omega(idx, f, idx.n()) * f.s_pow(un ? idx.N() : -idx.N()) / const_k(f);
    if (!un) {
        c = -c;
    }
    Element<F> r2 = A.r(idx.n(), -2);
    FormElement<F> out(1);
    for (int i : idx.labels()) {
        out += C.mul(A.mul(r2, A.x(i)), C.xi(-i)).scaled(c * g.at(i, -i));
    }
    return out;
}

template <class F>
std::optional<std::string> check_dirac_df(const Calculus<F>& C, const FormElement<F>& theta)
{
    const auto& A = C.algebra();
    const auto& idx = A.index();
    std::vector<Element<F>> probes{A.one()};
    for (int i : idx.labels()) {
        probes.push_back(A.x(i));
        for (int j : idx.labels()) {
            probes.push_back(A.mul(A.x(i), A.x(j)));
        }
    }
    for (const auto& p : probes) {
        auto diff = C.d(p) + C.commutator(theta, p);
        if (!C.is_zero(diff)) {
            return "d f + [theta, f] at f = " + A.to_string(p) + ": " + C.to_string(diff);
        }
    }
    return std::nullopt;
}

#define QEUCLID_INSTANTIATE(F)                                                                                     \
    template LambdaFamily<F> build_lambda<F>(const Algebra<F>&, CalculusKind, const std::map<int, Scalar>&);       \
    template FrameFamily<F> build_frame<F>(const Calculus<F>&, const LambdaFamily<F>&);                            \
    template FormElement<F> frame_form<F>(const Calculus<F>&, const FrameFamily<F>&, int);                         \
    template FormElement<F> frame_product<F>(const Calculus<F>&, const FrameFamily<F>&, int, int);                 \
    template std::optional<std::string> check_frame_commutation<F>(const Calculus<F>&, const FrameFamily<F>&,      \
                                                                   FrameTarget);                                   \
    template std::optional<std::string> check_frame_duality<F>(const Calculus<F>&, const LambdaFamily<F>&,         \
                                                               const FrameFamily<F>&);                             \
    template std::optional<std::string> check_frame_basis<F>(const Calculus<F>&, const LambdaFamily<F>&,           \
                                                             const FrameFamily<F>&);                               \
    template std::optional<std::string> check_lambda_relations<F>(const Algebra<F>&, const Projectors<F>&,         \
                                                                  const LambdaFamily<F>&);                         \
    template std::optional<std::string> check_theta_wedge<F>(const Calculus<F>&, const Projectors<F>&,             \
                                                             const FrameFamily<F>&);                               \
    template LMatrix<F> build_L<F>(const Algebra<F>&, const LambdaFamily<F>&);                                     \
    template std::vector<std::array<int, 2>> vanishing_entries<F>(const Algebra<F>&, const LMatrix<F>&);           \
    template std::optional<std::string> check_RLL<F>(const Algebra<F>&, const BraidTensor<F>&, const LMatrix<F>&); \
    template std::optional<std::string> check_RLL_literal<F>(const Algebra<F>&, const BraidTensor<F>&,             \
                                                             const LMatrix<F>&);                                   \
    template GLLResult<F> check_gLL<F>(const Algebra<F>&, const LMatrix<F>&);                                      \
    template std::optional<std::string> check_mixed<F>(const Algebra<F>&, const BraidTensor<F>&,                   \
                                                       const BraidTensor<F>&, const LMatrix<F>&, const LMatrix<F>&); \
    template FormElement<F> build_dirac<F>(const Calculus<F>&, const LambdaFamily<F>&, const FrameFamily<F>&);     \
    template FormElement<F> dirac_closed_form<F>(const Calculus<F>&);                                              \
    template std::optional<std::string> check_dirac_df<F>(const Calculus<F>&, const FormElement<F>&);

QEUCLID_INSTANTIATE(SymbolicField)
QEUCLID_INSTANTIATE(NumericField)

#undef QEUCLID_INSTANTIATE

}  // namespace qeuclid

#pragma once

// lambda_a, the frames theta^a, the L-matrix images and the Dirac operator.

#include "qeuclid/calculus.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qeuclid {

class GammaError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Normalization constants. Only products gamma_a gamma_{-a} are fixed; the free
/// torus ratio is set so every default stays inside Q(i)(q^{1/2}).
struct GammaChoice {
    bool glued = false;
    std::map<int, Scalar> value;      // replaces gamma_a
    std::map<int, Scalar> scale;      // multiplies the default gamma_a
    std::map<int, Scalar> bar_value;  // same for gammabar_a
    std::map<int, Scalar> bar_scale;
    bool strict = true;               // reject choices that break the product constraints
};

std::map<int, Scalar> default_gammas(const IndexData& idx, CalculusKind kind, bool glued);

/// Names the first violated constraint, if any. For glued families, `partner` holds the
/// unbarred gammas when checking the barred ones (gammabar_a = -q gamma_a).
std::optional<std::string> gamma_violation(const IndexData& idx, CalculusKind kind, bool glued,
                                           const std::map<int, Scalar>& gamma,
                                           const std::map<int, Scalar>* partner = nullptr);

/// Defaults with the choice applied; throws GammaError on a violated constraint when strict.
std::map<int, Scalar> resolve_gammas(const IndexData& idx, CalculusKind kind, const GammaChoice& choice);

template <class F>
struct LambdaFamily {
    using T = typename F::scalar_type;
    CalculusKind kind = CalculusKind::unbarred;
    std::map<int, Scalar> gamma;
    std::map<int, Element<F>> lambda;
};

template <class F>
LambdaFamily<F> build_lambda(const Algebra<F>& A, CalculusKind kind, const std::map<int, Scalar>& gamma);

template <class F>
struct FrameFamily {
    CalculusKind kind = CalculusKind::unbarred;
    /// theta^a_l keyed by a, then l.
    std::map<int, std::map<int, Element<F>>> comp;
};

/// theta^a = Lambda^{-+2} g^{ab} [lambda_b, x^j] g_{jl} xi^l.
template <class F>
FrameFamily<F> build_frame(const Calculus<F>& C, const LambdaFamily<F>& lam);

template <class F>
FormElement<F> frame_form(const Calculus<F>& C, const FrameFamily<F>& fr, int a);

/// theta^a theta^b using [theta^a, f] = 0: sum theta^b_m theta^a_p xi^p xi^m.
template <class F>
FormElement<F> frame_product(const Calculus<F>& C, const FrameFamily<F>& fr, int a, int b);

enum class FrameTarget { coordinates, kappa };

/// [theta^a, f] = 0 for f = x^j and Lambda, or f = K (vacuous when K is absent).
/// Returns a witness on failure.
template <class F>
std::optional<std::string> check_frame_commutation(const Calculus<F>& C, const FrameFamily<F>& fr,
                                                   FrameTarget target = FrameTarget::coordinates);

/// dx^j = [lambda_a, x^j] theta^a.
template <class F>
std::optional<std::string> check_frame_duality(const Calculus<F>& C, const LambdaFamily<F>& lam,
                                               const FrameFamily<F>& fr);

/// E^j_a = [lambda_a, x^j] is a two-sided inverse of the component matrix theta^a_l.
template <class F>
std::optional<std::string> check_frame_basis(const Calculus<F>& C, const LambdaFamily<F>& lam,
                                             const FrameFamily<F>& fr);

/// P_a^{ab}_{cd} lambda_a lambda_b = 0, i.e. 2 lambda_c lambda_d P^{cd}_{ab} = 0 with F = K = 0.
template <class F>
std::optional<std::string> check_lambda_relations(const Algebra<F>& A, const Projectors<F>& P,
                                                  const LambdaFamily<F>& lam);

/// P_s theta theta = 0 = P_t theta theta, equivalently P_a theta theta = theta theta.
template <class F>
std::optional<std::string> check_theta_wedge(const Calculus<F>& C, const Projectors<F>& P,
                                             const FrameFamily<F>& fr);

template <class F>
struct LMatrix {
    /// entries[i][j] = L^i_j
    std::map<int, std::map<int, Element<F>>> entries;
};

/// phi^-(L^-) from lambda (unbarred) or phi^+(L^+) from lambdabar (barred).
template <class F>
LMatrix<F> build_L(const Algebra<F>& A, const LambdaFamily<F>& lam);

/// Labels (i, j) of vanishing entries.
template <class F>
std::vector<std::array<int, 2>> vanishing_entries(const Algebra<F>& A, const LMatrix<F>& L);

/// R^{ij}_{kl} L^l_n L^k_m = L^j_l L^i_k R^{kl}_{mn}, i.e. R L2 L1 = L2 L1 R.
template <class F>
std::optional<std::string> check_RLL(const Algebra<F>& A, const BraidTensor<F>& rhat, const LMatrix<F>& L);

/// R^{ij}_{kl} L^k_m L^l_n = L^i_k L^j_l R^{kl}_{mn}, the other ordering of the entries.
template <class F>
std::optional<std::string> check_RLL_literal(const Algebra<F>& A, const BraidTensor<F>& rhat, const LMatrix<F>& L);

template <class F>
struct GLLResult {
    std::optional<typename F::scalar_type> c;       // L g L^T = c g
    std::optional<typename F::scalar_type> c_prime;  // L^T g L = c' g
    std::string witness;
};

template <class F>
GLLResult<F> check_gLL(const Algebra<F>& A, const LMatrix<F>& L);

/// Mixed relation between the two halves, R L2^+ L1^- = L1^- L2^+ R in FRT form. Every
/// entry ordering and R or R^{-1} is tried; returns the first passing variant, or nullopt.
template <class F>
std::optional<std::string> check_mixed(const Algebra<F>& A, const BraidTensor<F>& rhat,
                                       const BraidTensor<F>& rhat_inv, const LMatrix<F>& Lplus,
                                       const LMatrix<F>& Lminus);

/// theta = -lambda_a theta^a.
template <class F>
FormElement<F> build_dirac(const Calculus<F>& C, const LambdaFamily<F>& lam, const FrameFamily<F>& fr);

/// +-omega_n q^{+-N/2} k^{-1} r_n^{-2} g_{ij} x^i xi^j.
template <class F>
FormElement<F> dirac_closed_form(const Calculus<F>& C);

/// df = -[theta, f] on all x-monomials of degree <= 2.
template <class F>
std::optional<std::string> check_dirac_df(const Calculus<F>& C, const FormElement<F>& theta);

}  // namespace qeuclid

#pragma once

// sigma, metric, the torsion-free connection D xi = -theta (x) xi + sigma(xi (x) theta),
// and its torsion and curvature. Tensors of 1-forms live in the frame basis: theta^a
// commutes with functions, so coefficients sit to the left of theta^c (x) theta^d.

#include "qeuclid/frame.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>

namespace qeuclid {

enum class SigmaVariant { q_rhat, q_rhat_inverse };

std::string to_string(SigmaVariant v);
SigmaVariant parse_sigma_variant(const std::string& s);

template <class F>
struct SigmaMap {
    SigmaVariant variant = SigmaVariant::q_rhat;
    BraidTensor<F> S;
};

/// S = q R-hat or (q R-hat)^{-1}. The same matrices serve both calculi.
template <class F>
SigmaMap<F> build_sigma(const IndexData& idx, const F& field, const BraidTensor<F>& rhat,
                        const BraidTensor<F>& rhat_inv, SigmaVariant v);

/// (S + 1) P_a = 0, so pi(sigma + 1) kills theta^a (x) theta^b.
template <class F>
std::optional<std::string> check_torsion_bilinearity(const BraidTensor<F>& S, const Projectors<F>& P,
                                                     const IndexData& idx, const F& field);

/// (mu_s + 1, mu_a + 1, mu_t + 1): coefficients of S + 1 on P_s, P_a, P_t, or nullopt when
/// S is not a combination of the projectors.
template <class F>
std::optional<std::array<typename F::scalar_type, 3>> sigma_plus_one_spectrum(const BraidTensor<F>& S,
                                                                              const Projectors<F>& P);

template <class F>
struct Compatibility {
    using T = typename F::scalar_type;
    /// S^{ae}_{df} g^{fg} S^{cb}_{eg} = factor g^{ac} delta^b_d
    std::optional<T> factor;
    /// S^{ae}_{df} g^{fg} S^{bc}_{eg} = factor g^{ab} delta^c_d
    std::optional<T> factor_swapped;
    std::string witness;
};

template <class F>
Compatibility<F> metric_compatibility(const BraidTensor<F>& S, const MetricTensor<F>& g, const IndexData& idx);

/// Coefficients D theta^a = A^a_{cd} theta^c (x) theta^d with
/// A^a_{cd} = lambda_c delta^a_d - lambda_b S^{ab}_{cd}, keyed (a, c, d).
template <class F>
std::map<std::array<int, 3>, Element<F>> connection(const Algebra<F>& A, const LambdaFamily<F>& lam,
                                                    const BraidTensor<F>& S);

/// Theta(theta^a) = d theta^a - pi D theta^a, with d on 1-forms the inner derivation
/// -[theta, .]_+. Evaluated in the xi basis through the calculus wedge relations.
template <class F>
std::optional<std::string> check_torsion(const Calculus<F>& C, const LambdaFamily<F>& lam, const FrameFamily<F>& fr,
                                         const BraidTensor<F>& S);

/// D(theta^a x^j) - sigma(theta^a (x) dx^j) - (D theta^a) x^j = 0, with D(theta^a x^j)
/// taken straight from the connection formula.
template <class F>
std::optional<std::string> check_right_leibniz(const Algebra<F>& A, const LambdaFamily<F>& lam,
                                               const BraidTensor<F>& S);

/// Curv(theta^a) = pi_12 D_2 D theta^a; the P_a-projected coefficients must vanish.
template <class F>
std::optional<std::string> check_curvature(const Algebra<F>& A, const Projectors<F>& P, const LambdaFamily<F>& lam,
                                           const BraidTensor<F>& S);

/// g(xi^i (x) xi^j) = g^{ij} Lambda^{+-2}, from g(theta^a (x) theta^b) = g^{ab} and
/// xi^i = [lambda_a, x^i] theta^a.
template <class F>
std::optional<std::string> check_coordinate_metric(const Calculus<F>& C, const LambdaFamily<F>& lam);

/// sigma(xi^i (x) xi^j) = S^{ij}_{hk} xi^h (x) xi^k, from the frame-basis sigma.
template <class F>
std::optional<std::string> check_coordinate_sigma(const Algebra<F>& A, const LambdaFamily<F>& lam,
                                                  const BraidTensor<F>& S);

}  // namespace qeuclid

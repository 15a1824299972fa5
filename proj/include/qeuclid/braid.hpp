#pragma once

// SO_q(N) braid matrix, metric and spectral projectors.

#include "qeuclid/field.hpp"
#include "qeuclid/index.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qeuclid {

/// Sparse N^2 x N^2 matrix with row index (i,j) and column index (k,l), all labels.
template <class F>
class BraidTensor {
public:
    using T = typename F::scalar_type;
    using Key = std::array<int, 4>;

    BraidTensor() = default;
    explicit BraidTensor(const IndexData& idx) : N_(idx.N()) {}

    int N() const { return N_; }
    const std::map<Key, T>& entries() const { return entries_; }

    T at(int i, int j, int k, int l) const;
    void add(int i, int j, int k, int l, const T& v);
    void set(int i, int j, int k, int l, const T& v);
    bool is_zero() const { return entries_.empty(); }

    static BraidTensor identity(const IndexData& idx, const F& field);

    BraidTensor operator+(const BraidTensor& o) const;
    BraidTensor operator-(const BraidTensor& o) const;
    BraidTensor operator*(const BraidTensor& o) const;
    BraidTensor scaled(const T& c) const;
    /// Rows and columns swapped: (A^T)^{ij}_{kl} = A^{kl}_{ij}.
    BraidTensor transposed() const;

    /// Entries of the (i,j) row, keyed by (k,l).
    std::vector<std::pair<std::array<int, 2>, T>> row(int i, int j) const;

    friend bool operator==(const BraidTensor& a, const BraidTensor& b) { return a.entries_ == b.entries_; }

private:
    int N_ = 0;
    std::map<Key, T> entries_;
};

template <class F>
struct MetricTensor {
    using T = typename F::scalar_type;
    /// g_{ij} = g^{ij}, keyed by (i, j).
    std::map<std::array<int, 2>, T> entries;

    T at(int i, int j) const;
};

template <class F>
MetricTensor<F> build_metric(const IndexData& idx, const F& field);

/// R-hat in the Faddeev-Reshetikhin-Takhtajan form, labels oriented so that the
/// trace projector is g (x) g / (g_{mn} g^{mn}) with the metric of build_metric.
template <class F>
BraidTensor<F> build_rhat(const IndexData& idx, const F& field);

template <class F>
struct Projectors {
    BraidTensor<F> sym;
    BraidTensor<F> anti;
    BraidTensor<F> trace;
};

/// Eigenvalues (mu_s, mu_a, mu_t) = (q, -q^{-1}, q^{1-N}).
template <class F>
std::array<typename F::scalar_type, 3> rhat_eigenvalues(const IndexData& idx, const F& field);

/// Lagrange interpolation projectors. Throws DegenerateQ when two eigenvalues coincide.
template <class F>
Projectors<F> spectral_projectors(const BraidTensor<F>& rhat, const IndexData& idx, const F& field);

/// R-hat^{-1} = sum_alpha mu_alpha^{-1} P_alpha.
template <class F>
BraidTensor<F> rhat_inverse(const Projectors<F>& p, const IndexData& idx, const F& field);

class DegenerateQ : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result of an identity check on tensor components.
struct TensorWitness {
    std::vector<int> component;
    std::string detail;
};

/// (R(x)1)(1(x)R)(R(x)1) = (1(x)R)(R(x)1)(1(x)R) on all N^3 basis vectors.
template <class F>
std::optional<TensorWitness> verify_braid(const BraidTensor<F>& rhat, const IndexData& idx);

/// (R - q)(R + q^{-1})(R - q^{1-N}) = 0.
template <class F>
std::optional<TensorWitness> verify_characteristic(const BraidTensor<F>& rhat, const IndexData& idx,
                                                   const F& field);

/// Exact trace of a projector (its rank, as a field element).
template <class F>
typename F::scalar_type trace(const BraidTensor<F>& p, const IndexData& idx, const F& field);

/// Rank by exact Gaussian elimination.
template <class F>
std::size_t rank(const BraidTensor<F>& m, const IndexData& idx, const F& field);

/// g_{mn} g^{mn} = sum_i q^{-2 rho_i}.
template <class F>
typename F::scalar_type metric_norm(const IndexData& idx, const F& field);

// JSON form {"N": int, "entries": [[i,j,k,l,"scalar"], ...]}.
std::string braid_to_json(const BraidTensor<SymbolicField>& t);
BraidTensor<SymbolicField> braid_from_json(const std::string& text);

}  // namespace qeuclid

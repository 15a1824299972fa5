#pragma once

// Extended coordinate algebra of R^N_q: generators Lambda^{+-1}, K^{+-1} (even N),
// r_n^{+-1}..r_1^{+-1} and x^i, kept in the normal order
//   Lambda^a K^b r_n^{c_n} ... r_1^{c_1} x^{n}... x^{-n}
// and reduced with rewrite rules derived from the antisymmetric projector.

#include "qeuclid/braid.hpp"
#include "qeuclid/text.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

namespace qeuclid {

/// Exponent vector: [Lambda, K, r_n, ..., r_1, x at positions 0..N-1].
using Monomial = std::vector<int>;

template <class F>
class Element {
public:
    using T = typename F::scalar_type;

    Element() = default;

    const std::map<Monomial, T>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(const Monomial& m, const T& c);

    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    Element operator-() const;
    Element scaled(const T& c) const;

    friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }

private:
    std::map<Monomial, T> terms_;
};

class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// x^i x^j (i < j, wrong order) rewritten as a combination of ordered pairs.
template <class F>
struct XRule {
    using T = typename F::scalar_type;
    int i = 0;
    int j = 0;
    /// (coefficient, (k, l)) with x^k x^l in normal order.
    std::vector<std::pair<T, std::array<int, 2>>> rhs;
    bool swap = false;  // rhs is the single term c x^j x^i
};

struct OverlapWitness {
    int i, j, k;
    std::string lhs, rhs;
};

template <class F>
class Algebra {
public:
    using T = typename F::scalar_type;
    using Elem = Element<F>;

    Algebra(const IndexData& idx, const F& field, const BraidTensor<F>& anti);

    const IndexData& index() const { return idx_; }
    const F& field() const { return field_; }
    const MetricTensor<F>& metric() const { return g_; }

    // Monomial layout.
    std::size_t width() const { return 2 + static_cast<std::size_t>(idx_.n()) + idx_.size(); }
    std::size_t r_slot(int i) const { return 2 + static_cast<std::size_t>(idx_.n() - i); }
    std::size_t x_slot(int label) const { return 2 + static_cast<std::size_t>(idx_.n()) + idx_.pos(label); }
    std::size_t x_begin() const { return 2 + static_cast<std::size_t>(idx_.n()); }
    bool has_kappa() const { return !idx_.odd(); }

    // Generators.
    Elem one() const { return constant(field_.from_int(1)); }
    Elem constant(const T& c) const;
    Elem x(int label, int e = 1) const;
    Elem lambda(int e = 1) const;
    Elem kappa(int e = 1) const;
    /// r_i^e for i >= 1; for odd N, r_0 is x^0.
    Elem r(int i, int e = 1) const;
    Elem monomial(const Monomial& m, const T& c) const;
    /// Product of letters in the given order (x, L, K and r letters only).
    Elem word(const std::vector<Letter>& letters) const;

    /// r_i^2 = sum_{k,l=-i..i} g_{kl} x^k x^l as an x-polynomial.
    Elem radius_sq(int i) const;

    Elem mul(const Elem& a, const Elem& b) const;
    Elem commutator(const Elem& a, const Elem& b) const { return mul(a, b) - mul(b, a); }
    Elem pow(const Elem& a, int e) const;

    /// Exact zero test, clearing negative r-powers first.
    bool is_zero(const Elem& a) const;
    bool equal(const Elem& a, const Elem& b) const { return is_zero(a - b); }
    /// The scalar c with a = c, when a is a constant in disguise (e.g. r^{-2} times r^2 expanded).
    std::optional<T> constant_value(const Elem& a) const;

    /// Antilinear antihomomorphism with (x^i)* = g_{-i,i} x^{-i}, Lambda* = Lambda^{-1},
    /// K* = K, r_i* = r_i. Requires real q.
    Elem star(const Elem& a) const;

    std::string to_string(const Elem& a) const;
    Elem parse(std::string_view text) const;
    std::string monomial_string(const Monomial& m) const;

    /// q-exponent w with x^j r_i = q^w r_i x^j.
    static int r_weight(int j, int i);
    /// q-exponent with x^j K = q^w K x^j.
    static int kappa_weight(int j) { return j == 1 ? -1 : (j == -1 ? 1 : 0); }

    const std::map<std::array<int, 2>, XRule<F>>& x_rules() const { return rules_; }

    /// Resolves every degree-3 overlap x^i x^j x^k, i < j < k, along both rewrite paths.
    std::optional<OverlapWitness> check_confluence() const;

    /// Returns the first (i, j) with r_i^2 x^j != q^{2w} x^j r_i^2 under the x-rules.
    std::optional<std::array<int, 2>> check_radius_exchange() const;

    /// Degrees (Lambda, K, x) where r_i counts as x-degree 1.
    std::array<int, 3> degree(const Monomial& m) const;

    void set_exponent_cap(int cap) { cap_ = cap; }

private:
    using XPoly = std::map<std::vector<int>, T>;

    void derive_rules(const BraidTensor<F>& anti);
    XPoly append_x(const std::vector<int>& w, std::size_t p, int e) const;
    XPoly append_x(const XPoly& w, std::size_t p, int e) const;
    XPoly append_x_uncached(const std::vector<int>& w, std::size_t p, int e) const;
    Elem mono_mul(const Monomial& a, const Monomial& b) const;
    Elem expand_r(Elem a) const;
    /// r-monomial clearing every negative r-power of a, and (r-monomial) * a with r^m r^{-m} cancelled.
    Monomial r_clearing(const Elem& a) const;
    Elem times_bare(const Monomial& m, const Elem& a) const;
    void check_exponents(const Monomial& m) const;
    Elem letter(const Letter& l) const;
    Elem star_letter(const Letter& l) const;

    IndexData idx_;
    F field_;
    MetricTensor<F> g_;
    std::map<std::array<int, 2>, XRule<F>> rules_;
    std::vector<Elem> radius_sq_;  // index i = 1..n
    int cap_ = 64;

    struct CacheKey {
        std::vector<int> w;
        std::size_t p;
        int e;
        friend auto operator<=>(const CacheKey&, const CacheKey&) = default;
    };
    mutable std::map<CacheKey, XPoly> cache_;
    mutable std::shared_mutex cache_mutex_;
};

}  // namespace qeuclid

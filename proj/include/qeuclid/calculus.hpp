#pragma once

// The covariant differential calculi on R^N_q. Forms are stored with their
// algebra coefficients on the left:  sum f_w xi^{w_1} ... xi^{w_d},  d <= 2,
// and 2-forms are expanded in a fixed basis of the image of P_a.

#include "qeuclid/algebra.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qeuclid {

struct RadiusWitness {
    int i;
    int j;
    std::string residue;
};

enum class CalculusKind { unbarred, barred };

std::string to_string(CalculusKind c);

template <class F>
class FormElement {
public:
    using Elem = Element<F>;
    using Word = std::vector<int>;

    FormElement() = default;
    explicit FormElement(int degree) : degree_(degree) {}

    int degree() const { return degree_; }
    const std::map<Word, Elem>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    void add(const Word& w, const Elem& coef);
    const Elem& coefficient(const Word& w) const;

    FormElement& operator+=(const FormElement& o);
    FormElement& operator-=(const FormElement& o);
    friend FormElement operator+(FormElement a, const FormElement& b) { return a += b; }
    friend FormElement operator-(FormElement a, const FormElement& b) { return a -= b; }
    FormElement scaled(const typename F::scalar_type& c) const;

    friend bool operator==(const FormElement& a, const FormElement& b)
    {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

private:
    void check_degree(const FormElement& o) const;

    int degree_ = 0;
    std::map<Word, Elem> terms_;
};

template <class F>
class Calculus {
public:
    using T = typename F::scalar_type;
    using Elem = Element<F>;
    using Form = FormElement<F>;
    /// xi^l f = sum_m A_m xi^m, keyed by m.
    using OneFormCoeffs = std::map<int, Elem>;

    /// Builds the calculus with x^i xi^j = C^{ij}_{kl} xi^k x^l where C = q R-hat for the
    /// unbarred calculus and C = q^{-1} R-hat^{-1} for the barred one.
    Calculus(const Algebra<F>& A, const BraidTensor<F>& rhat, const Projectors<F>& proj, CalculusKind kind);

    const Algebra<F>& algebra() const { return A_; }
    CalculusKind kind() const { return kind_; }
    const BraidTensor<F>& cross() const { return C_; }
    const BraidTensor<F>& cross_inverse() const { return Cinv_; }
    const BraidTensor<F>& anti() const { return anti_; }
    /// Ordered pairs (k, l) whose xi^k xi^l span the 2-forms.
    const std::vector<std::array<int, 2>>& basis() const { return basis_; }

    Form function(const Elem& f) const;
    Form xi(int l) const;
    Form one_form(const OneFormCoeffs& coeffs) const;
    /// f xi^k xi^l reduced to the canonical basis.
    Form wedge(const Elem& f, int k, int l) const;
    /// Re-expands every word in the canonical basis; a projector on 2-forms.
    Form wedge_reduce(const Form& w) const;

    Form mul(const Form& a, const Form& b) const;
    Form mul(const Elem& f, const Form& a) const { return mul(function(f), a); }
    Form mul(const Form& a, const Elem& f) const { return mul(a, function(f)); }
    Form commutator(const Form& a, const Elem& f) const { return mul(a, f) - mul(f, a); }

    /// xi^l f moved to coefficient-left form. f may contain Lambda, K and x^j with j >= 0 exponents.
    OneFormCoeffs xi_times(int l, const Elem& f) const;

    /// Exterior derivative on forms of degree 0 and 1.
    Form d(const Form& a) const;
    Form d(const Elem& f) const { return d(function(f)); }

    /// Right-coefficient form of a 1-form: a = sum_l xi^l g_l.
    OneFormCoeffs to_right(const Form& a) const;
    Form from_right(const OneFormCoeffs& g) const;

    bool is_zero(const Form& a) const;

    /// xi^j r_i^2 = q^{-+2} r_i^2 xi^j checked for every i, j. The exchange of the full radius
    /// r_n with 1-forms is adjoined from this factor; the inner radii fail it for |j| > i
    /// and have no exchange rule.
    std::optional<RadiusWitness> check_radius_exchange() const;

    std::string to_string(const Form& a) const;
    Form parse(std::string_view text) const;

private:
    OneFormCoeffs xi_times_word(int l, const Monomial& m, const T& c) const;
    void build_basis();
    void check_r_letters(const Monomial& m) const;
    long r_shift() const { return kind_ == CalculusKind::unbarred ? 1 : -1; }
    Form term_form(const ParsedTerm& t) const;

    const Algebra<F>& A_;
    CalculusKind kind_;
    BraidTensor<F> C_;
    BraidTensor<F> Cinv_;
    BraidTensor<F> anti_;
    std::vector<std::array<int, 2>> basis_;
    /// Expansion of xi^k xi^l in the basis: (k, l) -> [(basis index, coefficient)].
    std::map<std::array<int, 2>, std::vector<std::pair<std::size_t, T>>> reduce_;
};

/// Image under the star structure of a word of x- and xi-letters taken in one calculus,
/// evaluated in the conjugate calculus: (xi^i)* = g_{-i,i} xi-bar^{-i} and vice versa.
template <class F>
FormElement<F> conjugate_word(const std::vector<Letter>& letters, const typename F::scalar_type& coeff,
                              const Calculus<F>& target);

/// Star of a form given in `source`, evaluated in `target` (the other calculus).
template <class F>
FormElement<F> conjugate(const FormElement<F>& a, const Calculus<F>& source, const Calculus<F>& target);

}  // namespace qeuclid

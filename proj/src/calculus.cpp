#include "qeuclid/calculus.hpp"

#include "qeuclid/linalg.hpp"

#include <algorithm>

namespace qeuclid {

std::string to_string(CalculusKind c) { return c == CalculusKind::unbarred ? "unbarred" : "barred"; }

template <class F>
void FormElement<F>::check_degree(const FormElement& o) const
{
    if (o.degree_ != degree_ && !o.terms_.empty() && !terms_.empty()) {
        throw AlgebraError("adding forms of degree " + std::to_string(degree_) + " and " +
                           std::to_string(o.degree_));
    }
}

template <class F>
void FormElement<F>::add(const Word& w, const Elem& coef)
{
    if (coef.empty()) {
        return;
    }
    if (static_cast<int>(w.size()) != degree_) {
        if (!terms_.empty()) {
            throw AlgebraError("form word of length " + std::to_string(w.size()) + " in a " +
                               std::to_string(degree_) + "-form");
        }
        degree_ = static_cast<int>(w.size());
    }
    auto [it, inserted] = terms_.try_emplace(w, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second.empty()) {
            terms_.erase(it);
        }
    }
}

template <class F>
const Element<F>& FormElement<F>::coefficient(const Word& w) const
{
    static const Elem zero;
    auto it = terms_.find(w);
    return it == terms_.end() ? zero : it->second;
}

template <class F>
FormElement<F>& FormElement<F>::operator+=(const FormElement& o)
{
    check_degree(o);
    if (terms_.empty()) {
        degree_ = o.degree_;
    }
    for (const auto& [w, c] : o.terms_) {
        add(w, c);
    }
    return *this;
}

template <class F>
FormElement<F>& FormElement<F>::operator-=(const FormElement& o)
{
    check_degree(o);
    if (terms_.empty()) {
        degree_ = o.degree_;
    }
    for (const auto& [w, c] : o.terms_) {
        add(w, -c);
    }
    return *this;
}

template <class F>
FormElement<F> FormElement<F>::scaled(const typename F::scalar_type& c) const
{
    FormElement out(degree_);
    for (const auto& [w, e] : terms_) {
        out.add(w, e.scaled(c));
    }
    return out;
}

template <class F>
Calculus<F>::Calculus(const Algebra<F>& A, const BraidTensor<F>& rhat, const Projectors<F>& proj,
                      CalculusKind kind)
    : A_(A), kind_(kind), anti_(proj.anti)
{
    const auto& f = A.field();
    const auto& idx = A.index();
    BraidTensor<F> rinv = rhat_inverse(proj, idx, f);
    if (kind == CalculusKind::unbarred) {
        C_ = rhat.scaled(f.q_pow(1));
        Cinv_ = rinv.scaled(f.q_pow(-1));
    } else {
        C_ = rinv.scaled(f.q_pow(-1));
        Cinv_ = rhat.scaled(f.q_pow(1));
    }
    if (!(C_ * Cinv_ == BraidTensor<F>::identity(idx, f))) {
        throw AlgebraError("cross-relation matrix is not invertible");
    }
    build_basis();
}

template <class F>
void Calculus<F>::build_basis()
{
    const auto& idx = A_.index();
    const std::size_t N = idx.size();
    const auto& f = A_.field();
    auto row_of = [&](int k, int l) {
        std::vector<T> v(N * N, f.from_int(0));
        for (const auto& [ij, c] : anti_.row(k, l)) {
            v[idx.pos(ij[0]) * N + idx.pos(ij[1])] = c;
        }
        return v;
    };

    // Strictly ordered pairs first; they suffice generically.
    std::vector<std::array<int, 2>> candidates;
    for (int k : idx.labels()) {
        for (int l : idx.labels()) {
            if (k > l) {
                candidates.push_back({k, l});
            }
        }
    }
    for (int k : idx.labels()) {
        for (int l : idx.labels()) {
            if (k <= l) {
                candidates.push_back({k, l});
            }
        }
    }
    const std::size_t target = N * (N - 1) / 2;
    DenseMatrix<T> chosen;
    for (const auto& kl : candidates) {
        if (basis_.size() == target) {
            break;
        }
        DenseMatrix<T> trial = chosen;
        trial.push_back(row_of(kl[0], kl[1]));
        if (matrix_rank(trial) == trial.size()) {
            chosen = std::move(trial);
            basis_.push_back(kl);
        }
    }
    if (basis_.size() != target) {
        throw AlgebraError("2-form basis has " + std::to_string(basis_.size()) + " elements");
    }

    // Columns: basis rows, then every pair's row; pivots restricted to basis columns.
    const std::size_t B = basis_.size();
    std::vector<std::array<int, 2>> pairs;
    for (int k : idx.labels()) {
        for (int l : idx.labels()) {
            pairs.push_back({k, l});
        }
    }
    DenseMatrix<T> m(N * N, std::vector<T>(B + pairs.size(), f.from_int(0)));
    for (std::size_t b = 0; b < B; ++b) {
        for (std::size_t c = 0; c < N * N; ++c) {
            m[c][b] = chosen[b][c];
        }
    }
    for (std::size_t t = 0; t < pairs.size(); ++t) {
        auto v = row_of(pairs[t][0], pairs[t][1]);
        for (std::size_t c = 0; c < N * N; ++c) {
            m[c][B + t] = v[c];
        }
    }
    std::vector<std::size_t> order(B);
    for (std::size_t b = 0; b < B; ++b) {
        order[b] = b;
    }
    auto pivots = row_reduce(m, order);
    for (std::size_t r = B; r < m.size(); ++r) {
        for (std::size_t t = 0; t < pairs.size(); ++t) {
            if (!qeuclid::is_zero(m[r][B + t])) {
                throw AlgebraError("antisymmetric projector row outside the chosen span");
            }
        }
    }
    for (std::size_t t = 0; t < pairs.size(); ++t) {
        auto& entry = reduce_[pairs[t]];
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            if (!qeuclid::is_zero(m[r][B + t])) {
                entry.push_back({pivots[r], m[r][B + t]});
            }
        }
    }
}

template <class F>
void Calculus<F>::check_r_letters(const Monomial& m) const
{
    for (int i = 1; i < A_.index().n(); ++i) {
        if (m[A_.r_slot(i)] != 0) {
            throw AlgebraError("r" + std::to_string(i) + " has no monomial exchange with 1-forms");
        }
    }
}

template <class F>
std::optional<RadiusWitness> Calculus<F>::check_radius_exchange() const
{
    const auto& idx = A_.index();
    const auto& f = A_.field();
    for (int i = 1; i <= idx.n(); ++i) {
        Elem Q = A_.radius_sq(i);
        for (int j : idx.labels()) {
            // xi^j r_i^2 against the exchange factor of the full radius, q^{-+2}
            Form lhs = mul(xi(j), Q);
            Form rhs = mul(Q, xi(j)).scaled(f.q_pow(-2 * r_shift()));
            if (!is_zero(lhs - rhs)) {
                return RadiusWitness{i, j, to_string(lhs - rhs)};
            }
        }
    }
    return std::nullopt;
}

template <class F>
FormElement<F> Calculus<F>::function(const Elem& f) const
{
    Form out(0);
    out.add({}, f);
    return out;
}

template <class F>
FormElement<F> Calculus<F>::xi(int l) const
{
    if (!A_.index().valid(l)) {
        throw AlgebraError("no 1-form xi" + std::to_string(l));
    }
    Form out(1);
    out.add({l}, A_.one());
    return out;
}

template <class F>
FormElement<F> Calculus<F>::one_form(const OneFormCoeffs& coeffs) const
{
    Form out(1);
    for (const auto& [l, c] : coeffs) {
        out.add({l}, c);
    }
    return out;
}

template <class F>
FormElement<F> Calculus<F>::wedge(const Elem& f, int k, int l) const
{
    Form out(2);
    for (const auto& [b, c] : reduce_.at({k, l})) {
        out.add({basis_[b][0], basis_[b][1]}, f.scaled(c));
    }
    return out;
}

template <class F>
FormElement<F> Calculus<F>::wedge_reduce(const Form& w) const
{
    if (w.degree() != 2) {
        return w;
    }
    Form out(2);
    for (const auto& [word, c] : w.terms()) {
        out += wedge(c, word[0], word[1]);
    }
    return out;
}

template <class F>
typename Calculus<F>::OneFormCoeffs Calculus<F>::xi_times_word(int l, const Monomial& m, const T& c) const
{
    const auto& idx = A_.index();
    const std::size_t xb = A_.x_begin();
    check_r_letters(m);
    OneFormCoeffs cur{{l, A_.one()}};
    for (std::size_t p = 0; p < idx.size(); ++p) {
        int e = m[xb + p];
        if (e < 0) {
            throw AlgebraError("1-forms do not pass inverse coordinates");
        }
        int j = idx.label(p);
        for (int rep = 0; rep < e; ++rep) {
            OneFormCoeffs next;
            for (const auto& [mm, coef] : cur) {
                for (const auto& [kp, v] : Cinv_.row(mm, j)) {
                    auto& slot = next[kp[1]];
                    slot += A_.mul(coef, A_.x(kp[0])).scaled(v);
                }
            }
            cur.clear();
            for (auto& [k, v] : next) {
                if (!v.empty()) {
                    cur.emplace(k, std::move(v));
                }
            }
        }
    }
    Monomial prefix(A_.width(), 0);
    prefix[0] = m[0];
    prefix[1] = m[1];
    prefix[A_.r_slot(idx.n())] = m[A_.r_slot(idx.n())];
    T factor = c * A_.field().q_pow(static_cast<long>(m[1]) * Algebra<F>::kappa_weight(l) -
                                    r_shift() * m[A_.r_slot(idx.n())]);
    Elem pre = A_.monomial(prefix, factor);
    OneFormCoeffs out;
    for (const auto& [k, v] : cur) {
        Elem e = A_.mul(pre, v);
        if (!e.empty()) {
            out.emplace(k, std::move(e));
        }
    }
    return out;
}

template <class F>
typename Calculus<F>::OneFormCoeffs Calculus<F>::xi_times(int l, const Elem& f) const
{
    OneFormCoeffs out;
    for (const auto& [m, c] : f.terms()) {
        for (auto& [k, v] : xi_times_word(l, m, c)) {
            out[k] += v;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second.empty() ? out.erase(it) : std::next(it);
    }
    return out;
}

template <class F>
FormElement<F> Calculus<F>::mul(const Form& a, const Form& b) const
{
    if (a.degree() + b.degree() > 2) {
        throw AlgebraError("forms of degree above 2 are not represented");
    }
    Form out(a.degree() + b.degree());
    for (const auto& [wa, fa] : a.terms()) {
        for (const auto& [wb, fb] : b.terms()) {
            if (wa.empty()) {
                out.add(wb, A_.mul(fa, fb));
                continue;
            }
            // Move fb to the left through the 1-forms of wa, last one first.
            std::map<std::vector<int>, Elem> moving{{{}, fb}};
            for (auto it = wa.rbegin(); it != wa.rend(); ++it) {
                std::map<std::vector<int>, Elem> next;
                for (const auto& [tail, coef] : moving) {
                    for (auto& [m, v] : xi_times(*it, coef)) {
                        std::vector<int> w{m};
                        w.insert(w.end(), tail.begin(), tail.end());
                        next[w] += v;
                    }
                }
                moving = std::move(next);
            }
            for (const auto& [w, coef] : moving) {
                std::vector<int> full = w;
                full.insert(full.end(), wb.begin(), wb.end());
                Elem c = A_.mul(fa, coef);
                if (full.size() == 2) {
                    out += wedge(c, full[0], full[1]);
                } else {
                    out.add(full, c);
                }
            }
        }
    }
    return out;
}

template <class F>
FormElement<F> Calculus<F>::d(const Form& a) const
{
    const auto& idx = A_.index();
    const auto& f = A_.field();
    if (a.degree() >= 2) {
        throw AlgebraError("d on 2-forms is outside the represented degrees");
    }
    Form out(a.degree() + 1);
    for (const auto& [w, coef] : a.terms()) {
        for (const auto& [m, c] : coef.terms()) {
            if (m[1] != 0) {
                throw AlgebraError("d is not defined on K");
            }
            for (int i = 1; i <= idx.n(); ++i) {
                if (m[A_.r_slot(i)] != 0) {
                    throw AlgebraError("d of r-localized elements is out of scope");
                }
            }
            // Lambda d = q d Lambda (unbarred), Lambda dbar = q^{-1} dbar Lambda (barred).
            long lam = m[0];
            T factor = c * f.q_pow(kind_ == CalculusKind::unbarred ? -lam : lam);
            Monomial lm(A_.width(), 0);
            lm[0] = m[0];
            Elem lead = A_.monomial(lm, factor);
            std::vector<int> letters;
            for (std::size_t p = 0; p < idx.size(); ++p) {
                int e = m[A_.x_begin() + p];
                if (e < 0) {
                    throw AlgebraError("d of inverse coordinates is out of scope");
                }
                for (int r = 0; r < e; ++r) {
                    letters.push_back(idx.label(p));
                }
            }
            for (std::size_t t = 0; t < letters.size(); ++t) {
                Elem left = lead;
                for (std::size_t s = 0; s < t; ++s) {
                    left = A_.mul(left, A_.x(letters[s]));
                }
                Elem right = A_.one();
                for (std::size_t s = t + 1; s < letters.size(); ++s) {
                    right = A_.mul(right, A_.x(letters[s]));
                }
                for (const auto& [k, v] : xi_times(letters[t], right)) {
                    Elem cc = A_.mul(left, v);
                    if (w.empty()) {
                        out.add({k}, cc);
                    } else {
                        out += wedge(cc, k, w[0]);
                    }
                }
            }
        }
    }
    return out;
}

template <class F>
typename Calculus<F>::OneFormCoeffs Calculus<F>::to_right(const Form& a) const
{
    if (a.degree() != 1) {
        throw AlgebraError("to_right expects a 1-form");
    }
    const auto& idx = A_.index();
    OneFormCoeffs out;
    for (const auto& [w, coef] : a.terms()) {
        for (const auto& [m, c] : coef.terms()) {
            check_r_letters(m);
            // Push letters right through xi, innermost (rightmost) letter first.
            std::map<int, Elem> cur{{w[0], A_.one()}};
            for (std::size_t p = idx.size(); p-- > 0;) {
                int e = m[A_.x_begin() + p];
                if (e < 0) {
                    throw AlgebraError("1-forms do not pass inverse coordinates");
                }
                int i = idx.label(p);
                for (int rep = 0; rep < e; ++rep) {
                    std::map<int, Elem> next;
                    for (const auto& [j, g] : cur) {
                        for (const auto& [kl, v] : C_.row(i, j)) {
                            next[kl[0]] += A_.mul(A_.x(kl[1]), g).scaled(v);
                        }
                    }
                    cur = std::move(next);
                }
            }
            Monomial prefix(A_.width(), 0);
            prefix[0] = m[0];
            prefix[1] = m[1];
            prefix[A_.r_slot(idx.n())] = m[A_.r_slot(idx.n())];
            for (auto& [j, g] : cur) {
                // Lambda^a K^b r^c xi^j = q^{-b w(j)} q^{+-c} xi^j Lambda^a K^b r^c
                T factor = c * A_.field().q_pow(-static_cast<long>(m[1]) * Algebra<F>::kappa_weight(j) +
                                                r_shift() * m[A_.r_slot(idx.n())]);
                out[j] += A_.mul(A_.monomial(prefix, factor), g);
            }
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = it->second.empty() ? out.erase(it) : std::next(it);
    }
    return out;
}

template <class F>
FormElement<F> Calculus<F>::from_right(const OneFormCoeffs& g) const
{
    Form out(1);
    for (const auto& [l, c] : g) {
        out += mul(xi(l), c);
    }
    return out;
}

template <class F>
bool Calculus<F>::is_zero(const Form& a) const
{
    for (const auto& [w, c] : a.terms()) {
        if (!A_.is_zero(c)) {
            return false;
        }
    }
    return true;
}

template <class F>
std::string Calculus<F>::to_string(const Form& a) const
{
    if (a.empty()) {
        return "0";
    }
    const char* name = kind_ == CalculusKind::unbarred ? "xi" : "xibar";
    std::string out;
    for (const auto& [w, c] : a.terms()) {
        std::string suffix;
        for (int l : w) {
            suffix += std::string("*") + name + std::to_string(l);
        }
        std::string coef = A_.to_string(c);
        if (!out.empty()) {
            out += " + ";
        }
        if (w.empty()) {
            out += coef;
        } else if (c.size() == 1) {
            out += coef + suffix;
        } else {
            out += "[" + coef + "]" + suffix;
        }
    }
    return out;
}

template <class F>
FormElement<F> Calculus<F>::term_form(const ParsedTerm& t) const
{
    Form piece = function(A_.constant(A_.field().lift(t.coeff)));
    for (const auto& l : t.letters) {
        if (l.gen == Gen::xi || l.gen == Gen::xibar) {
            if ((l.gen == Gen::xibar) != (kind_ == CalculusKind::barred)) {
                throw AlgebraError("1-form letter from the other calculus");
            }
            if (l.exp < 0) {
                throw AlgebraError("negative power of a 1-form");
            }
            for (int r = 0; r < l.exp; ++r) {
                piece = mul(piece, xi(l.label));
            }
        } else {
            piece = mul(piece, A_.word({l}));
        }
    }
    return piece;
}

template <class F>
FormElement<F> Calculus<F>::parse(std::string_view text) const
{
    // Top-level chunks are separated by " + "; a chunk "[a + b]*tail" expands to a*tail + b*tail.
    std::vector<std::string> chunks;
    std::string cur;
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        depth += (ch == '(' || ch == '[') ? 1 : (ch == ')' || ch == ']') ? -1 : 0;
        if (depth == 0 && ch == '+' && !cur.empty() && cur.back() == ' ') {
            chunks.push_back(cur);
            cur.clear();
            continue;
        }
        cur.push_back(ch);
    }
    if (depth != 0) {
        throw std::invalid_argument("unbalanced brackets in form text");
    }
    chunks.push_back(cur);

    Form out;
    bool started = false;
    auto accumulate = [&](const Form& f) {
        if (!started) {
            out = f;
            started = true;
        } else {
            out += f;
        }
    };
    for (const auto& chunk : chunks) {
        auto open = chunk.find('[');
        if (open == std::string::npos) {
            for (const auto& t : parse_terms(chunk)) {
                accumulate(term_form(t));
            }
            continue;
        }
        auto close = chunk.rfind(']');
        std::string sign = chunk.substr(0, open);
        bool negative = false;
        for (char ch : sign) {
            if (ch == '-') {
                negative = !negative;
            } else if (ch != ' ') {
                throw std::invalid_argument("unexpected text before '[': " + sign);
            }
        }
        std::string inner = chunk.substr(open + 1, close - open - 1);
        std::string tail = chunk.substr(close + 1);
        auto tails = parse_terms("1" + tail);
        if (tails.size() != 1) {
            throw std::invalid_argument("bracketed coefficient must multiply a single word");
        }
        for (auto t : parse_terms(inner)) {
            t.coeff *= tails[0].coeff;
            if (negative) {
                t.coeff = -t.coeff;
            }
            t.letters.insert(t.letters.end(), tails[0].letters.begin(), tails[0].letters.end());
            accumulate(term_form(t));
        }
    }
    return started ? out : Form(0);
}

template <class F>
FormElement<F> conjugate_word(const std::vector<Letter>& letters, const typename F::scalar_type& coeff,
                              const Calculus<F>& target)
{
    const auto& A = target.algebra();
    const auto& g = A.metric();
    FormElement<F> out = target.function(A.constant(A.field().conj(coeff)));
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
        const Letter& l = *it;
        if (l.gen == Gen::xi || l.gen == Gen::xibar) {
            auto c = g.at(-l.label, l.label);
            for (int r = 0; r < l.exp; ++r) {
                out = target.mul(out, target.xi(-l.label)).scaled(c);
            }
        } else {
            out = target.mul(out, A.star(A.word({l})));
        }
    }
    return out;
}

template <class F>
FormElement<F> conjugate(const FormElement<F>& a, const Calculus<F>& source, const Calculus<F>& target)
{
    if (source.kind() == target.kind()) {
        throw AlgebraError("conjugation maps one calculus to the other");
    }
    const auto& A = target.algebra();
    const auto& g = A.metric();
    FormElement<F> out(a.degree());
    for (const auto& [w, c] : a.terms()) {
        FormElement<F> t = target.function(A.one());
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            t = target.mul(t, target.xi(-*it)).scaled(g.at(-*it, *it));
        }
        out += target.mul(t, A.star(c));
    }
    return out;
}

#define QEUCLID_INSTANTIATE(F)                                                                              \
    template class FormElement<F>;                                                                          \
    template class Calculus<F>;                                                                             \
    template FormElement<F> conjugate_word<F>(const std::vector<Letter>&, const F::scalar_type&,            \
                                              const Calculus<F>&);                                          \
    template FormElement<F> conjugate<F>(const FormElement<F>&, const Calculus<F>&, const Calculus<F>&);

QEUCLID_INSTANTIATE(SymbolicField)
QEUCLID_INSTANTIATE(NumericField)

#undef QEUCLID_INSTANTIATE

}  // namespace qeuclid

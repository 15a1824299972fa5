#include "qeuclid/algebra.hpp"

#include "qeuclid/linalg.hpp"

#include <algorithm>
#include <cstdlib>

namespace qeuclid {

template <class F>
void Element<F>::add_term(const Monomial& m, const T& c)
{
    if (qeuclid::is_zero(c)) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (qeuclid::is_zero(it->second)) {
            terms_.erase(it);
        }
    }
}

template <class F>
Element<F>& Element<F>::operator+=(const Element& o)
{
    for (const auto& [m, c] : o.terms_) {
        add_term(m, c);
    }
    return *this;
}

template <class F>
Element<F>& Element<F>::operator-=(const Element& o)
{
    for (const auto& [m, c] : o.terms_) {
        add_term(m, -c);
    }
    return *this;
}

template <class F>
Element<F> Element<F>::operator-() const
{
    Element out;
    for (const auto& [m, c] : terms_) {
        out.terms_.emplace(m, -c);
    }
    return out;
}

template <class F>
Element<F> Element<F>::scaled(const T& c) const
{
    Element out;
    if (qeuclid::is_zero(c)) {
        return out;
    }
    for (const auto& [m, v] : terms_) {
        out.terms_.emplace(m, v * c);
    }
    return out;
}

template <class F>
Algebra<F>::Algebra(const IndexData& idx, const F& field, const BraidTensor<F>& anti)
    : idx_(idx), field_(field), g_(build_metric(idx, field))
{
    derive_rules(anti);
    radius_sq_.resize(static_cast<std::size_t>(idx_.n()) + 1);
    for (int i = 1; i <= idx_.n(); ++i) {
        Elem q;
        for (int k : idx_.labels()) {
            if (std::abs(k) <= i) {
                q += mul(x(k), x(-k)).scaled(g_.at(k, -k));
            }
        }
        radius_sq_[static_cast<std::size_t>(i)] = q;
    }
}

template <class F>
void Algebra<F>::derive_rules(const BraidTensor<F>& anti)
{
    const std::size_t N = idx_.size();
    auto col = [&](int k, int l) { return idx_.pos(k) * N + idx_.pos(l); };

    std::vector<std::size_t> order;
    std::vector<std::size_t> in_order;
    for (int k : idx_.labels()) {
        for (int l : idx_.labels()) {
            (k < l ? order : in_order).push_back(col(k, l));
        }
    }
    std::sort(order.begin(), order.end());
    const std::size_t disorder = order.size();
    order.insert(order.end(), in_order.begin(), in_order.end());

    DenseMatrix<T> m;
    for (int i : idx_.labels()) {
        for (int j : idx_.labels()) {
            auto row = anti.row(i, j);
            if (row.empty()) {
                continue;
            }
            std::vector<T> v(N * N, field_.from_int(0));
            for (const auto& [kl, c] : row) {
                v[col(kl[0], kl[1])] = c;
            }
            m.push_back(std::move(v));
        }
    }
    auto pivots = row_reduce(m, order);
    if (pivots.size() != disorder) {
        throw AlgebraError("relation space has rank " + std::to_string(pivots.size()) + ", expected " +
                           std::to_string(disorder));
    }
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        std::size_t pc = pivots[r];
        if (std::find(order.begin(), order.begin() + static_cast<long>(disorder), pc) ==
            order.begin() + static_cast<long>(disorder)) {
            throw AlgebraError("relation pivot on an ordered pair");
        }
        XRule<F> rule;
        rule.i = idx_.label(pc / N);
        rule.j = idx_.label(pc % N);
        for (std::size_t c : in_order) {
            if (!qeuclid::is_zero(m[r][c])) {
                rule.rhs.push_back({-m[r][c], {idx_.label(c / N), idx_.label(c % N)}});
            }
        }
        rule.swap = rule.rhs.size() == 1 && rule.rhs[0].second[0] == rule.j && rule.rhs[0].second[1] == rule.i;
        rules_.emplace(std::array<int, 2>{rule.i, rule.j}, std::move(rule));
    }
}

template <class F>
int Algebra<F>::r_weight(int j, int i)
{
    if (std::abs(j) <= i) {
        return 0;
    }
    return j < -i ? 1 : -1;
}

template <class F>
void Algebra<F>::check_exponents(const Monomial& m) const
{
    for (std::size_t s = 0; s < m.size(); ++s) {
        if (std::abs(m[s]) > cap_) {
            throw AlgebraError("exponent cap " + std::to_string(cap_) + " exceeded");
        }
    }
    if (m[1] != 0 && !has_kappa()) {
        throw AlgebraError("K is only adjoined for even N");
    }
    for (std::size_t p = 0; p < idx_.size(); ++p) {
        int label = idx_.label(p);
        if (m[x_begin() + p] < 0 && !idx_.localized(label)) {
            throw AlgebraError("x" + std::to_string(label) + " is not invertible");
        }
    }
}

template <class F>
typename Algebra<F>::XPoly Algebra<F>::append_x(const std::vector<int>& w, std::size_t p, int e) const
{
    if (e == 0) {
        return XPoly{{w, field_.from_int(1)}};
    }
    CacheKey key{w, p, e};
    {
        std::shared_lock lock(cache_mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) {
            return it->second;
        }
    }
    XPoly out = append_x_uncached(w, p, e);
    std::unique_lock lock(cache_mutex_);
    cache_.emplace(std::move(key), out);
    return out;
}

template <class F>
typename Algebra<F>::XPoly Algebra<F>::append_x(const XPoly& w, std::size_t p, int e) const
{
    XPoly out;
    for (const auto& [v, c] : w) {
        for (const auto& [u, d] : append_x(v, p, e)) {
            T val = c * d;
            auto [it, inserted] = out.try_emplace(u, val);
            if (!inserted) {
                it->second += val;
                if (qeuclid::is_zero(it->second)) {
                    out.erase(it);
                }
            }
        }
    }
    return out;
}

template <class F>
typename Algebra<F>::XPoly Algebra<F>::append_x_uncached(const std::vector<int>& w, std::size_t p, int e) const
{
    std::size_t t = w.size();
    while (t > 0 && w[t - 1] == 0) {
        --t;
    }
    if (t == 0 || t - 1 <= p) {
        std::vector<int> out = w;
        out[p] += e;
        if (std::abs(out[p]) > cap_) {
            throw AlgebraError("exponent cap " + std::to_string(cap_) + " exceeded");
        }
        if (out[p] < 0 && !idx_.localized(idx_.label(p))) {
            throw AlgebraError("x" + std::to_string(idx_.label(p)) + " is not invertible");
        }
        return XPoly{{out, field_.from_int(1)}};
    }
    --t;
    const XRule<F>& rule = rules_.at({idx_.label(t), idx_.label(p)});
    const int a = w[t];
    std::vector<int> rest = w;
    if (rule.swap) {
        rest[t] = 0;
        XPoly moved = append_x(append_x(rest, p, e), t, a);
        T c = rule.rhs[0].first.pow(static_cast<long>(a) * e);
        for (auto& [u, d] : moved) {
            d *= c;
        }
        return moved;
    }
    if (a < 1 || e < 1) {
        throw AlgebraError("negative power in a non-monomial exchange");
    }
    rest[t] = a - 1;
    XPoly out;
    for (const auto& [c, kl] : rule.rhs) {
        XPoly part = append_x(append_x(rest, idx_.pos(kl[0]), 1), idx_.pos(kl[1]), 1);
        for (const auto& [u, d] : part) {
            T val = c * d;
            auto [it, inserted] = out.try_emplace(u, val);
            if (!inserted) {
                it->second += val;
                if (qeuclid::is_zero(it->second)) {
                    out.erase(it);
                }
            }
        }
    }
    if (e > 1) {
        out = append_x(out, p, e - 1);
    }
    return out;
}

template <class F>
Element<F> Algebra<F>::mono_mul(const Monomial& a, const Monomial& b) const
{
    const std::size_t xb = x_begin();
    long qe = 0;
    int deg_a = 0;
    for (std::size_t s = 2; s < a.size(); ++s) {
        deg_a += a[s];
    }
    qe += static_cast<long>(b[0]) * deg_a;
    for (std::size_t p = 0; p < idx_.size(); ++p) {
        int ea = a[xb + p];
        if (ea == 0) {
            continue;
        }
        int j = idx_.label(p);
        qe += static_cast<long>(ea) * b[1] * kappa_weight(j);
        for (int i = 1; i <= idx_.n(); ++i) {
            int eb = b[r_slot(i)];
            if (eb != 0) {
                qe += static_cast<long>(ea) * eb * r_weight(j, i);
            }
        }
    }
    Monomial prefix(a.begin(), a.begin() + static_cast<long>(xb));
    for (std::size_t s = 0; s < xb; ++s) {
        prefix[s] += b[s];
    }
    XPoly w{{std::vector<int>(a.begin() + static_cast<long>(xb), a.end()), field_.q_pow(qe)}};
    for (std::size_t p = 0; p < idx_.size(); ++p) {
        if (b[xb + p] != 0) {
            w = append_x(w, p, b[xb + p]);
        }
    }
    Elem out;
    for (const auto& [v, c] : w) {
        Monomial m = prefix;
        m.insert(m.end(), v.begin(), v.end());
        check_exponents(m);
        out.add_term(m, c);
    }
    return out;
}

template <class F>
Element<F> Algebra<F>::expand_r(Elem a) const
{
    bool needed = false;
    for (const auto& [m, c] : a.terms()) {
        for (int i = 1; i <= idx_.n() && !needed; ++i) {
            needed = m[r_slot(i)] >= 2;
        }
    }
    if (!needed) {
        return a;
    }
    Elem out;
    const std::size_t xb = x_begin();
    for (const auto& [m, c] : a.terms()) {
        int hit = 0;
        for (int i = idx_.n(); i >= 1; --i) {
            if (m[r_slot(i)] >= 2) {
                hit = i;
                break;
            }
        }
        if (hit == 0) {
            out.add_term(m, c);
            continue;
        }
        Monomial prefix(m.begin(), m.begin() + static_cast<long>(xb));
        prefix[r_slot(hit)] -= 2;
        Monomial word(width(), 0);
        std::copy(m.begin() + static_cast<long>(xb), m.end(), word.begin() + static_cast<long>(xb));
        Elem expanded;
        for (const auto& [qm, qc] : radius_sq_[static_cast<std::size_t>(hit)].terms()) {
            Elem part = mono_mul(qm, word);
            for (const auto& [pm, pc] : part.terms()) {
                Monomial full = pm;
                for (std::size_t s = 0; s < xb; ++s) {
                    full[s] += prefix[s];
                }
                expanded.add_term(full, pc * qc * c);
            }
        }
        out += expand_r(std::move(expanded));
    }
    return out;
}

template <class F>
Element<F> Algebra<F>::constant(const T& c) const
{
    Elem out;
    out.add_term(Monomial(width(), 0), c);
    return out;
}

template <class F>
Element<F> Algebra<F>::monomial(const Monomial& m, const T& c) const
{
    if (m.size() != width()) {
        throw AlgebraError("monomial has wrong width");
    }
    check_exponents(m);
    Elem out;
    out.add_term(m, c);
    return expand_r(std::move(out));
}

template <class F>
Element<F> Algebra<F>::x(int label, int e) const
{
    Monomial m(width(), 0);
    m[x_slot(label)] = e;
    return monomial(m, field_.from_int(1));
}

template <class F>
Element<F> Algebra<F>::lambda(int e) const
{
    Monomial m(width(), 0);
    m[0] = e;
    return monomial(m, field_.from_int(1));
}

template <class F>
Element<F> Algebra<F>::kappa(int e) const
{
    Monomial m(width(), 0);
    m[1] = e;
    return monomial(m, field_.from_int(1));
}

template <class F>
Element<F> Algebra<F>::r(int i, int e) const
{
    if (i == 0 && idx_.odd()) {
        return x(0, e);
    }
    if (i < 1 || i > idx_.n()) {
        throw AlgebraError("no generator r" + std::to_string(i) + " for N = " + std::to_string(idx_.N()));
    }
    Monomial m(width(), 0);
    m[r_slot(i)] = e;
    return monomial(m, field_.from_int(1));
}

template <class F>
Element<F> Algebra<F>::radius_sq(int i) const
{
    if (i < 1 || i > idx_.n()) {
        throw AlgebraError("no radius r" + std::to_string(i));
    }
    return radius_sq_[static_cast<std::size_t>(i)];
}

template <class F>
Element<F> Algebra<F>::mul(const Elem& a, const Elem& b) const
{
    Elem out;
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            T c = ca * cb;
            Elem part = mono_mul(ma, mb);
            for (const auto& [m, v] : part.terms()) {
                out.add_term(m, v * c);
            }
        }
    }
    return expand_r(std::move(out));
}

template <class F>
Element<F> Algebra<F>::pow(const Elem& a, int e) const
{
    if (e < 0) {
        throw AlgebraError("negative powers of general elements are not represented");
    }
    Elem out = one();
    for (int k = 0; k < e; ++k) {
        out = mul(out, a);
    }
    return out;
}

template <class F>
Element<F> Algebra<F>::letter(const Letter& l) const
{
    switch (l.gen) {
    case Gen::lambda:
        return lambda(l.exp);
    case Gen::kappa:
        if (!has_kappa()) {
            throw AlgebraError("K is only adjoined for even N");
        }
        return kappa(l.exp);
    case Gen::r:
        return r(l.label, l.exp);
    case Gen::x:
        if (!idx_.valid(l.label)) {
            throw AlgebraError("no coordinate x" + std::to_string(l.label));
        }
        return x(l.label, l.exp);
    default:
        throw AlgebraError("form letter " + letter_string(l) + " in an algebra element");
    }
}

template <class F>
Element<F> Algebra<F>::word(const std::vector<Letter>& letters) const
{
    Elem out = one();
    for (const auto& l : letters) {
        out = mul(out, letter(l));
    }
    return out;
}

template <class F>
Monomial Algebra<F>::r_clearing(const Elem& a) const
{
    Monomial clear(width(), 0);
    for (const auto& [m, c] : a.terms()) {
        for (int i = 1; i <= idx_.n(); ++i) {
            clear[r_slot(i)] = std::max(clear[r_slot(i)], -m[r_slot(i)]);
        }
    }
    return clear;
}

template <class F>
Element<F> Algebra<F>::times_bare(const Monomial& m, const Elem& a) const
{
    // The bare monomial is not expanded first, so r^m r^{-m} cancels before r^2 is rewritten.
    Elem out;
    for (const auto& [am, c] : a.terms()) {
        Elem part = mono_mul(m, am);
        for (const auto& [pm, pc] : part.terms()) {
            out.add_term(pm, pc * c);
        }
    }
    return expand_r(std::move(out));
}

template <class F>
bool Algebra<F>::is_zero(const Elem& a) const
{
    if (a.empty()) {
        return true;
    }
    return times_bare(r_clearing(a), a).empty();
}

template <class F>
std::optional<typename Algebra<F>::T> Algebra<F>::constant_value(const Elem& a) const
{
    if (a.empty()) {
        return field_.from_int(0);
    }
    Monomial clear = r_clearing(a);
    Elem lhs = times_bare(clear, a);
    Elem unit = monomial(clear, field_.from_int(1));
    if (lhs.size() != unit.size()) {
        return std::nullopt;
    }
    const auto& [m, d] = *unit.terms().begin();
    auto it = lhs.terms().find(m);
    if (it == lhs.terms().end()) {
        return std::nullopt;
    }
    T c = it->second / d;
    if (!is_zero(a - constant(c))) {
        return std::nullopt;
    }
    return c;
}

template <class F>
Element<F> Algebra<F>::star_letter(const Letter& l) const
{
    switch (l.gen) {
    case Gen::lambda:
        return lambda(-l.exp);
    case Gen::kappa:
        return kappa(l.exp);
    case Gen::r:
        return r(l.label, l.exp);
    case Gen::x:
        return x(-l.label, l.exp).scaled(g_.at(-l.label, l.label).pow(l.exp));
    default:
        throw AlgebraError("form letter in an algebra element");
    }
}

template <class F>
Element<F> Algebra<F>::star(const Elem& a) const
{
    if (!field_.real_q()) {
        throw AlgebraError("star structure needs real q");
    }
    Elem out;
    for (const auto& [m, c] : a.terms()) {
        std::vector<Letter> letters;
        if (m[0] != 0) {
            letters.push_back({Gen::lambda, 0, m[0]});
        }
        if (m[1] != 0) {
            letters.push_back({Gen::kappa, 0, m[1]});
        }
        for (int i = idx_.n(); i >= 1; --i) {
            if (m[r_slot(i)] != 0) {
                letters.push_back({Gen::r, i, m[r_slot(i)]});
            }
        }
        for (std::size_t p = 0; p < idx_.size(); ++p) {
            if (m[x_begin() + p] != 0) {
                letters.push_back({Gen::x, idx_.label(p), m[x_begin() + p]});
            }
        }
        Elem t = constant(field_.conj(c));
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
            t = mul(t, star_letter(*it));
        }
        out += t;
    }
    return out;
}

template <class F>
std::string Algebra<F>::monomial_string(const Monomial& m) const
{
    std::vector<Letter> letters;
    if (m[0] != 0) {
        letters.push_back({Gen::lambda, 0, m[0]});
    }
    if (m[1] != 0) {
        letters.push_back({Gen::kappa, 0, m[1]});
    }
    for (int i = idx_.n(); i >= 1; --i) {
        if (m[r_slot(i)] != 0) {
            letters.push_back({Gen::r, i, m[r_slot(i)]});
        }
    }
    for (std::size_t p = 0; p < idx_.size(); ++p) {
        if (m[x_begin() + p] != 0) {
            letters.push_back({Gen::x, idx_.label(p), m[x_begin() + p]});
        }
    }
    std::string out;
    for (const auto& l : letters) {
        if (!out.empty()) {
            out += "*";
        }
        out += letter_string(l);
    }
    return out;
}

template <class F>
std::string Algebra<F>::to_string(const Elem& a) const
{
    if (a.empty()) {
        return "0";
    }
    std::string out;
    for (const auto& [m, c] : a.terms()) {
        if (!out.empty()) {
            out += " + ";
        }
        std::string mono = monomial_string(m);
        bool unit = c == field_.from_int(1);
        if (mono.empty()) {
            out += "(" + scalar_string(c) + ")";
        } else if (unit) {
            out += mono;
        } else {
            out += "(" + scalar_string(c) + ")*" + mono;
        }
    }
    return out;
}

template <class F>
Element<F> Algebra<F>::parse(std::string_view text) const
{
    Elem out;
    for (const auto& t : parse_terms(text)) {
        out += word(t.letters).scaled(field_.lift(t.coeff));
    }
    return out;
}

template <class F>
std::array<int, 3> Algebra<F>::degree(const Monomial& m) const
{
    int d = 0;
    for (std::size_t s = 2; s < m.size(); ++s) {
        d += m[s];
    }
    return {m[0], m[1], d};
}

template <class F>
std::optional<OverlapWitness> Algebra<F>::check_confluence() const
{
    std::vector<int> labels = idx_.labels();
    std::sort(labels.begin(), labels.end());
    auto single = [&](std::initializer_list<int> ls) {
        std::vector<int> w(idx_.size(), 0);
        for (int l : ls) {
            w[idx_.pos(l)] += 1;
        }
        return w;
    };
    auto render = [&](const XPoly& p) {
        Elem e;
        for (const auto& [v, c] : p) {
            Monomial m(x_begin(), 0);
            m.insert(m.end(), v.begin(), v.end());
            e.add_term(m, c);
        }
        return to_string(e);
    };
    for (std::size_t a = 0; a < labels.size(); ++a) {
        for (std::size_t b = a + 1; b < labels.size(); ++b) {
            for (std::size_t c = b + 1; c < labels.size(); ++c) {
                int i = labels[a], j = labels[b], k = labels[c];
                XPoly left;
                for (const auto& [coef, kl] : rules_.at({i, j}).rhs) {
                    XPoly part = append_x(single({kl[0], kl[1]}), idx_.pos(k), 1);
                    for (const auto& [v, d] : part) {
                        T val = coef * d;
                        auto [it, ins] = left.try_emplace(v, val);
                        if (!ins) {
                            it->second += val;
                            if (qeuclid::is_zero(it->second)) {
                                left.erase(it);
                            }
                        }
                    }
                }
                XPoly right;
                for (const auto& [coef, kl] : rules_.at({j, k}).rhs) {
                    XPoly part =
                        append_x(append_x(single({i}), idx_.pos(kl[0]), 1), idx_.pos(kl[1]), 1);
                    for (const auto& [v, d] : part) {
                        T val = coef * d;
                        auto [it, ins] = right.try_emplace(v, val);
                        if (!ins) {
                            it->second += val;
                            if (qeuclid::is_zero(it->second)) {
                                right.erase(it);
                            }
                        }
                    }
                }
                if (left != right) {
                    return OverlapWitness{i, j, k, render(left), render(right)};
                }
            }
        }
    }
    return std::nullopt;
}

template <class F>
std::optional<std::array<int, 2>> Algebra<F>::check_radius_exchange() const
{
    for (int i = 1; i <= idx_.n(); ++i) {
        for (int j : idx_.labels()) {
            Elem lhs = mul(x(j), radius_sq_[static_cast<std::size_t>(i)]);
            Elem rhs = mul(radius_sq_[static_cast<std::size_t>(i)], x(j)).scaled(field_.q_pow(2 * r_weight(j, i)));
            if (!(lhs == rhs)) {
                return std::array<int, 2>{i, j};
            }
        }
    }
    return std::nullopt;
}

template class Element<SymbolicField>;
template class Element<NumericField>;
template class Algebra<SymbolicField>;
template class Algebra<NumericField>;

}  // namespace qeuclid

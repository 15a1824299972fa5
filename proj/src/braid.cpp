#include "qeuclid/braid.hpp"

#include "qeuclid/linalg.hpp"

#include <json.hpp>

#include <map>
#include <sstream>

namespace qeuclid {

template <class F>
typename BraidTensor<F>::T BraidTensor<F>::at(int i, int j, int k, int l) const
{
    auto it = entries_.find({i, j, k, l});
    return it == entries_.end() ? T() : it->second;
}

template <class F>
void BraidTensor<F>::add(int i, int j, int k, int l, const T& v)
{
    if (qeuclid::is_zero(v)) {
        return;
    }
    Key key{i, j, k, l};
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        entries_.emplace(key, v);
        return;
    }
    it->second += v;
    if (qeuclid::is_zero(it->second)) {
        entries_.erase(it);
    }
}

template <class F>
void BraidTensor<F>::set(int i, int j, int k, int l, const T& v)
{
    if (qeuclid::is_zero(v)) {
        entries_.erase({i, j, k, l});
    } else {
        entries_[{i, j, k, l}] = v;
    }
}

template <class F>
BraidTensor<F> BraidTensor<F>::identity(const IndexData& idx, const F& field)
{
    BraidTensor out(idx);
    for (int i : idx.labels()) {
        for (int j : idx.labels()) {
            out.add(i, j, i, j, field.from_int(1));
        }
    }
    return out;
}

template <class F>
BraidTensor<F> BraidTensor<F>::operator+(const BraidTensor& o) const
{
    BraidTensor out = *this;
    for (const auto& [k, v] : o.entries_) {
        out.add(k[0], k[1], k[2], k[3], v);
    }
    return out;
}

template <class F>
BraidTensor<F> BraidTensor<F>::operator-(const BraidTensor& o) const
{
    BraidTensor out = *this;
    for (const auto& [k, v] : o.entries_) {
        out.add(k[0], k[1], k[2], k[3], -v);
    }
    return out;
}

template <class F>
BraidTensor<F> BraidTensor<F>::operator*(const BraidTensor& o) const
{
    std::map<std::array<int, 2>, std::vector<std::pair<std::array<int, 2>, T>>> rows;
    for (const auto& [k, v] : o.entries_) {
        rows[{k[0], k[1]}].push_back({{k[2], k[3]}, v});
    }
    BraidTensor out;
    out.N_ = N_;
    for (const auto& [k, v] : entries_) {
        auto it = rows.find({k[2], k[3]});
        if (it == rows.end()) {
            continue;
        }
        for (const auto& [col, w] : it->second) {
            out.add(k[0], k[1], col[0], col[1], v * w);
        }
    }
    return out;
}

template <class F>
BraidTensor<F> BraidTensor<F>::scaled(const T& c) const
{
    BraidTensor out;
    out.N_ = N_;
    if (qeuclid::is_zero(c)) {
        return out;
    }
    for (const auto& [k, v] : entries_) {
        out.entries_.emplace(k, v * c);
    }
    return out;
}

template <class F>
BraidTensor<F> BraidTensor<F>::transposed() const
{
    BraidTensor out;
    out.N_ = N_;
    for (const auto& [k, v] : entries_) {
        out.entries_.emplace(Key{k[2], k[3], k[0], k[1]}, v);
    }
    return out;
}

template <class F>
std::vector<std::pair<std::array<int, 2>, typename BraidTensor<F>::T>> BraidTensor<F>::row(int i, int j) const
{
    std::vector<std::pair<std::array<int, 2>, T>> out;
    for (auto it = entries_.lower_bound({i, j, INT32_MIN, INT32_MIN}); it != entries_.end(); ++it) {
        if (it->first[0] != i || it->first[1] != j) {
            break;
        }
        out.push_back({{it->first[2], it->first[3]}, it->second});
    }
    return out;
}

template <class F>
typename MetricTensor<F>::T MetricTensor<F>::at(int i, int j) const
{
    auto it = entries.find({i, j});
    return it == entries.end() ? T() : it->second;
}

template <class F>
MetricTensor<F> build_metric(const IndexData& idx, const F& field)
{
    MetricTensor<F> g;
    for (int i : idx.labels()) {
        g.entries[{i, -i}] = field.s_pow(-idx.rho2(i));
    }
    return g;
}

template <class F>
BraidTensor<F> build_rhat(const IndexData& idx, const F& field)
{
    using T = typename F::scalar_type;
    // R = sum R^{ac}_{bd} E_ab (x) E_cd in FRT form; R-hat^{ij}_{kl} = R^{ji}_{kl}.
    std::map<std::array<int, 4>, T> r;
    auto add = [&](int a, int b, int c, int d, const T& v) {
        auto [it, fresh] = r.try_emplace({a, c, b, d}, v);
        if (!fresh) {
            it->second += v;
        }
    };
    const T q = field.q_pow(1);
    const T qinv = field.q_pow(-1);
    const T k = q - qinv;
    const auto& labels = idx.labels();
    for (int a : labels) {
        add(a, a, a, a, a == 0 ? field.from_int(1) : q);
        for (int c : labels) {
            if (c != a && c != -a) {
                add(a, a, c, c, field.from_int(1));
            }
        }
        if (a != 0) {
            add(-a, -a, a, a, qinv);
        }
        for (int b : labels) {
            if (a > b) {
                add(a, b, b, a, k);
                add(a, b, -a, -b, -(k * field.s_pow(idx.rho2(a) - idx.rho2(b))));
            }
        }
    }
    BraidTensor<F> out(idx);
    for (const auto& [key, v] : r) {
        out.add(key[1], key[0], key[2], key[3], v);
    }
    return out;
}

template <class F>
std::array<typename F::scalar_type, 3> rhat_eigenvalues(const IndexData& idx, const F& field)
{
    return {field.q_pow(1), -field.q_pow(-1), field.q_pow(1 - idx.N())};
}

template <class F>
Projectors<F> spectral_projectors(const BraidTensor<F>& rhat, const IndexData& idx, const F& field)
{
    using T = typename F::scalar_type;
    auto mu = rhat_eigenvalues(idx, field);
    const auto one = BraidTensor<F>::identity(idx, field);
    std::array<BraidTensor<F>, 3> shifted;
    for (std::size_t a = 0; a < 3; ++a) {
        shifted[a] = rhat - one.scaled(mu[a]);
    }
    std::array<BraidTensor<F>, 3> p;
    for (std::size_t a = 0; a < 3; ++a) {
        std::size_t b = (a + 1) % 3;
        std::size_t c = (a + 2) % 3;
        T denom = (mu[a] - mu[b]) * (mu[a] - mu[c]);
        if (qeuclid::is_zero(denom)) {
            throw DegenerateQ("coincident R-hat eigenvalues at " + field.describe() + "; use symbolic mode");
        }
        p[a] = (shifted[b] * shifted[c]).scaled(T(1) / denom);
    }
    return {p[0], p[1], p[2]};
}

template <class F>
BraidTensor<F> rhat_inverse(const Projectors<F>& p, const IndexData& idx, const F& field)
{
    using T = typename F::scalar_type;
    auto mu = rhat_eigenvalues(idx, field);
    return p.sym.scaled(T(1) / mu[0]) + p.anti.scaled(T(1) / mu[1]) + p.trace.scaled(T(1) / mu[2]);
}

namespace {

template <class F>
using Vec3 = std::map<std::array<int, 3>, typename F::scalar_type>;

template <class F>
Vec3<F> apply_at(const BraidTensor<F>& m, const Vec3<F>& v, int slot)
{
    Vec3<F> out;
    for (const auto& [key, x] : v) {
        int a = key[slot];
        int b = key[slot + 1];
        for (const auto& [row, r] : m.entries()) {
            if (row[2] != a || row[3] != b) {
                continue;
            }
            auto nk = key;
            nk[slot] = row[0];
            nk[slot + 1] = row[1];
            auto [it, fresh] = out.try_emplace(nk, r * x);
            if (!fresh) {
                it->second += r * x;
            }
        }
    }
    std::erase_if(out, [](const auto& kv) { return qeuclid::is_zero(kv.second); });
    return out;
}

}  // namespace

template <class F>
std::optional<TensorWitness> verify_braid(const BraidTensor<F>& rhat, const IndexData& idx)
{
    for (int a : idx.labels()) {
        for (int b : idx.labels()) {
            for (int c : idx.labels()) {
                Vec3<F> v;
                v[{a, b, c}] = typename F::scalar_type(1);
                auto lhs = apply_at<F>(rhat, apply_at<F>(rhat, apply_at<F>(rhat, v, 0), 1), 0);
                auto rhs = apply_at<F>(rhat, apply_at<F>(rhat, apply_at<F>(rhat, v, 1), 0), 1);
                if (lhs != rhs) {
                    for (const auto& [k, x] : lhs) {
                        auto it = rhs.find(k);
                        if (it == rhs.end() || it->second != x) {
                            return TensorWitness{{a, b, c, k[0], k[1], k[2]}, "braid relation violated"};
                        }
                    }
                    for (const auto& [k, x] : rhs) {
                        if (!lhs.contains(k)) {
                            return TensorWitness{{a, b, c, k[0], k[1], k[2]}, "braid relation violated"};
                        }
                    }
                }
            }
        }
    }
    return std::nullopt;
}

template <class F>
std::optional<TensorWitness> verify_characteristic(const BraidTensor<F>& rhat, const IndexData& idx,
                                                   const F& field)
{
    auto mu = rhat_eigenvalues(idx, field);
    const auto one = BraidTensor<F>::identity(idx, field);
    auto prod = (rhat - one.scaled(mu[0])) * (rhat - one.scaled(mu[1])) * (rhat - one.scaled(mu[2]));
    if (prod.is_zero()) {
        return std::nullopt;
    }
    const auto& [k, v] = *prod.entries().begin();
    return TensorWitness{{k[0], k[1], k[2], k[3]}, "characteristic polynomial entry " + scalar_string(v)};
}

template <class F>
typename F::scalar_type trace(const BraidTensor<F>& p, const IndexData& idx, const F& field)
{
    auto acc = field.from_int(0);
    for (int i : idx.labels()) {
        for (int j : idx.labels()) {
            acc += p.at(i, j, i, j);
        }
    }
    return acc;
}

template <class F>
std::size_t rank(const BraidTensor<F>& m, const IndexData& idx, const F& field)
{
    using T = typename F::scalar_type;
    std::size_t n = idx.size();
    DenseMatrix<T> dense(n * n, std::vector<T>(n * n, field.from_int(0)));
    for (const auto& [k, v] : m.entries()) {
        dense[idx.pos(k[0]) * n + idx.pos(k[1])][idx.pos(k[2]) * n + idx.pos(k[3])] = v;
    }
    return matrix_rank(std::move(dense));
}

template <class F>
typename F::scalar_type metric_norm(const IndexData& idx, const F& field)
{
    auto acc = field.from_int(0);
    for (int i : idx.labels()) {
        acc += field.s_pow(-2 * idx.rho2(i));
    }
    return acc;
}

std::string braid_to_json(const BraidTensor<SymbolicField>& t)
{
    nlohmann::json j;
    j["N"] = t.N();
    auto arr = nlohmann::json::array();
    for (const auto& [k, v] : t.entries()) {
        arr.push_back({k[0], k[1], k[2], k[3], v.to_string()});
    }
    j["entries"] = std::move(arr);
    return j.dump();
}

BraidTensor<SymbolicField> braid_from_json(const std::string& text)
{
    auto j = nlohmann::json::parse(text);
    IndexData idx(j.at("N").get<int>());
    BraidTensor<SymbolicField> out(idx);
    for (const auto& e : j.at("entries")) {
        int i = e.at(0).get<int>();
        int jj = e.at(1).get<int>();
        int k = e.at(2).get<int>();
        int l = e.at(3).get<int>();
        for (int label : {i, jj, k, l}) {
            if (!idx.valid(label)) {
                throw std::invalid_argument("braid JSON: invalid index " + std::to_string(label));
            }
        }
        out.add(i, jj, k, l, Scalar::parse(e.at(4).get<std::string>()));
    }
    return out;
}

#define QEUCLID_INSTANTIATE(F)                                                                              \
    template class BraidTensor<F>;                                                                          \
    template struct MetricTensor<F>;                                                                        \
    template MetricTensor<F> build_metric<F>(const IndexData&, const F&);                                   \
    template BraidTensor<F> build_rhat<F>(const IndexData&, const F&);                                      \
    template std::array<F::scalar_type, 3> rhat_eigenvalues<F>(const IndexData&, const F&);                 \
    template Projectors<F> spectral_projectors<F>(const BraidTensor<F>&, const IndexData&, const F&);       \
    template BraidTensor<F> rhat_inverse<F>(const Projectors<F>&, const IndexData&, const F&);              \
    template std::optional<TensorWitness> verify_braid<F>(const BraidTensor<F>&, const IndexData&);         \
    template std::optional<TensorWitness> verify_characteristic<F>(const BraidTensor<F>&, const IndexData&, \
                                                                   const F&);                               \
    template F::scalar_type trace<F>(const BraidTensor<F>&, const IndexData&, const F&);                    \
    template std::size_t rank<F>(const BraidTensor<F>&, const IndexData&, const F&);                        \
    template F::scalar_type metric_norm<F>(const IndexData&, const F&);

QEUCLID_INSTANTIATE(SymbolicField)
QEUCLID_INSTANTIATE(NumericField)

#undef QEUCLID_INSTANTIATE

}  // namespace qeuclid

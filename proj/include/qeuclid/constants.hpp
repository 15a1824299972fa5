#pragma once

// Named constants h, k, omega_i.

#include "qeuclid/field.hpp"
#include "qeuclid/index.hpp"

#include <map>

namespace qeuclid {

/// h = q^{1/2} - q^{-1/2}
template <class F>
typename F::scalar_type const_h(const F& f)
{
    return f.s_pow(1) - f.s_pow(-1);
}

/// k = q - q^{-1}
template <class F>
typename F::scalar_type const_k(const F& f)
{
    return f.q_pow(1) - f.q_pow(-1);
}

/// omega_i = q^{rho_i} + q^{-rho_i}
template <class F>
typename F::scalar_type const_omega(const IndexData& idx, const F& f, int label)
{
    int r2 = idx.rho2(label);
    return f.s_pow(r2) + f.s_pow(-r2);
}

template <class F>
struct NamedConstants {
    typename F::scalar_type h;
    typename F::scalar_type k;
    std::map<int, typename F::scalar_type> omega;
};

template <class F>
NamedConstants<F> named_constants(const IndexData& idx, const F& f)
{
    NamedConstants<F> out{const_h(f), const_k(f), {}};
    for (int l : idx.labels()) {
        out.omega.emplace(l, const_omega(idx, f, l));
    }
    return out;
}

}  // namespace qeuclid

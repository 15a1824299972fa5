#include "qeuclid/index.hpp"

#include <cstdlib>

namespace qeuclid {

IndexData::IndexData(int N) : N_(N), n_(N / 2)
{
    if (N < 3) {
        throw std::invalid_argument("quantum Euclidean space needs N >= 3, got " + std::to_string(N));
    }
    for (int i = n_; i >= -n_; --i) {
        if (i != 0 || odd()) {
            labels_.push_back(i);
        }
    }
}

bool IndexData::valid(int label) const { return std::abs(label) <= n_ && (label != 0 || odd()); }

std::size_t IndexData::pos(int label) const
{
    if (!valid(label)) {
        throw std::out_of_range("index " + std::to_string(label) + " not valid for N = " + std::to_string(N_));
    }
    if (odd()) {
        return static_cast<std::size_t>(n_ - label);
    }
    return static_cast<std::size_t>(label > 0 ? n_ - label : n_ - label - 1);
}

int IndexData::rho2(int label) const
{
    if (!valid(label)) {
        throw std::out_of_range("index " + std::to_string(label) + " not valid for N = " + std::to_string(N_));
    }
    if (label == 0) {
        return 0;
    }
    int a = std::abs(label);
    int mag = odd() ? 2 * a - 1 : 2 * (a - 1);
    return label > 0 ? -mag : mag;
}

bool IndexData::localized(int label) const { return odd() ? label == 0 : std::abs(label) == 1; }

}  // namespace qeuclid

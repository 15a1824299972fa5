#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qeuclid {

/// Index conventions for R^N_q. Labels run over -n..n (0 omitted for even N).
/// Positions enumerate labels in descending order n, n-1, ..., -n, which is
/// also the normal order of coordinate letters in a monomial.
class IndexData {
public:
    explicit IndexData(int N);

    int N() const { return N_; }
    int n() const { return n_; }
    bool odd() const { return (N_ % 2) != 0; }

    const std::vector<int>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }
    int label(std::size_t pos) const { return labels_[pos]; }
    std::size_t pos(int label) const;
    bool valid(int label) const;

    /// 2 rho_i (rho_i is a half-integer for odd N). rho_{-i} = -rho_i and
    /// rho_i < 0 for i > 0; see README for the orientation convention.
    int rho2(int label) const;

    /// Coordinates whose inverses are adjoined: x^0 for odd N, x^{+-1} for even N.
    bool localized(int label) const;

private:
    int N_;
    int n_;
    std::vector<int> labels_;
};

}  // namespace qeuclid

#ifndef NEWTASYM_MULTIVECTOR_HPP
#define NEWTASYM_MULTIVECTOR_HPP

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "newtasym/gaussian.hpp"

namespace newtasym {

/// Strictly ascending index set I subset of [1..n].
using IndexSet = std::vector<int>;

/// Element of Lambda^p of an n-dimensional space, in the basis e_I with
/// ascending-index wedge ordering.
class MultiVector {
public:
    MultiVector(std::size_t n, int grade) : n_(n), grade_(grade) {
        if (grade < 0 || grade > static_cast<int>(n))
            throw std::invalid_argument("grade out of range");
    }

    std::size_t dim() const { return n_; }
    int grade() const { return grade_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<IndexSet, GaussianRational>& components() const { return comps_; }

    void add(const IndexSet& I, const GaussianRational& c) {
        if (static_cast<int>(I.size()) != grade_ || !std::is_sorted(I.begin(), I.end()) ||
            std::adjacent_find(I.begin(), I.end()) != I.end())
            throw std::invalid_argument("index set must be strictly ascending of the stated grade");
        for (int i : I)
            if (i < 1 || i > static_cast<int>(n_)) throw std::invalid_argument("index out of range");
        if (c.is_zero()) return;
        auto it = comps_.find(I);
        if (it == comps_.end()) {
            comps_.emplace(I, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) comps_.erase(it);
        }
    }

    friend bool operator==(const MultiVector& a, const MultiVector& b) {
        return a.n_ == b.n_ && a.grade_ == b.grade_ && a.comps_ == b.comps_;
    }

private:
    std::size_t n_;
    int grade_;
    std::map<IndexSet, GaussianRational> comps_;
};

/// Interior product i_v with a single covector v (components v_1..v_n):
/// i_v(e_I) = sum_k (-1)^(k-1) v_{i_k} e_{I \ i_k}.
inline MultiVector contract(const std::vector<Rational>& v, const MultiVector& omega) {
    if (v.size() != omega.dim()) throw std::invalid_argument("covector length mismatch");
    if (omega.grade() == 0) throw std::invalid_argument("grade underflow in contraction");
    MultiVector r(omega.dim(), omega.grade() - 1);
    for (auto& [I, c] : omega.components()) {
        for (std::size_t k = 0; k < I.size(); ++k) {
            const Rational& vk = v[I[k] - 1];
            if (vk == 0) continue;
            IndexSet J = I;
            J.erase(J.begin() + static_cast<long>(k));
            GaussianRational coeff = GaussianRational(vk) * c;
            if (k % 2 == 1) coeff = -coeff;
            r.add(J, coeff);
        }
    }
    return r;
}

/// Composition i_{v_1} o ... o i_{v_r}: the LAST covector in the list is applied
/// first (innermost), matching operator composition read left to right.
inline MultiVector iterated_contraction(const std::vector<std::vector<Rational>>& vs,
                                        const MultiVector& omega) {
    if (static_cast<int>(vs.size()) > omega.grade())
        throw std::invalid_argument("grade underflow in iterated contraction");
    MultiVector r = omega;
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) r = contract(*it, r);
    return r;
}

} // namespace newtasym

#endif

#ifndef NEWTASYM_FORMS_HPP
#define NEWTASYM_FORMS_HPP

#include <map>
#include <numeric>
#include <vector>

#include "newtasym/multivector.hpp"
#include "newtasym/polyhedron.hpp"

namespace newtasym {

/// Leading pair (alpha, k): exponent and log power of the first term of the
/// expansion. Ordered by alpha < alpha', ties broken by LARGER k first.
struct LeadingPair {
    Rational alpha;
    long k = 0;
    friend bool operator==(const LeadingPair& a, const LeadingPair& b) {
        return a.alpha == b.alpha && a.k == b.k;
    }
};

/// (alpha,k) <= (alpha',k')  iff  alpha < alpha' or (alpha = alpha' and k >= k')
inline bool leading_leq(const LeadingPair& a, const LeadingPair& b) {
    return a.alpha < b.alpha || (a.alpha == b.alpha && a.k >= b.k);
}

/// A p-form in the logarithmic basis (dx)_I / x_I with sparse polynomial
/// coefficients: phi = sum_{|I|=p} phi_I (dx)_I / x_I.
class LogForm {
public:
    LogForm(std::size_t n, int p) : n_(n), p_(p) {
        if (p < 0 || p > static_cast<int>(n)) throw std::invalid_argument("grade out of range");
    }

    std::size_t nvars() const { return n_; }
    int grade() const { return p_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::pair<IndexSet, Exponent>, GaussianRational>& terms() const { return terms_; }

    void add_term(const IndexSet& I, const Exponent& m, const GaussianRational& c) {
        if (static_cast<int>(I.size()) != p_ || !std::is_sorted(I.begin(), I.end()) ||
            std::adjacent_find(I.begin(), I.end()) != I.end())
            throw std::invalid_argument("index set must be strictly ascending of the form's grade");
        for (int i : I)
            if (i < 1 || i > static_cast<int>(n_)) throw std::invalid_argument("index out of range");
        if (m.size() != n_) throw std::invalid_argument("exponent length mismatch");
        if (!m.nonnegative()) throw std::invalid_argument("log-form supports must be >= 0");
        if (c.is_zero()) return;
        auto key = std::make_pair(I, m);
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    GaussianRational coeff(const IndexSet& I, const Exponent& m) const {
        auto it = terms_.find(std::make_pair(I, m));
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    /// union of the coefficient supports
    std::vector<Exponent> support() const {
        std::vector<Exponent> s;
        for (auto& [key, c] : terms_) s.push_back(key.second);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        return s;
    }

    friend bool operator==(const LogForm& a, const LogForm& b) {
        return a.n_ == b.n_ && a.p_ == b.p_ && a.terms_ == b.terms_;
    }

private:
    std::size_t n_;
    int p_;
    std::map<std::pair<IndexSet, Exponent>, GaussianRational> terms_;
};

/// h * dx_1 ^ ... ^ dx_n written in the logarithmic basis: the support shifts
/// by (1,...,1).
inline LogForm holomorphic_to_log(const SparsePolynomial& h) {
    std::size_t n = h.nvars();
    if (n < 1) throw std::invalid_argument("need at least one variable");
    LogForm phi(n, static_cast<int>(n));
    IndexSet full(n);
    std::iota(full.begin(), full.end(), 1);
    Exponent ones(std::vector<long>(n, 1));
    for (auto& [m, c] : h.terms()) phi.add_term(full, m + ones, c);
    return phi;
}

/// (v, l) of a non-zero form: v = min Newton order over the log support; l is
/// the maximal codimension defect n-1-dim(delta) over minimizing points whose
/// smallest containing face of v*Gamma_+ is compact.
inline OrderPair newton_pair_form(const NewtonPolyhedron& P, const LogForm& phi) {
    if (phi.is_zero()) throw std::invalid_argument("zero form has no Newton pair");
    auto supp = phi.support();
    Rational v;
    bool first = true;
    for (auto& m : supp) {
        Rational t = P.newton_order(m);
        if (first || t < v) { v = t; first = false; }
    }
    if (v == 0)
        throw DegenerateSupportError("support contains the origin: Newton order 0 (unit convention)");
    long l = -1;
    for (auto& m : supp) {
        if (P.newton_order(m) != v) continue;
        QVector p(P.n);
        for (std::size_t i = 0; i < P.n; ++i) p[i] = Rational(m[i]) / v;
        auto fid = P.smallest_face_containing(p);
        if (!fid) continue;
        const Face& face = P.faces[*fid];
        if (!face.is_compact) continue;
        long cand = static_cast<long>(P.n) - 1 - face.dim;
        l = std::max(l, cand);
    }
    if (l < 0)
        throw NoCompactFaceError(
            "no minimizing support point lies on a compact face of v*Gamma_+");
    return OrderPair{v, l};
}

/// The lower bound (v-1, l) for (alpha,k)(phi) in the leading order.
inline LeadingPair newton_lower_bound(const NewtonPolyhedron& P, const LogForm& phi) {
    OrderPair vl = newton_pair_form(P, phi);
    return LeadingPair{vl.v - 1, vl.l};
}

} // namespace newtasym

#endif

#ifndef NEWTASYM_POLYNOMIAL_HPP
#define NEWTASYM_POLYNOMIAL_HPP

#include <complex>
#include <map>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "newtasym/gaussian.hpp"

namespace newtasym {

/// Integer lattice exponent vector. Polynomial supports keep all entries >= 0.
struct Exponent {
    std::vector<long> coords;

    Exponent() = default;
    explicit Exponent(std::vector<long> c) : coords(std::move(c)) {}
    Exponent(std::initializer_list<long> c) : coords(c) {}

    std::size_t size() const { return coords.size(); }
    long operator[](std::size_t i) const { return coords[i]; }
    long& operator[](std::size_t i) { return coords[i]; }

    bool nonnegative() const {
        for (long c : coords) if (c < 0) return false;
        return true;
    }

    friend Exponent operator+(const Exponent& a, const Exponent& b) {
        if (a.size() != b.size()) throw std::invalid_argument("exponent length mismatch");
        Exponent r = a;
        for (std::size_t i = 0; i < r.size(); ++i) r.coords[i] += b.coords[i];
        return r;
    }

    // lexicographic; gives polynomials a canonical term order
    friend bool operator<(const Exponent& a, const Exponent& b) { return a.coords < b.coords; }
    friend bool operator==(const Exponent& a, const Exponent& b) { return a.coords == b.coords; }
    friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const Exponent& e) {
        os << "(";
        for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e.coords[i];
        return os << ")";
    }
};

/// Sparse multivariate polynomial over Q(i). Zero coefficients are never stored.
class SparsePolynomial {
public:
    SparsePolynomial() : n_(0) {}
    explicit SparsePolynomial(std::size_t n) : n_(n) {}

    std::size_t nvars() const { return n_; }
    const std::map<Exponent, GaussianRational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponent& e, const GaussianRational& c) {
        if (e.size() != n_) throw std::invalid_argument("exponent length mismatch");
        if (!e.nonnegative()) throw std::invalid_argument("negative exponent in polynomial support");
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    GaussianRational coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    std::vector<Exponent> support() const {
        std::vector<Exponent> s;
        s.reserve(terms_.size());
        for (auto& [e, c] : terms_) s.push_back(e);
        return s;
    }

    friend SparsePolynomial operator+(const SparsePolynomial& a, const SparsePolynomial& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("variable count mismatch");
        SparsePolynomial r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }

    friend SparsePolynomial operator-(const SparsePolynomial& a, const SparsePolynomial& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("variable count mismatch");
        SparsePolynomial r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, -c);
        return r;
    }

    friend SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("variable count mismatch");
        SparsePolynomial r(a.n_);
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_)
                r.add_term(ea + eb, ca * cb);
        return r;
    }

    friend SparsePolynomial operator*(const GaussianRational& c, const SparsePolynomial& a) {
        SparsePolynomial r(a.n_);
        for (auto& [e, v] : a.terms_) r.add_term(e, c * v);
        return r;
    }

    friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    std::complex<double> eval(const std::vector<std::complex<double>>& x) const {
        std::complex<double> s = 0;
        for (auto& [e, c] : terms_) {
            std::complex<double> t = c.to_complex();
            for (std::size_t i = 0; i < n_; ++i)
                for (long k = 0; k < e[i]; ++k) t *= x[i];
            s += t;
        }
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const SparsePolynomial& p) {
        if (p.terms_.empty()) return os << "0";
        bool first = true;
        for (auto& [e, c] : p.terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c << ")*x^" << e;
        }
        return os;
    }

private:
    std::size_t n_;
    std::map<Exponent, GaussianRational> terms_;
};

/// x_i d/dx_i, the torus-adapted derivative: c x^m -> m_i c x^m. i is 1-based.
inline SparsePolynomial euler_derivative(const SparsePolynomial& g, std::size_t i) {
    if (i < 1 || i > g.nvars()) throw std::out_of_range("variable index out of range");
    SparsePolynomial r(g.nvars());
    for (auto& [e, c] : g.terms())
        r.add_term(e, GaussianRational(Rational(e[i - 1])) * c);
    return r;
}

/// Convenience builders for tests and examples.
inline SparsePolynomial monomial(std::size_t n, const Exponent& e,
                                 const GaussianRational& c = GaussianRational(1)) {
    SparsePolynomial p(n);
    p.add_term(e, c);
    return p;
}

} // namespace newtasym

#endif

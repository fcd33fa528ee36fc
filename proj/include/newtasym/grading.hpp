#ifndef NEWTASYM_GRADING_HPP
#define NEWTASYM_GRADING_HPP

#include <complex>
#include <optional>
#include <random>
#include <vector>

#include "newtasym/forms.hpp"

namespace newtasym {

/// Face-local grading data for a compact face delta of codimension r that is
/// not contained in a coordinate hyperplane. The supporting covector w is the
/// sum of the primitive normals of the facets containing delta; <w,.> = N > 0
/// on delta and deg f_delta = 1.
struct FaceContext {
    const NewtonPolyhedron* P = nullptr;
    Face face;
    int r = 0;
    std::vector<long> w;
    long N = 0;
};

inline FaceContext make_face_context(const NewtonPolyhedron& P, const Face& face) {
    if (!face.is_compact) throw std::invalid_argument("face must be compact");
    if (face.on_coordinate_hyperplane)
        throw std::invalid_argument("face lies on a coordinate hyperplane");
    FaceContext ctx;
    ctx.P = &P;
    ctx.face = face;
    ctx.r = static_cast<int>(P.n) - face.dim;
    ctx.w.assign(P.n, 0);
    for (int f : face.active_facets)
        for (std::size_t i = 0; i < P.n; ++i) ctx.w[i] += P.facets[f].normal[i];
    for (long wi : ctx.w)
        if (wi <= 0) throw std::logic_error("supporting covector is not strictly positive");
    long N = 0;
    for (std::size_t i = 0; i < P.n; ++i) N += ctx.w[i] * face.vertices[0][i];
    for (auto& v : face.vertices) {
        long s = 0;
        for (std::size_t i = 0; i < P.n; ++i) s += ctx.w[i] * v[i];
        if (s != N) throw std::logic_error("covector is not constant on the face");
    }
    if (N <= 0) throw std::logic_error("face level must be positive");
    ctx.N = N;
    return ctx;
}

/// Restriction of f to the monomials lying on the face.
inline SparsePolynomial face_polynomial(const SparsePolynomial& f, const NewtonPolyhedron& P,
                                        const Face& face) {
    for (auto& v : face.vertices)
        if (f.coeff(v).is_zero())
            throw std::invalid_argument("face does not belong to the polynomial's polyhedron");
    SparsePolynomial r(f.nvars());
    for (auto& [m, c] : f.terms())
        if (P.scaled_face_membership(face, Rational(1), m, false)) r.add_term(m, c);
    return r;
}

/// Degree of a monomial in the delta-grading (deg f_delta = 1): t = <w,m>/N if
/// m lies in t*delta (hence in the cone over delta); nullopt otherwise.
inline std::optional<Rational> face_degree(const FaceContext& ctx, const Exponent& m) {
    if (!m.nonnegative()) throw std::invalid_argument("negative exponent");
    long s = 0;
    for (std::size_t i = 0; i < ctx.P->n; ++i) s += ctx.w[i] * m[i];
    Rational t(BigInt(s), BigInt(ctx.N));
    if (t == 0) {
        for (std::size_t i = 0; i < ctx.P->n; ++i)
            if (m[i] != 0) return std::nullopt;
        return Rational(0);
    }
    if (!ctx.P->scaled_face_membership(ctx.face, t, m, false)) return std::nullopt;
    return t;
}

/// m in a*delta with all facet inequalities not containing delta strict.
inline bool scaled_face_interior_test(const FaceContext& ctx, const Rational& a,
                                      const Exponent& m) {
    if (a <= 0) return false;
    return ctx.P->scaled_face_membership(ctx.face, a, m, true);
}

struct NondegeneracyReport {
    enum class Verdict { PassHeuristic, Fail };
    Verdict verdict = Verdict::PassHeuristic;
    std::optional<std::vector<std::complex<double>>> witness;
    double witness_residual = 0.0;
    int trials = 0;
    unsigned long seed = 0;
};

namespace detail {

inline bool solve_complex(std::vector<std::vector<std::complex<double>>> a,
                          std::vector<std::complex<double>>& b) {
    std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        if (std::abs(a[piv][c]) < 1e-14) {
            // near-singular Jacobian: Tikhonov nudging keeps the step usable
            a[c][c] += 1e-10;
            if (std::abs(a[c][c]) < 1e-14) return false;
        } else {
            std::swap(a[c], a[piv]);
            std::swap(b[c], b[piv]);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            std::complex<double> f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
    return true;
}

} // namespace detail

/// Damped-Newton search for torus critical points of the face polynomial.
/// A converged solution means "fail" with a checkable witness; not finding one
/// is only heuristic evidence of non-degeneracy.
inline NondegeneracyReport nondegeneracy_heuristic(const SparsePolynomial& f_delta,
                                                   int trials = 40,
                                                   unsigned long seed = 12345,
                                                   double tol = 1e-10) {
    std::size_t n = f_delta.nvars();
    NondegeneracyReport rep;
    rep.trials = trials;
    rep.seed = seed;

    // Euler-derivative system g_i = x_i df/dx_i and its log-coordinate Jacobian
    std::vector<SparsePolynomial> g, jac;
    for (std::size_t i = 1; i <= n; ++i) g.push_back(euler_derivative(f_delta, i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 1; j <= n; ++j) jac.push_back(euler_derivative(g[i], j));

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double log_lo = std::log(0.3), log_hi = std::log(3.0);
    constexpr int max_iter = 200;

    // The line search descends on the plain residual; a witness is accepted
    // by the relative one (|g_i| over the sum of term magnitudes), because
    // the plain value decays along the quasi-homogeneous scaling orbit and
    // would certify spurious near-origin points.
    auto residual = [&](const std::vector<std::complex<double>>& x) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s = std::max(s, std::abs(g[i].eval(x)));
        return s;
    };
    auto relative_residual = [&](const std::vector<std::complex<double>>& x) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double denom = 1e-300;
            for (auto& [m, c] : g[i].terms()) {
                double mag = std::abs(c.to_complex());
                for (std::size_t j = 0; j < n; ++j)
                    mag *= std::pow(std::abs(x[j]), static_cast<double>(m[j]));
                denom += mag;
            }
            s = std::max(s, std::abs(g[i].eval(x)) / denom);
        }
        return s;
    };

    for (int t = 0; t < trials; ++t) {
        std::vector<std::complex<double>> u(n);
        for (std::size_t i = 0; i < n; ++i) {
            double lr = log_lo + (log_hi - log_lo) * unif(rng);
            double th = 2 * 3.14159265358979323846 * unif(rng);
            u[i] = {lr, th};
        }
        auto torus_point = [&](const std::vector<std::complex<double>>& uu) {
            std::vector<std::complex<double>> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = std::exp(uu[i]);
            return x;
        };
        auto x = torus_point(u);
        double res = residual(x);
        for (int it = 0; it < max_iter && relative_residual(x) >= tol; ++it) {
            std::vector<std::vector<std::complex<double>>> J(n,
                std::vector<std::complex<double>>(n));
            std::vector<std::complex<double>> rhs(n);
            for (std::size_t i = 0; i < n; ++i) {
                rhs[i] = -g[i].eval(x);
                for (std::size_t j = 0; j < n; ++j) J[i][j] = jac[i * n + j].eval(x);
            }
            if (!detail::solve_complex(J, rhs)) break;
            double step = 1.0;
            bool improved = false;
            for (int h = 0; h < 30; ++h, step *= 0.5) {
                auto u2 = u;
                for (std::size_t i = 0; i < n; ++i) u2[i] += step * rhs[i];
                bool in_range = true;
                for (std::size_t i = 0; i < n; ++i)
                    if (std::abs(u2[i].real()) > 20) in_range = false;
                if (!in_range) continue;
                auto x2 = torus_point(u2);
                double r2 = residual(x2);
                if (r2 < res) {
                    u = u2; x = x2; res = r2;
                    improved = true;
                    break;
                }
            }
            if (!improved) break;
        }
        double rel = relative_residual(x);
        if (rel < tol) {
            rep.verdict = NondegeneracyReport::Verdict::Fail;
            rep.witness = x;
            rep.witness_residual = rel;
            return rep;
        }
    }
    return rep;
}

} // namespace newtasym

#endif

#ifndef NEWTASYM_SUSPENSION_HPP
#define NEWTASYM_SUSPENSION_HPP

#include <boost/math/special_functions/beta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <optional>

#include "newtasym/certifier.hpp"

namespace newtasym {

using HighFloat = boost::multiprecision::cpp_bin_float_50;

/// Complex scalar at 50 significant digits for leading-term arithmetic.
struct HighComplex {
    HighFloat re = 0, im = 0;
    friend HighComplex operator*(const HighComplex& a, const HighComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend HighComplex operator*(const HighComplex& a, const HighFloat& s) {
        return {a.re * s, a.im * s};
    }
    HighFloat abs() const { return sqrt(re * re + im * im); }
};

/// Smallest suspension exponent used here: lcm of the positive facet levels.
/// It satisfies e * nu(m) in Z for every monomial (each <a,m> * e / N_a is an
/// integer, hence so is their minimum).
inline long suspension_exponent(const NewtonPolyhedron& P) {
    if (!P.is_convenient()) throw std::invalid_argument("suspension needs a convenient polyhedron");
    BigInt e = 1;
    for (auto& f : P.facets)
        if (f.level > 0) e = lcm(e, BigInt(f.level));
    return static_cast<long>(e);
}

/// F = f + y^e / e in n+1 variables.
inline SparsePolynomial suspend(const SparsePolynomial& f, long e) {
    if (e < 1) throw std::invalid_argument("suspension exponent must be >= 1");
    std::size_t n = f.nvars();
    SparsePolynomial F(n + 1);
    for (auto& [m, c] : f.terms()) {
        std::vector<long> coords = m.coords;
        coords.push_back(0);
        F.add_term(Exponent(coords), c);
    }
    std::vector<long> ye(n + 1, 0);
    ye[n] = e;
    F.add_term(Exponent(ye), GaussianRational(Rational(1, e)));
    return F;
}

/// The modified form phi ^ y^c dy/y with c = e([a]+1-a); the suspended degree
/// is b = [a]+1. The index set gains n+1 at its end, so no sign is introduced.
inline std::pair<LogForm, long> suspend_form(const LogForm& phi, const Rational& a, long e) {
    Rational ea = Rational(e) * a;
    if (!is_integer(ea)) throw std::invalid_argument("e*a must be an integer");
    Rational c_rat = Rational(e) * (Rational(floor_int(a)) + 1 - a);
    long c = static_cast<long>(num(c_rat));
    std::size_t n = phi.nvars();
    LogForm out(n + 1, phi.grade() + 1);
    for (auto& [key, coeff] : phi.terms()) {
        IndexSet I = key.first;
        I.push_back(static_cast<int>(n) + 1);
        std::vector<long> m = key.second.coords;
        m.push_back(c);
        out.add_term(I, Exponent(m), coeff);
    }
    return {out, c};
}

namespace detail {

inline std::size_t gaussian_rank(const std::vector<GVector>& columns, std::size_t rows) {
    GVector zero(rows, GaussianRational());
    return image_membership(columns, zero).matrix_rank;
}

inline GradedBasis restrict_eigenclass(const GradedBasis& basis, std::size_t y_index,
                                       long c, long e) {
    GradedBasis out;
    out.p = basis.p;
    out.b = basis.b;
    for (auto& el : basis.elements)
        if (((el.second[y_index] - c) % e + e) % e == 0) out.elements.push_back(el);
    return out;
}

} // namespace detail

/// Locate the suspended face conv(delta u {(0,...,0,e)}) in the suspended
/// polyhedron's face lattice.
inline const Face& suspended_face(const NewtonPolyhedron& Phat, const Face& delta, long e) {
    std::size_t n1 = Phat.n;
    std::vector<Exponent> want;
    for (auto& v : delta.vertices) {
        std::vector<long> c = v.coords;
        c.push_back(0);
        want.emplace_back(std::move(c));
    }
    std::vector<long> apex(n1, 0);
    apex[n1 - 1] = e;
    want.emplace_back(std::move(apex));
    std::sort(want.begin(), want.end());
    for (auto& face : Phat.faces) {
        auto vs = face.vertices;
        std::sort(vs.begin(), vs.end());
        if (vs == want) return face;
    }
    throw std::logic_error("suspended face not found in the suspended polyhedron");
}

/// The suspended quotient restricted to the zeta^c eigenclass: polyhedron,
/// face context, graded bases at degree b = [a]+1, and the Koszul columns.
struct SuspensionProblem {
    SparsePolynomial F;
    NewtonPolyhedron Phat;
    int face_id = -1;
    GradedBasis domain, target;
    std::vector<GVector> columns;
    long e = 1, c = 0;
    Rational b;
};

inline SuspensionProblem build_suspension_problem(const SparsePolynomial& f,
                                                  const NewtonPolyhedron& P,
                                                  const Face& delta, const Rational& a) {
    if (is_integer(a)) throw std::invalid_argument("suspension reduction requires a not integral");
    std::size_t n = P.n;
    SuspensionProblem sp;
    sp.e = suspension_exponent(P);
    Rational c_rat = Rational(sp.e) * (Rational(floor_int(a)) + 1 - a);
    if (!is_integer(c_rat)) throw std::invalid_argument("e*a must be an integer");
    sp.c = static_cast<long>(num(c_rat));
    sp.b = Rational(floor_int(a)) + 1;

    sp.F = suspend(f, sp.e);
    sp.Phat = build_newton_polyhedron(sp.F);
    const Face& dhat = suspended_face(sp.Phat, delta, sp.e);
    sp.face_id = dhat.id;
    FaceContext ctx_hat = make_face_context(sp.Phat, dhat);
    SparsePolynomial F_dhat = face_polynomial(sp.F, sp.Phat, dhat);

    sp.domain = detail::restrict_eigenclass(
        graded_piece_basis(ctx_hat, static_cast<int>(n) - 1, sp.b - 1), n, sp.c, sp.e);
    sp.target = detail::restrict_eigenclass(
        graded_piece_basis(ctx_hat, static_cast<int>(n) + 1, sp.b), n, sp.c, sp.e);
    sp.columns = koszul_de_rham_matrix(ctx_hat, F_dhat, sp.domain, sp.target);
    return sp;
}

/// Whether the class of the suspended form phi_hat is hit by the suspended
/// Koszul image.
inline bool suspended_in_image(const SuspensionProblem& sp, const LogForm& phi_hat) {
    GVector vec(sp.target.elements.size(), GaussianRational());
    for (auto& [key, c] : phi_hat.terms()) {
        int idx = sp.target.index_of(key.first, key.second);
        if (idx < 0) throw std::logic_error("form does not live in the suspended graded piece");
        vec[idx] = c;
    }
    return image_membership(sp.columns, vec).in_image;
}

/// Dimensions of the two graded quotients whose equality the suspension
/// bijection asserts: lhs the original quotient at degree a, rhs the zeta^c
/// eigenspace of the suspended quotient at degree b = [a]+1.
inline std::pair<std::size_t, std::size_t> suspended_quotient_dims(
    const SparsePolynomial& f, const NewtonPolyhedron& P, const Face& delta,
    const Rational& a) {
    std::size_t n = P.n;
    FaceContext ctx = make_face_context(P, delta);
    SparsePolynomial f_delta = face_polynomial(f, P, delta);
    GradedBasis dom = graded_piece_basis(ctx, static_cast<int>(n) - 2, a - 1);
    GradedBasis tgt = graded_piece_basis(ctx, static_cast<int>(n), a);
    auto cols = koszul_de_rham_matrix(ctx, f_delta, dom, tgt);
    std::size_t lhs = tgt.elements.size() - detail::gaussian_rank(cols, tgt.elements.size());

    SuspensionProblem sp = build_suspension_problem(f, P, delta, a);
    std::size_t rhs =
        sp.target.elements.size() - detail::gaussian_rank(sp.columns, sp.target.elements.size());
    return {lhs, rhs};
}

/// Leading term (alpha, k, coeff) of one tensor factor's expansion.
struct LeadingTerm {
    Rational alpha;
    long k = 0;
    HighComplex coeff{1, 0};
};

/// Exact Beta for positive integer arguments: B(p,q) = (p-1)!(q-1)!/(p+q-1)!.
inline std::optional<Rational> beta_exact(const Rational& x, const Rational& y) {
    if (!is_integer(x) || !is_integer(y) || x <= 0 || y <= 0) return std::nullopt;
    auto fact = [](BigInt k) {
        BigInt r = 1;
        for (BigInt i = 2; i <= k; ++i) r *= i;
        return r;
    };
    BigInt p = num(x), q = num(y);
    return Rational(fact(p - 1) * fact(q - 1), fact(p + q - 1));
}

inline HighFloat beta_value(const Rational& x, const Rational& y) {
    if (x <= 0 || y <= 0) throw std::domain_error("Beta arguments must be positive");
    if (auto ex = beta_exact(x, y))
        return HighFloat(num(*ex).str()) / HighFloat(den(*ex).str());
    HighFloat xf = HighFloat(num(x).str()) / HighFloat(den(x).str());
    HighFloat yf = HighFloat(num(y).str()) / HighFloat(den(y).str());
    return boost::math::beta(xf, yf);
}

/// Leading term of the join of two expansions: the exponents add (plus one),
/// the log power comes from the first factor, and the coefficient picks up
/// B(alpha+1, beta+1). The second factor must carry no logarithm.
inline LeadingTerm leading_term_tensor(const LeadingTerm& lead_omega,
                                       const LeadingTerm& lead_eta) {
    if (lead_eta.k != 0)
        throw std::invalid_argument("second factor must have log power zero");
    LeadingTerm out;
    out.alpha = lead_omega.alpha + lead_eta.alpha + 1;
    out.k = lead_omega.k;
    out.coeff = lead_omega.coeff * lead_eta.coeff *
                beta_value(lead_omega.alpha + 1, lead_eta.alpha + 1);
    return out;
}

} // namespace newtasym

#endif

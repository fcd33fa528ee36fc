#ifndef NEWTASYM_SELFTEST_HPP
#define NEWTASYM_SELFTEST_HPP

#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "newtasym/certifier.hpp"
#include "newtasym/mellin.hpp"
#include "newtasym/parse.hpp"
#include "newtasym/suspension.hpp"

namespace newtasym {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace selftest_detail {

inline LogForm monomial_top_form(std::size_t n, const Exponent& m) {
    LogForm phi(n, static_cast<int>(n));
    IndexSet full(n);
    std::iota(full.begin(), full.end(), 1);
    phi.add_term(full, m, GaussianRational(Rational(1)));
    return phi;
}

/// random convenient polynomial in two variables, support <= 5 points,
/// coefficients in {1, -1, 2, -2}
inline SparsePolynomial random_convenient_2d(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> deg(2, 6), extra(0, 3), coord(1, 5), pick(0, 3);
    const long coefs[4] = {1, -1, 2, -2};
    for (;;) {
        SparsePolynomial f(2);
        int A = deg(rng), B = deg(rng);
        f.add_term(Exponent(std::vector<long>{A, 0}), GaussianRational(Rational(coefs[pick(rng)])));
        f.add_term(Exponent(std::vector<long>{0, B}), GaussianRational(Rational(coefs[pick(rng)])));
        int k = extra(rng);
        for (int i = 0; i < k; ++i)
            f.add_term(Exponent(std::vector<long>{coord(rng), coord(rng)}),
                       GaussianRational(Rational(coefs[pick(rng)])));
        if (f.coeff(Exponent(std::vector<long>{A, 0})).is_zero()) continue;
        if (f.coeff(Exponent(std::vector<long>{0, B})).is_zero()) continue;
        return f;
    }
}

/// Independent lattice oracle: brute bounding-box scan with hull-membership
/// decided by direct convex geometry (segment betweenness, O(V^2) edge
/// half-plane tests), not by the polyhedron's facet data.
inline std::vector<Exponent> brute_lattice_points(const Face& face, const Rational& t,
                                                  std::size_t n) {
    std::vector<QVector> w;
    for (auto& v : face.vertices) {
        QVector p(n);
        for (std::size_t i = 0; i < n; ++i) p[i] = t * Rational(v[i]);
        w.push_back(p);
    }
    // bounding box
    std::vector<std::pair<long, long>> box(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational lo = w[0][i], hi = w[0][i];
        for (auto& p : w) {
            if (p[i] < lo) lo = p[i];
            if (p[i] > hi) hi = p[i];
        }
        box[i] = {static_cast<long>(floor_int(lo)), static_cast<long>(floor_int(hi)) + 1};
    }

    auto in_hull = [&](const QVector& m) -> bool {
        if (w.size() == 1) return m == w[0];
        // affine hull membership via rank
        QMatrix span;
        for (std::size_t i = 1; i < w.size(); ++i) {
            QVector d(n);
            for (std::size_t j = 0; j < n; ++j) d[j] = w[i][j] - w[0][j];
            span.push_back(d);
        }
        std::size_t rk = rational_rank(span);
        {
            QVector d(n);
            for (std::size_t j = 0; j < n; ++j) d[j] = m[j] - w[0][j];
            QMatrix aug = span;
            aug.push_back(d);
            if (rational_rank(aug) != rk) return false;
        }
        if (rk == 1) {
            // segment: find endpoints by extremal parameter along the direction
            QVector dir(n);
            for (std::size_t j = 0; j < n; ++j) dir[j] = w[1][j] - w[0][j];
            std::size_t ax = 0;
            while (dir[ax] == 0) ++ax;
            Rational s = (m[ax] - w[0][ax]) / dir[ax];
            for (std::size_t j = 0; j < n; ++j)
                if (w[0][j] + s * dir[j] != m[j]) return false;
            Rational smin = 0, smax = 0;
            for (auto& p : w) {
                Rational sp = (p[ax] - w[0][ax]) / dir[ax];
                smin = std::min(smin, sp);
                smax = std::max(smax, sp);
            }
            return smin <= s && s <= smax;
        }
        if (rk == 2) {
            // project to two coordinates keeping the area non-zero
            std::size_t ci = 0, cj = 1;
            bool found = false;
            for (std::size_t i = 0; i < n && !found; ++i)
                for (std::size_t j = i + 1; j < n && !found; ++j) {
                    for (std::size_t u = 1; u < w.size() && !found; ++u)
                        for (std::size_t v = u + 1; v < w.size() && !found; ++v) {
                            Rational det = (w[u][i] - w[0][i]) * (w[v][j] - w[0][j]) -
                                           (w[u][j] - w[0][j]) * (w[v][i] - w[0][i]);
                            if (det != 0) {
                                ci = i;
                                cj = j;
                                found = true;
                            }
                        }
                }
            if (!found) return false;
            auto cross = [&](const QVector& a, const QVector& b, const QVector& c) {
                return (b[ci] - a[ci]) * (c[cj] - a[cj]) - (b[cj] - a[cj]) * (c[ci] - a[ci]);
            };
            // every supporting edge keeps the rest (and m) on one side
            for (std::size_t u = 0; u < w.size(); ++u)
                for (std::size_t v = 0; v < w.size(); ++v) {
                    if (u == v) continue;
                    bool all_left = true;
                    for (std::size_t q = 0; q < w.size(); ++q) {
                        if (q == u || q == v) continue;
                        if (cross(w[u], w[v], w[q]) < 0) {
                            all_left = false;
                            break;
                        }
                    }
                    if (all_left && cross(w[u], w[v], m) < 0) return false;
                }
            return true;
        }
        return false;  // oracle covers faces of dimension <= 2 only
    };

    std::vector<Exponent> out;
    std::vector<long> cur(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            QVector m(n);
            bool nonneg = true;
            for (std::size_t j = 0; j < n; ++j) {
                if (cur[j] < 0) nonneg = false;
                m[j] = Rational(cur[j]);
            }
            if (nonneg && in_hull(m)) out.push_back(Exponent(cur));
            return;
        }
        for (long c = box[i].first; c <= box[i].second; ++c) {
            cur[i] = c;
            rec(i + 1);
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace selftest_detail

inline CriterionResult criterion_certifier_oracles() {
    using namespace selftest_detail;
    CriterionResult res{"certifier-oracles", false, ""};
    std::ostringstream why;
    auto expect_certified = [&](const std::string& ftext, const std::string& htext,
                                const Rational& alpha, long k) -> bool {
        SparsePolynomial f = parse_polynomial(ftext, 2);
        SparsePolynomial h = parse_polynomial(htext, 2);
        NewtonPolyhedron P = build_newton_polyhedron(f);
        LogForm phi = holomorphic_to_log(h);
        for (int id : admissible_faces(P, phi)) {
            Certificate c = certify(f, P, P.faces[id], phi, 4);
            if (c.verdict == Verdict::Certified)
                return c.pair.alpha == alpha && c.pair.k == k;
        }
        return false;
    };
    bool ok = true;
    if (!expect_certified("x^2+y^3", "1", Rational(-1, 6), 0)) {
        ok = false;
        why << "x^2+y^3 with dx^dy; ";
    }
    if (!expect_certified("x^3+y^3", "x*y", Rational(1, 3), 0)) {
        ok = false;
        why << "x^3+y^3 with xy dx^dy; ";
    }
    if (!expect_certified("x^5+x^2*y^2+y^5", "1", Rational(-1, 2), 1)) {
        ok = false;
        why << "x^5+x^2y^2+y^5 with dx^dy; ";
    }
    {
        SparsePolynomial f = parse_polynomial("x^2+y^3", 2);
        SparsePolynomial h = parse_polynomial("2x^2-3y^3", 2);
        NewtonPolyhedron P = build_newton_polyhedron(f);
        LogForm phi = holomorphic_to_log(h);
        auto ids = admissible_faces(P, phi);
        bool inconclusive = !ids.empty();
        for (int id : ids) {
            Certificate c = certify(f, P, P.faces[id], phi, 4);
            if (c.verdict != Verdict::Inconclusive || c.a != Rational(11, 6))
                inconclusive = false;
        }
        if (!inconclusive) {
            ok = false;
            why << "(2x^2-3y^3) dx^dy not inconclusive at a=11/6; ";
        }
    }
    res.pass = ok;
    res.detail = ok ? "4 oracle cases exact" : why.str();
    return res;
}

inline CriterionResult criterion_order_bound_equality() {
    using namespace selftest_detail;
    CriterionResult res{"order-bound-equality", false, ""};
    std::mt19937_64 rng(424242);
    long checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        SparsePolynomial f = random_convenient_2d(rng);
        NewtonPolyhedron P = build_newton_polyhedron(f);
        if (!P.is_convenient()) continue;
        for (auto& face : P.faces) {
            if (!face.is_compact || face.on_coordinate_hyperplane) continue;
            FaceContext ctx;
            try {
                ctx = make_face_context(P, face);
            } catch (const std::logic_error&) {
                continue;
            }
            for (long mx = 1; mx <= 6; ++mx)
                for (long my = 1; my <= 6; ++my) {
                    Exponent m(std::vector<long>{mx, my});
                    auto a = face_degree(ctx, m);
                    if (!a || !scaled_face_interior_test(ctx, *a, m)) continue;
                    LogForm phi = monomial_top_form(2, m);
                    Certificate c = certify(f, P, face, phi, 2);
                    if (c.verdict != Verdict::Certified) continue;
                    LeadingPair bound;
                    try {
                        bound = newton_lower_bound(P, phi);
                    } catch (const NoCompactFaceError&) {
                        res.detail = "lower bound undefined on a certified instance";
                        return res;
                    }
                    if (!(bound == c.pair)) {
                        std::ostringstream why;
                        why << "mismatch at m=(" << mx << "," << my << ")";
                        res.detail = why.str();
                        return res;
                    }
                    ++checked;
                }
        }
    }
    res.pass = checked > 0;
    res.detail = "equality on " + std::to_string(checked) + " certified instances";
    return res;
}

inline CriterionResult criterion_suspension_bijection() {
    using namespace selftest_detail;
    CriterionResult res{"suspension-bijection", false, ""};
    std::mt19937_64 rng(31337);
    long instances = 0, forward_checks = 0;
    for (int trial = 0; trial < 400 && instances < 24; ++trial) {
        SparsePolynomial f = random_convenient_2d(rng);
        NewtonPolyhedron P = build_newton_polyhedron(f);
        if (!P.is_convenient()) continue;
        for (auto& face : P.faces) {
            if (!face.is_compact || face.on_coordinate_hyperplane) continue;
            FaceContext ctx;
            try {
                ctx = make_face_context(P, face);
            } catch (const std::logic_error&) {
                continue;
            }
            std::optional<Rational> chosen;
            for (long mx = 1; mx <= 5 && !chosen; ++mx)
                for (long my = 1; my <= 5 && !chosen; ++my) {
                    auto a = face_degree(ctx, Exponent(std::vector<long>{mx, my}));
                    if (a && !is_integer(*a) && *a > 0) chosen = *a;
                }
            if (!chosen) continue;
            auto [lhs, rhs] = suspended_quotient_dims(f, P, face, *chosen);
            if (lhs != rhs) {
                std::ostringstream why;
                why << "dimension mismatch " << lhs << " vs " << rhs;
                res.detail = why.str();
                return res;
            }
            ++instances;
            if (lhs == 0) continue;
            // forward map: some quotient-nonzero basis vector must stay
            // outside the image upstairs
            SparsePolynomial f_delta = face_polynomial(f, P, face);
            GradedBasis dom = graded_piece_basis(ctx, 0, *chosen - 1);
            GradedBasis tgt = graded_piece_basis(ctx, 2, *chosen);
            auto cols = koszul_de_rham_matrix(ctx, f_delta, dom, tgt);
            SuspensionProblem sp = build_suspension_problem(f, P, face, *chosen);
            bool found = false;
            for (std::size_t j = 0; j < tgt.elements.size() && !found; ++j) {
                GVector unit(tgt.elements.size(), GaussianRational());
                unit[j] = GaussianRational(Rational(1));
                if (image_membership(cols, unit).in_image) continue;
                LogForm phi(2, 2);
                phi.add_term(tgt.elements[j].first, tgt.elements[j].second,
                             GaussianRational(Rational(1)));
                auto [phi_hat, c] = suspend_form(phi, *chosen, sp.e);
                (void)c;
                if (!suspended_in_image(sp, phi_hat)) {
                    found = true;
                    ++forward_checks;
                }
            }
            if (!found) {
                res.detail = "no surviving forward image on a non-trivial instance";
                return res;
            }
        }
    }
    res.pass = instances >= 20;
    res.detail = std::to_string(instances) + " instances, " +
                 std::to_string(forward_checks) + " forward-map checks";
    return res;
}

inline CriterionResult criterion_principal_part_roundtrip() {
    CriterionResult res{"principal-part-roundtrip", false, ""};
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> nterms(0, 5), kdist(0, 3), p(-6, 6), q(1, 6);
    for (int t = 0; t < 1000; ++t) {
        AsymptoticSeries s;
        int k = nterms(rng);
        for (int i = 0; i < k; ++i) {
            Rational alpha(p(rng), q(rng));
            GaussianRational c(Rational(p(rng), q(rng)), Rational(p(rng), q(rng)));
            s.add_term(alpha, kdist(rng), c);
        }
        AsymptoticSeries back;
        for (auto& part : principal_parts(s)) {
            AsymptoticSeries piece = expand_principal_part(part);
            for (auto& [key, c] : piece.terms()) back.add_term(key.first, key.second, c);
        }
        if (!(back == s)) {
            res.detail = "round-trip failed at trial " + std::to_string(t);
            return res;
        }
    }
    res.pass = true;
    res.detail = "1000 random series, exact";
    return res;
}

inline CriterionResult criterion_model_mellin() {
    CriterionResult res{"model-mellin-quadrature", false, ""};
    double worst = 0;
    for (int m = 0; m <= 3; ++m) {
        std::vector<double> grid;
        for (int j = 1; j <= 10; ++j) grid.push_back(-m - 1 + 0.25 * j);
        auto rep = verify_model_mellin(m, grid);
        worst = std::max(worst, rep.max_rel_error);
    }
    if (worst > 1e-8) {
        res.detail = "quadrature relative error " + std::to_string(worst);
        return res;
    }
    const double pi = 3.14159265358979323846;
    double worst_res = 0;
    for (int m = 0; m <= 3; ++m)
        for (double eps : {0.1, 0.01, 0.001}) {
            double lam = -m - 1 + eps;
            auto rep = verify_model_mellin(m, {lam});
            double residue = (lam + m + 1) * rep.samples[0].value;
            worst_res = std::max(worst_res, std::abs(residue - pi));
        }
    if (worst_res > 1e-6) {
        res.detail = "residue extraction off by " + std::to_string(worst_res);
        return res;
    }
    std::ostringstream d;
    d << "max rel err " << worst << ", residue err " << worst_res;
    res.pass = true;
    res.detail = d.str();
    return res;
}

inline CriterionResult criterion_monte_carlo_fit(long samples = 10000000,
                                                 unsigned long seed = 987654321UL) {
    CriterionResult res{"monte-carlo-pole-fit", false, ""};
    auto grid = [](double lo, double hi, int steps) {
        std::vector<double> g;
        for (int j = 0; j < steps; ++j) g.push_back(lo + (hi - lo) * j / (steps - 1));
        return g;
    };
    SparsePolynomial f1 = parse_polynomial("x^2+y^3", 2);
    SparsePolynomial one = parse_polynomial("1", 2);
    auto fit1 = estimate_leading_pole_mc(f1, one, 0.8, grid(-0.80, -0.55, 6), samples, seed);
    SparsePolynomial f2 = parse_polynomial("x^5+x^2*y^2+y^5", 2);
    auto fit2 = estimate_leading_pole_mc(f2, one, 0.8, grid(-0.45, -0.25, 6), samples, seed);
    std::ostringstream d;
    d << "x^2+y^3: loc " << fit1.location << " ord " << fit1.order
      << "; x^5+x^2y^2+y^5: loc " << fit2.location << " ord " << fit2.order;
    res.detail = d.str();
    bool ok1 = std::abs(fit1.location + 5.0 / 6.0) <= 0.05 && fit1.order >= 0.7 &&
               fit1.order <= 1.3;
    bool ok2 = std::abs(fit2.location + 0.5) <= 0.05 && fit2.order >= 1.7 && fit2.order <= 2.3;
    res.pass = ok1 && ok2;
    return res;
}

inline CriterionResult criterion_newton_number() {
    CriterionResult res{"newton-number-oracle", false, ""};
    for (long a = 2; a <= 7; ++a)
        for (long b = 2; b <= 7; ++b) {
            SparsePolynomial f(2);
            f.add_term(Exponent(std::vector<long>{a, 0}), GaussianRational(Rational(1)));
            f.add_term(Exponent(std::vector<long>{0, b}), GaussianRational(Rational(1)));
            NewtonPolyhedron P = build_newton_polyhedron(f);
            BigInt mu = P.newton_number();
            if (mu != BigInt((a - 1) * (b - 1))) {
                std::ostringstream why;
                why << "x^" << a << "+y^" << b << " gave " << mu;
                res.detail = why.str();
                return res;
            }
        }
    res.pass = true;
    res.detail = "(a-1)(b-1) for all 2 <= a,b <= 7";
    return res;
}

inline CriterionResult criterion_lattice_counts() {
    using namespace selftest_detail;
    CriterionResult res{"lattice-count-identities", false, ""};
    std::vector<std::pair<std::string, std::size_t>> polys = {
        {"x^2+y^3", 2},       {"x^3+y^3", 2},          {"x^5+x^2*y^2+y^5", 2},
        {"x^4+x*y+y^4", 2},   {"x^2+y^3+z^4", 3},      {"x^3+y^3+z^3+x*y*z", 3},
        {"x^2+y^2+z^2", 3}};
    std::vector<Rational> scales = {Rational(1), Rational(2),     Rational(3),
                                    Rational(1, 2), Rational(5, 6), Rational(4, 3)};
    long compared = 0;
    for (auto& [text, n] : polys) {
        SparsePolynomial f = parse_polynomial(text, n);
        NewtonPolyhedron P = build_newton_polyhedron(f);
        for (auto& face : P.faces) {
            if (!face.is_compact || face.dim > 2) continue;
            for (auto& t : scales) {
                auto fast = P.lattice_points_scaled_face(face, t, false);
                std::sort(fast.begin(), fast.end());
                auto slow = brute_lattice_points(face, t, n);
                if (fast != slow) {
                    std::ostringstream why;
                    why << text << " face " << face.id << " scale " << to_string(t) << ": "
                        << fast.size() << " vs " << slow.size();
                    res.detail = why.str();
                    return res;
                }
                ++compared;
            }
        }
    }
    res.pass = true;
    res.detail = std::to_string(compared) + " face/scale pairs, exact";
    return res;
}

/// the full acceptance suite; prints one pass/fail line per criterion
inline std::vector<CriterionResult> run_acceptance(std::ostream& out,
                                                   long mc_samples = 10000000) {
    std::vector<CriterionResult> results;
    auto run = [&](CriterionResult r) {
        out << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.detail << ")\n"
            << std::flush;
        results.push_back(std::move(r));
    };
    run(criterion_certifier_oracles());
    run(criterion_order_bound_equality());
    run(criterion_suspension_bijection());
    run(criterion_principal_part_roundtrip());
    run(criterion_model_mellin());
    run(criterion_monte_carlo_fit(mc_samples));
    run(criterion_newton_number());
    run(criterion_lattice_counts());
    return results;
}

} // namespace newtasym

#endif

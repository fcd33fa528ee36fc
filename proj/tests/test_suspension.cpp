#include <catch2/catch_amalgamated.hpp>

#include <boost/math/constants/constants.hpp>

#include "newtasym/parse.hpp"
#include "newtasym/suspension.hpp"

using namespace newtasym;

namespace {

const Face& compact_edge(const NewtonPolyhedron& P) {
    for (auto& face : P.faces)
        if (face.dim == 1 && face.is_compact && !face.on_coordinate_hyperplane) return face;
    throw std::runtime_error("no compact edge");
}

} // namespace

TEST_CASE("suspension exponent is the lcm of the facet levels") {
    CHECK(suspension_exponent(build_newton_polyhedron(parse_polynomial("x^2+y^3", 2))) == 6);
    CHECK(suspension_exponent(build_newton_polyhedron(parse_polynomial("x^3+y^3", 2))) == 3);
    CHECK(suspension_exponent(
              build_newton_polyhedron(parse_polynomial("x^5+x^2*y^2+y^5", 2))) == 10);
    CHECK_THROWS_AS(suspension_exponent(build_newton_polyhedron(parse_polynomial("x*y", 2))),
                    std::invalid_argument);
}

TEST_CASE("suspending adds y^e/e in a fresh variable") {
    SparsePolynomial f = parse_polynomial("x^2+y^3", 2);
    SparsePolynomial F = suspend(f, 6);
    CHECK(F.nvars() == 3);
    CHECK(F.coeff(Exponent{2, 0, 0}) == GaussianRational(Rational(1)));
    CHECK(F.coeff(Exponent{0, 3, 0}) == GaussianRational(Rational(1)));
    CHECK(F.coeff(Exponent{0, 0, 6}) == GaussianRational(Rational(1, 6)));
    CHECK(F.terms().size() == 3);
    CHECK_THROWS_AS(suspend(f, 0), std::invalid_argument);
}

TEST_CASE("suspended form carries the eigenclass exponent c = e([a]+1-a)") {
    LogForm phi = holomorphic_to_log(parse_polynomial("1", 2));
    auto [phi_hat, c] = suspend_form(phi, Rational(5, 6), 6);
    CHECK(c == 1);
    CHECK(phi_hat.nvars() == 3);
    CHECK(phi_hat.grade() == 3);
    CHECK(phi_hat.coeff(IndexSet{1, 2, 3}, Exponent{1, 1, 1}) ==
          GaussianRational(Rational(1)));
    CHECK_THROWS_AS(suspend_form(phi, Rational(1, 7), 6), std::invalid_argument);
}

TEST_CASE("suspended face exists and has the expected vertices") {
    SparsePolynomial f = parse_polynomial("x^2+y^3", 2);
    NewtonPolyhedron P = build_newton_polyhedron(f);
    SuspensionProblem sp = build_suspension_problem(f, P, compact_edge(P), Rational(5, 6));
    CHECK(sp.e == 6);
    CHECK(sp.c == 1);
    CHECK(sp.b == Rational(1));
    const Face& dhat = sp.Phat.faces[sp.face_id];
    auto vs = dhat.vertices;
    std::sort(vs.begin(), vs.end());
    CHECK(vs == std::vector<Exponent>{Exponent{0, 0, 6}, Exponent{0, 3, 0}, Exponent{2, 0, 0}});
    CHECK(dhat.is_compact);
}

TEST_CASE("suspension preserves the quotient dimension") {
    struct Case {
        const char* f;
        Rational a;
    };
    for (auto& cse : {Case{"x^2+y^3", Rational(5, 6)}, Case{"x^2+y^3", Rational(11, 6)},
                      Case{"x^3+y^3", Rational(4, 3)},
                      Case{"x^2+x*y^2+y^4", Rational(3, 4)}}) {
        SparsePolynomial f = parse_polynomial(cse.f, 2);
        NewtonPolyhedron P = build_newton_polyhedron(f);
        auto [lhs, rhs] = suspended_quotient_dims(f, P, compact_edge(P), cse.a);
        INFO(cse.f << " at a = " << to_string(cse.a));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("suspension rejects integral degrees") {
    SparsePolynomial f = parse_polynomial("x^2+y^3", 2);
    NewtonPolyhedron P = build_newton_polyhedron(f);
    CHECK_THROWS_AS(build_suspension_problem(f, P, compact_edge(P), Rational(2)),
                    std::invalid_argument);
}

TEST_CASE("exact Beta at positive integers") {
    REQUIRE(beta_exact(Rational(1), Rational(1)).has_value());
    CHECK(*beta_exact(Rational(1), Rational(1)) == Rational(1));
    CHECK(*beta_exact(Rational(2), Rational(3)) == Rational(1, 12));
    CHECK(*beta_exact(Rational(4), Rational(4)) == Rational(1, 140));
    CHECK_FALSE(beta_exact(Rational(1, 2), Rational(1)).has_value());
}

TEST_CASE("Beta values: symmetry and B(1/2,1/2) = pi") {
    HighFloat pi = boost::math::constants::pi<HighFloat>();
    CHECK(abs(beta_value(Rational(1, 2), Rational(1, 2)) - pi) < HighFloat("1e-40"));
    for (auto& [x, y] : std::vector<std::pair<Rational, Rational>>{
             {Rational(1, 3), Rational(5, 6)}, {Rational(7, 2), Rational(2, 5)}}) {
        HighFloat d = beta_value(x, y) - beta_value(y, x);
        CHECK(abs(d) < HighFloat("1e-40"));
    }
    CHECK_THROWS_AS(beta_value(Rational(0), Rational(1)), std::domain_error);
}

TEST_CASE("leading-term tensor applies the Beta factor") {
    LeadingTerm omega{Rational(0), 0, HighComplex{2, 0}};
    LeadingTerm eta{Rational(0), 0, HighComplex{3, 0}};
    LeadingTerm out = leading_term_tensor(omega, eta);
    CHECK(out.alpha == Rational(1));
    CHECK(out.k == 0);
    CHECK(abs(out.coeff.re - 6) < HighFloat("1e-40")); // B(1,1) = 1

    LeadingTerm half{Rational(-1, 2), 0, HighComplex{1, 0}};
    LeadingTerm join = leading_term_tensor(half, half);
    CHECK(join.alpha == Rational(0));
    HighFloat pi = boost::math::constants::pi<HighFloat>();
    CHECK(abs(join.coeff.re - pi) < HighFloat("1e-40"));

    LeadingTerm logged{Rational(0), 1, HighComplex{1, 0}};
    CHECK(leading_term_tensor(logged, eta).k == 1);
    CHECK_THROWS_AS(leading_term_tensor(eta, logged), std::invalid_argument);
}

#include <catch2/catch_amalgamated.hpp>

#include "newtasym/certifier.hpp"
#include "newtasym/forms.hpp"
#include "newtasym/parse.hpp"

using namespace newtasym;

namespace {

struct Setup {
    SparsePolynomial f;
    NewtonPolyhedron P;
    LogForm phi;
};

Setup setup(const std::string& ftext, const std::string& htext) {
    SparsePolynomial f = parse_polynomial(ftext, 2);
    return Setup{f, build_newton_polyhedron(f), holomorphic_to_log(parse_polynomial(htext, 2))};
}

Certificate best_certificate(const Setup& s) {
    for (int id : admissible_faces(s.P, s.phi)) {
        Certificate c = certify(s.f, s.P, s.P.faces[id], s.phi, 4);
        if (c.verdict == Verdict::Certified) return c;
    }
    throw std::runtime_error("no certified face");
}

} // namespace

TEST_CASE("cusp: dx^dy over x^2+y^3 certifies (-1/6, 0)") {
    auto s = setup("x^2+y^3", "1");
    Certificate c = best_certificate(s);
    CHECK(c.pair == (LeadingPair{Rational(-1, 6), 0}));
    CHECK(c.a == Rational(5, 6));
    CHECK(c.r == 1);
    // the certificate carries a verified separating functional
    CHECK_FALSE(c.witness.empty());
}

TEST_CASE("xy dx^dy over x^3+y^3 certifies (1/3, 0)") {
    auto s = setup("x^3+y^3", "x*y");
    Certificate c = best_certificate(s);
    CHECK(c.pair == (LeadingPair{Rational(1, 3), 0}));
    CHECK(c.a == Rational(4, 3));
}

TEST_CASE("vertex face of x^5+x^2y^2+y^5 certifies (-1/2, 1)") {
    auto s = setup("x^5+x^2*y^2+y^5", "1");
    Certificate c = best_certificate(s);
    CHECK(c.pair == (LeadingPair{Rational(-1, 2), 1}));
    CHECK(c.r == 2);
}

TEST_CASE("(2x^2 - 3y^3) dx^dy over x^2+y^3 is inconclusive at a = 11/6") {
    auto s = setup("x^2+y^3", "2x^2-3y^3");
    auto ids = admissible_faces(s.P, s.phi);
    REQUIRE_FALSE(ids.empty());
    for (int id : ids) {
        Certificate c = certify(s.f, s.P, s.P.faces[id], s.phi, 4);
        CHECK(c.verdict == Verdict::Inconclusive);
        CHECK(c.a == Rational(11, 6));
    }
}

TEST_CASE("certificates are invariant under scaling the form by a unit") {
    auto s = setup("x^2+y^3", "1");
    Certificate base = best_certificate(s);
    LogForm scaled(2, 2);
    GaussianRational u(Rational(2), Rational(3)); // 2 + 3i
    for (auto& [key, c] : s.phi.terms()) scaled.add_term(key.first, key.second, u * c);
    auto s2 = s;
    s2.phi = scaled;
    Certificate c2 = best_certificate(s2);
    CHECK(c2.verdict == base.verdict);
    CHECK(c2.pair == base.pair);
    CHECK(c2.quotient_dim == base.quotient_dim);
}

TEST_CASE("quasi-homogeneous cross-check: degrees match the weighted count") {
    // f = x^3+y^3 is homogeneous: a(x^p y^q dx^dy) = (p+q+2)/3
    auto f = parse_polynomial("x^3+y^3", 2);
    NewtonPolyhedron P = build_newton_polyhedron(f);
    const Face* edge = nullptr;
    for (auto& face : P.faces)
        if (face.dim == 1 && face.is_compact) edge = &face;
    REQUIRE(edge != nullptr);
    for (long p = 0; p <= 2; ++p)
        for (long q = 0; q <= 2; ++q) {
            SparsePolynomial h = monomial(2, Exponent{p, q});
            LogForm phi = holomorphic_to_log(h);
            Certificate c = certify(f, P, *edge, phi, 2);
            if (c.verdict == Verdict::InvalidInput) continue;
            CHECK(c.a == Rational(p + q + 2, 3));
            if (c.verdict == Verdict::Certified)
                CHECK(c.pair.alpha == Rational(p + q + 2, 3) - 1);
        }
}

TEST_CASE("invalid inputs are rejected with reasons") {
    // not convenient
    {
        SparsePolynomial f = parse_polynomial("x^2+x*y", 2);
        NewtonPolyhedron P = build_newton_polyhedron(f);
        LogForm phi = holomorphic_to_log(parse_polynomial("1", 2));
        Certificate c = certify(f, P, P.faces.front(), phi, 2);
        CHECK(c.verdict == Verdict::InvalidInput);
        CHECK(c.reason == reason::non_convenient);
    }
    // support off the cone over a vertex face
    {
        auto f = parse_polynomial("x^5+x^2*y^2+y^5", 2);
        NewtonPolyhedron P = build_newton_polyhedron(f);
        const Face* vertex = nullptr;
        for (auto& face : P.faces)
            if (face.dim == 0 && face.vertices[0] == Exponent{2, 2}) vertex = &face;
        REQUIRE(vertex != nullptr);
        LogForm phi = holomorphic_to_log(parse_polynomial("y", 2)); // support (1,2)
        Certificate c = certify(f, P, *vertex, phi, 2);
        CHECK(c.verdict == Verdict::InvalidInput);
        CHECK(c.reason == reason::support_not_interior);
    }
    // integral a with r = n is outside the hypothesis
    {
        auto f = parse_polynomial("x^5+x^2*y^2+y^5", 2);
        NewtonPolyhedron P = build_newton_polyhedron(f);
        const Face* vertex = nullptr;
        for (auto& face : P.faces)
            if (face.dim == 0 && face.vertices[0] == Exponent{2, 2}) vertex = &face;
        REQUIRE(vertex != nullptr);
        LogForm phi = holomorphic_to_log(parse_polynomial("x*y", 2)); // a = 1, r = 2
        Certificate c = certify(f, P, *vertex, phi, 2);
        CHECK(c.verdict == Verdict::InvalidInput);
        CHECK(c.reason == reason::integer_a_with_r_equals_n);
    }
    // mixed degrees across the support
    {
        auto s = setup("x^2+y^3", "1+x*y");
        const Face* edge = nullptr;
        for (auto& face : s.P.faces)
            if (face.dim == 1 && face.is_compact) edge = &face;
        Certificate c = certify(s.f, s.P, *edge, s.phi, 2);
        CHECK(c.verdict == Verdict::InvalidInput);
        CHECK(c.reason == reason::mixed_degrees);
    }
}

TEST_CASE("admissible faces select the cone containing the support") {
    auto s = setup("x^5+x^2*y^2+y^5", "1");
    auto ids = admissible_faces(s.P, s.phi);
    REQUIRE(ids.size() == 1);
    CHECK(s.P.faces[ids[0]].dim == 0);
    CHECK(s.P.faces[ids[0]].vertices[0] == Exponent{2, 2});
}

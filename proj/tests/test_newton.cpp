#include <catch2/catch_amalgamated.hpp>

#include "newtasym/forms.hpp"
#include "newtasym/parse.hpp"
#include "newtasym/polyhedron.hpp"

using namespace newtasym;

namespace {

const Facet* find_facet(const NewtonPolyhedron& P, std::vector<long> normal) {
    for (auto& f : P.facets)
        if (f.normal == normal) return &f;
    return nullptr;
}

} // namespace

TEST_CASE("facets of x^2 + y^3") {
    NewtonPolyhedron P = build_newton_polyhedron(parse_polynomial("x^2+y^3", 2));
    REQUIRE(P.facets.size() == 3);
    auto* slant = find_facet(P, {3, 2});
    REQUIRE(slant != nullptr);
    CHECK(slant->level == 6);
    REQUIRE(find_facet(P, {1, 0}) != nullptr);
    REQUIRE(find_facet(P, {0, 1}) != nullptr);
    CHECK(find_facet(P, {1, 0})->level == 0);
    CHECK(find_facet(P, {0, 1})->level == 0);
    CHECK(P.is_convenient());
}

TEST_CASE("face lattice of x^2 + y^3") {
    NewtonPolyhedron P = build_newton_polyhedron(parse_polynomial("x^2+y^3", 2));
    int vertices = 0, compact_edges = 0;
    for (auto& face : P.faces) {
        if (face.dim == 0) ++vertices;
        if (face.dim == 1 && face.is_compact) {
            ++compact_edges;
            auto vs = face.vertices;
            std::sort(vs.begin(), vs.end());
            CHECK(vs == std::vector<Exponent>{Exponent{0, 3}, Exponent{2, 0}});
            CHECK_FALSE(face.on_coordinate_hyperplane);
        }
    }
    CHECK(vertices == 2);
    CHECK(compact_edges == 1);
}

TEST_CASE("Newton order of monomials") {
    NewtonPolyhedron P = build_newton_polyhedron(parse_polynomial("x^2+y^3", 2));
    CHECK(P.newton_order(Exponent{1, 1}) == Rational(5, 6));
    CHECK(P.newton_order(Exponent{2, 0}) == Rational(1));
    CHECK(P.newton_order(Exponent{0, 3}) == Rational(1));
    CHECK(P.newton_order(Exponent{2, 3}) == Rational(2));
    CHECK(P.newton_order(Exponent{0, 0}) == Rational(0));
    CHECK_THROWS_AS(P.newton_order(Exponent{-1, 0}), std::invalid_argument);
}

TEST_CASE("degenerate support has no Newton order") {
    NewtonPolyhedron P = build_newton_polyhedron({Exponent{0, 0}});
    CHECK_THROWS_AS(P.newton_order(Exponent{1, 1}), DegenerateSupportError);
}

TEST_CASE("non-convenient support is detected") {
    NewtonPolyhedron P = build_newton_polyhedron(parse_polynomial("x*y", 2));
    CHECK_FALSE(P.is_convenient());
    CHECK_THROWS_AS(P.newton_number(), std::invalid_argument);
}

TEST_CASE("order pair (v, l) of forms") {
    NewtonPolyhedron P1 = build_newton_polyhedron(parse_polynomial("x^2+y^3", 2));
    LogForm phi1 = holomorphic_to_log(parse_polynomial("1", 2));
    CHECK(newton_pair_form(P1, phi1) == OrderPair{Rational(5, 6), 0});
    CHECK(newton_lower_bound(P1, phi1) == (LeadingPair{Rational(-1, 6), 0}));

    NewtonPolyhedron P2 = build_newton_polyhedron(parse_polynomial("x^5+x^2*y^2+y^5", 2));
    LogForm phi2 = holomorphic_to_log(parse_polynomial("1", 2));
    // minimizing point (1,1) sits over the vertex (2,2): codimension defect 1
    CHECK(newton_pair_form(P2, phi2) == OrderPair{Rational(1, 2), 1});
    CHECK(newton_lower_bound(P2, phi2) == (LeadingPair{Rational(-1, 2), 1}));

    NewtonPolyhedron P3 = build_newton_polyhedron(parse_polynomial("x^3+y^3", 2));
    LogForm phi3 = holomorphic_to_log(parse_polynomial("x*y", 2));
    CHECK(newton_pair_form(P3, phi3) == OrderPair{Rational(4, 3), 0});
}

TEST_CASE("smallest containing face") {
    NewtonPolyhedron P = build_newton_polyhedron(parse_polynomial("x^2+y^3", 2));
    auto mid = P.smallest_face_containing({Rational(1), Rational(3, 2)});
    REQUIRE(mid.has_value());
    CHECK(P.faces[*mid].dim == 1);
    CHECK(P.faces[*mid].is_compact);
    auto vx = P.smallest_face_containing({Rational(2), Rational(0)});
    REQUIRE(vx.has_value());
    CHECK(P.faces[*vx].dim == 0);
    // interior point is tight on no facet
    CHECK_FALSE(P.smallest_face_containing({Rational(3), Rational(4)}).has_value());
    // points outside the polyhedron
    CHECK_FALSE(P.smallest_face_containing({Rational(0), Rational(0)}).has_value());
}

TEST_CASE("Newton number of Brieskorn polynomials") {
    for (long a = 2; a <= 7; ++a)
        for (long b = 2; b <= 7; ++b) {
            SparsePolynomial f(2);
            f.add_term(Exponent{a, 0}, GaussianRational(Rational(1)));
            f.add_term(Exponent{0, b}, GaussianRational(Rational(1)));
            CHECK(build_newton_polyhedron(f).newton_number() == BigInt((a - 1) * (b - 1)));
        }
    // a three-variable check: mu(x^2+y^2+z^2) = 1
    NewtonPolyhedron P = build_newton_polyhedron(parse_polynomial("x^2+y^2+z^2", 3));
    CHECK(P.newton_number() == BigInt(1));
}

TEST_CASE("lattice points of scaled faces") {
    NewtonPolyhedron P = build_newton_polyhedron(parse_polynomial("x^2+y^3", 2));
    const Face* edge = nullptr;
    for (auto& face : P.faces)
        if (face.dim == 1 && face.is_compact) edge = &face;
    REQUIRE(edge != nullptr);
    auto closed = P.lattice_points_scaled_face(*edge, Rational(1), false);
    CHECK(closed == std::vector<Exponent>{Exponent{0, 3}, Exponent{2, 0}});
    auto interior = P.lattice_points_scaled_face(*edge, Rational(1), true);
    CHECK(interior.empty());
    // 2*edge runs from (4,0) to (0,6); lattice points need <(3,2),m> = 12
    auto doubled = P.lattice_points_scaled_face(*edge, Rational(2), false);
    CHECK(doubled == std::vector<Exponent>{Exponent{0, 6}, Exponent{2, 3}, Exponent{4, 0}});
    auto doubled_int = P.lattice_points_scaled_face(*edge, Rational(2), true);
    CHECK(doubled_int == std::vector<Exponent>{Exponent{2, 3}});
    CHECK_THROWS_AS(P.lattice_points_scaled_face(*edge, Rational(0), false),
                    std::invalid_argument);
}

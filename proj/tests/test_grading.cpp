#include <catch2/catch_amalgamated.hpp>

#include "newtasym/grading.hpp"
#include "newtasym/parse.hpp"

using namespace newtasym;

namespace {

const Face& compact_edge(const NewtonPolyhedron& P) {
    for (auto& face : P.faces)
        if (face.dim == 1 && face.is_compact && !face.on_coordinate_hyperplane) return face;
    throw std::runtime_error("no compact edge");
}

} // namespace

TEST_CASE("face polynomial keeps only the terms on the face") {
    SparsePolynomial f = parse_polynomial("x^2+y^3+x*y^5", 2);
    NewtonPolyhedron P = build_newton_polyhedron(f);
    const Face& edge = compact_edge(P);
    SparsePolynomial fd = face_polynomial(f, P, edge);
    CHECK(fd == parse_polynomial("x^2+y^3", 2));
}

TEST_CASE("face context covector and level") {
    NewtonPolyhedron P = build_newton_polyhedron(parse_polynomial("x^2+y^3", 2));
    FaceContext ctx = make_face_context(P, compact_edge(P));
    CHECK(ctx.r == 1);
    CHECK(ctx.w == std::vector<long>{3, 2});
    CHECK(ctx.N == 6);
}

TEST_CASE("face degrees and interior membership") {
    NewtonPolyhedron P = build_newton_polyhedron(parse_polynomial("x^2+y^3", 2));
    FaceContext ctx = make_face_context(P, compact_edge(P));

    auto a = face_degree(ctx, Exponent{1, 1});
    REQUIRE(a.has_value());
    CHECK(*a == Rational(5, 6));
    CHECK(scaled_face_interior_test(ctx, *a, Exponent{1, 1}));

    auto b = face_degree(ctx, Exponent{2, 3});
    REQUIRE(b.has_value());
    CHECK(*b == Rational(2));
    CHECK(scaled_face_interior_test(ctx, *b, Exponent{2, 3}));

    // (6,0) lies on 3*edge but on the coordinate axis: closed yes, interior no
    auto c = face_degree(ctx, Exponent{6, 0});
    REQUIRE(c.has_value());
    CHECK(*c == Rational(3));
    CHECK_FALSE(scaled_face_interior_test(ctx, *c, Exponent{6, 0}));

    // (3,0) is the endpoint of (3/2)*edge: graded but not interior
    auto d = face_degree(ctx, Exponent{3, 0});
    REQUIRE(d.has_value());
    CHECK(*d == Rational(3, 2));
    CHECK_FALSE(scaled_face_interior_test(ctx, *d, Exponent{3, 0}));
    CHECK(face_degree(ctx, Exponent{0, 0}).has_value());
    CHECK(*face_degree(ctx, Exponent{0, 0}) == Rational(0));
}

TEST_CASE("vertex faces grade by their own cone") {
    NewtonPolyhedron P = build_newton_polyhedron(parse_polynomial("x^5+x^2*y^2+y^5", 2));
    const Face* vertex = nullptr;
    for (auto& face : P.faces)
        if (face.dim == 0 && face.vertices[0] == Exponent{2, 2}) vertex = &face;
    REQUIRE(vertex != nullptr);
    FaceContext ctx = make_face_context(P, *vertex);
    CHECK(ctx.r == 2);
    // (1,1) = (1/2) * (2,2): degree 1/2 on the vertex cone
    auto a = face_degree(ctx, Exponent{1, 1});
    REQUIRE(a.has_value());
    CHECK(*a == Rational(1, 2));
    CHECK(scaled_face_interior_test(ctx, *a, Exponent{1, 1}));
    // (1,2) is not a multiple of (2,2)
    CHECK_FALSE(face_degree(ctx, Exponent{1, 2}).has_value());
}

TEST_CASE("faces on coordinate hyperplanes are rejected") {
    NewtonPolyhedron P = build_newton_polyhedron(parse_polynomial("x^2+y^3", 2));
    for (auto& face : P.faces)
        if (face.on_coordinate_hyperplane || !face.is_compact)
            CHECK_THROWS_AS(make_face_context(P, face), std::invalid_argument);
}

TEST_CASE("non-degeneracy heuristic passes Brieskorn face polynomials") {
    for (const char* text : {"x^2+y^3", "x^3+y^3", "x^2+x*y+y^2"}) {
        SparsePolynomial fd = parse_polynomial(text, 2);
        auto rep = nondegeneracy_heuristic(fd, 20, 2025);
        INFO(text);
        CHECK(rep.verdict == NondegeneracyReport::Verdict::PassHeuristic);
        CHECK_FALSE(rep.witness.has_value());
    }
}

TEST_CASE("non-degeneracy heuristic finds the critical torus point of (x+y)^2") {
    SparsePolynomial fd = parse_polynomial("x^2+2*x*y+y^2", 2);
    auto rep = nondegeneracy_heuristic(fd, 40, 99);
    REQUIRE(rep.verdict == NondegeneracyReport::Verdict::Fail);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness_residual < 1e-10);
    // witness is checkable: both Euler derivatives vanish there
    auto& x = *rep.witness;
    for (std::size_t i = 1; i <= 2; ++i) {
        auto g = euler_derivative(fd, i);
        double scale = std::abs(x[0]) + std::abs(x[1]) + 1;
        CHECK(std::abs(g.eval(x)) < 1e-6 * scale * scale);
    }
}

#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "newtasym/multivector.hpp"
#include "newtasym/polynomial.hpp"

using namespace newtasym;

namespace {

/// Independent determinant by Laplace expansion along the first row.
Rational laplace_det(const std::vector<std::vector<Rational>>& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    Rational s = 0;
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<Rational>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Rational> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            minor.push_back(std::move(row));
        }
        Rational term = m[0][c] * laplace_det(minor);
        s += (c % 2 == 0) ? term : -term;
    }
    return s;
}

MultiVector top_form(std::size_t n) {
    MultiVector omega(n, static_cast<int>(n));
    IndexSet full;
    for (int i = 1; i <= static_cast<int>(n); ++i) full.push_back(i);
    omega.add(full, GaussianRational(Rational(1)));
    return omega;
}

} // namespace

TEST_CASE("rational strings round-trip") {
    for (const char* s : {"0", "7", "-3", "5/6", "-11/6", "1000000000000000000000/7"}) {
        Rational q = parse_rational(s);
        CHECK(to_string(q) == s);
        CHECK(parse_rational(to_string(q)) == q);
    }
    CHECK(to_string(Rational(4, 6)) == "2/3");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("floor and integrality") {
    CHECK(floor_int(Rational(7, 2)) == 3);
    CHECK(floor_int(Rational(-7, 2)) == -4);
    CHECK(floor_int(Rational(-4)) == -4);
    CHECK(is_integer(Rational(6, 3)));
    CHECK_FALSE(is_integer(Rational(5, 6)));
}

TEST_CASE("Gaussian rational field axioms on samples") {
    GaussianRational a(Rational(2, 3), Rational(-1, 5));
    GaussianRational b(Rational(-4), Rational(7, 2));
    GaussianRational i = GaussianRational::i();
    CHECK(i * i == GaussianRational(Rational(-1)));
    CHECK((a * b) / b == a);
    CHECK(a * a.conj() == GaussianRational(a.norm()));
    CHECK(a + (-a) == GaussianRational());
    CHECK_THROWS_AS(a / GaussianRational(), std::domain_error);
}

TEST_CASE("sparse polynomial ring operations") {
    SparsePolynomial x = monomial(2, Exponent{1, 0});
    SparsePolynomial y = monomial(2, Exponent{0, 1});
    SparsePolynomial p = (x + y) * (x + y);
    CHECK(p.coeff(Exponent{2, 0}) == GaussianRational(Rational(1)));
    CHECK(p.coeff(Exponent{1, 1}) == GaussianRational(Rational(2)));
    CHECK(p.coeff(Exponent{0, 2}) == GaussianRational(Rational(1)));
    CHECK((p - p).is_zero());
    // cancellation never leaves a zero term stored
    SparsePolynomial q = x - x;
    CHECK(q.terms().empty());
    CHECK_THROWS_AS(monomial(2, Exponent{-1, 0}), std::invalid_argument);
}

TEST_CASE("Euler derivative x_i d/dx_i") {
    SparsePolynomial f = monomial(2, Exponent{2, 3}, GaussianRational(Rational(5)));
    SparsePolynomial g = euler_derivative(f, 1);
    CHECK(g.coeff(Exponent{2, 3}) == GaussianRational(Rational(10)));
    CHECK(euler_derivative(f, 2).coeff(Exponent{2, 3}) == GaussianRational(Rational(15)));
    CHECK_THROWS_AS(euler_derivative(f, 3), std::out_of_range);
}

TEST_CASE("contraction annihilates repeated covectors") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> d(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 2 + trial % 4; // 2..5
        MultiVector omega = top_form(n);
        std::vector<Rational> v(n);
        for (auto& q : v) q = Rational(d(rng), 1 + (trial % 3));
        MultiVector once = contract(v, omega);
        if (once.grade() > 0) CHECK(contract(v, once).is_zero());
    }
}

TEST_CASE("full contraction of the top form computes the determinant") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-4, 4);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + trial % 4; // 2..5
        std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
        std::vector<std::vector<Rational>> vs;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) m[r][c] = Rational(d(rng), 1 + (r % 2));
            vs.push_back(m[r]);
        }
        MultiVector res = iterated_contraction(vs, top_form(n));
        REQUIRE(res.grade() == 0);
        GaussianRational got;
        for (auto& [I, c] : res.components()) got = c;
        // sign (-1)^{n(n-1)/2} from peeling indices off the ascending wedge
        Rational expect = laplace_det(m);
        if ((n * (n - 1) / 2) % 2 == 1) expect = -expect;
        CHECK(got == GaussianRational(expect));
    }
}

TEST_CASE("contraction is alternating in the covectors") {
    std::vector<Rational> u{Rational(1), Rational(2), Rational(3)};
    std::vector<Rational> v{Rational(-1), Rational(5, 2), Rational(0)};
    std::vector<Rational> w{Rational(4), Rational(0), Rational(1, 3)};
    MultiVector omega = top_form(3);
    MultiVector a = iterated_contraction({u, v, w}, omega);
    MultiVector b = iterated_contraction({v, u, w}, omega);
    GaussianRational ca, cb;
    for (auto& [I, c] : a.components()) ca = c;
    for (auto& [I, c] : b.components()) cb = c;
    CHECK(ca == -cb);
    CHECK(iterated_contraction({u, u, w}, omega).is_zero());
}

TEST_CASE("multivector input validation") {
    MultiVector omega(3, 2);
    CHECK_THROWS_AS(omega.add(IndexSet{2, 1}, GaussianRational(Rational(1))),
                    std::invalid_argument);
    CHECK_THROWS_AS(omega.add(IndexSet{1, 4}, GaussianRational(Rational(1))),
                    std::invalid_argument);
    CHECK_THROWS_AS(contract({Rational(1), Rational(1)}, omega), std::invalid_argument);
}

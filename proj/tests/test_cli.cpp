#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#include "newtasym/parse.hpp"

using nlohmann::json;
using namespace newtasym;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(NEWTASYM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        res.stdout_text.append(buf.data(), got);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("parser accepts the documented grammar") {
    SparsePolynomial p = parse_polynomial("1/3*x^3+i*y", 2);
    CHECK(p.coeff(Exponent{3, 0}) == GaussianRational(Rational(1, 3)));
    CHECK(p.coeff(Exponent{0, 1}) == GaussianRational::i());
    // implicit products and numbered variables
    CHECK(parse_polynomial("2x y", 2) ==
          parse_polynomial("2*x*y", 2));
    SparsePolynomial q = parse_polynomial("x1^2+x3", 0);
    CHECK(q.nvars() == 3);
    CHECK(parse_polynomial("- x + 4", 1).coeff(Exponent{1}) ==
          GaussianRational(Rational(-1)));
}

TEST_CASE("parser reports positions on malformed input") {
    try {
        parse_polynomial("x^2 + @", 2);
        FAIL("expected a ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 6);
    }
    CHECK_THROWS_AS(parse_polynomial("x^-2", 1), ParseError);
    CHECK_THROWS_AS(parse_polynomial("1/0", 1), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x1+y", 0), ParseError);
    CHECK_THROWS_AS(parse_polynomial("", 1), ParseError);
}

TEST_CASE("cli newton reports the polyhedron and Newton number") {
    auto res = run_cli("newton --f x^2+y^3");
    REQUIRE(res.exit_code == 0);
    json doc = json::parse(res.stdout_text);
    CHECK(doc.at("convenient") == true);
    CHECK(doc.at("newton_number") == "2");
    CHECK(doc.at("polyhedron").at("facets").size() == 3);
}

TEST_CASE("cli analyze prints the order pair as exact rationals") {
    auto res = run_cli("analyze --f x^2+y^3 --form 1");
    REQUIRE(res.exit_code == 0);
    json doc = json::parse(res.stdout_text);
    CHECK(doc.at("order_pair").at("v") == "5/6");
    CHECK(doc.at("order_pair").at("l") == 0);
    CHECK(doc.at("lower_bound").at("alpha") == "-1/6");
    CHECK(doc.at("lower_bound").at("k") == 0);
}

TEST_CASE("cli certify emits a certificate with witness") {
    auto res = run_cli("certify --f x^2+y^3 --form 1 --face auto");
    REQUIRE(res.exit_code == 0);
    json doc = json::parse(res.stdout_text);
    REQUIRE(doc.at("certificates").size() >= 1);
    const json& cert = doc.at("certificates").at(0);
    CHECK(cert.at("verdict") == "certified");
    CHECK(cert.at("alpha") == "-1/6");
    CHECK(cert.at("k") == 0);
    CHECK(cert.at("a") == "5/6");
    CHECK_FALSE(cert.at("witness").empty());
}

TEST_CASE("cli certify accepts explicit face selectors") {
    auto by_vertices = run_cli("certify --f x^2+y^3 --form 1 --face \"2,0;0,3\"");
    REQUIRE(by_vertices.exit_code == 0);
    json doc = json::parse(by_vertices.stdout_text);
    CHECK(doc.at("certificates").at(0).at("verdict") == "certified");
}

TEST_CASE("cli suspend-check verifies the dimension equality") {
    auto res = run_cli("suspend-check --f x^2+y^3 --face \"2,0;0,3\" --a 5/6");
    REQUIRE(res.exit_code == 0);
    json doc = json::parse(res.stdout_text);
    CHECK(doc.at("e") == 6);
    CHECK(doc.at("c") == 1);
    CHECK(doc.at("b") == "1");
    CHECK(doc.at("equal") == true);
    CHECK(doc.at("lhs_dim") == doc.at("rhs_dim"));
}

TEST_CASE("cli exit codes distinguish failure classes") {
    CHECK(run_cli("newton --f x^2+@").exit_code == 3);       // parse error
    CHECK(run_cli("analyze --f 5 --form 1").exit_code == 2); // degenerate support
    CHECK(run_cli("certify --f x^2+x*y --form 1 --face 0").exit_code == 2);
    // numeric verification failure: impossible expected location
    auto res = run_cli("mellin-fit --f x^2+y^3 --grid -0.6:-0.3:4 --samples 50000 "
                       "--seed 7 --expect-location -100 --tol 0.001");
    CHECK(res.exit_code == 4);
}

TEST_CASE("cli mellin-fit output is byte-identical for a fixed seed") {
    std::string out1 = "/tmp/newtasym_cli_fit1.json";
    std::string out2 = "/tmp/newtasym_cli_fit2.json";
    std::string args = "mellin-fit --f x^2+y^3 --grid -0.6:-0.3:4 --samples 60000 --seed 5 ";
    REQUIRE(run_cli(args + "--output " + out1).exit_code == 0);
    REQUIRE(run_cli(args + "--output " + out2).exit_code == 0);
    std::string a = slurp(out1), b = slurp(out2);
    CHECK(a == b);
    json doc = json::parse(a);
    CHECK(doc.at("lambda_grid").size() == 4);
    CHECK(doc.at("values").size() == 4);
    CHECK(doc.at("seed") == 5);
    std::remove(out1.c_str());
    std::remove(out2.c_str());
}

TEST_CASE("cli mellin-fit dumps the measured curve as CSV") {
    std::string csv = "/tmp/newtasym_cli_curve.csv";
    auto res = run_cli("mellin-fit --f x^2+y^3 --grid -0.6:-0.3:4 --samples 50000 "
                       "--seed 9 --dump-curve " + csv);
    REQUIRE(res.exit_code == 0);
    std::string text = slurp(csv);
    CHECK(text.rfind("lambda,M,stderr\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 5); // header + 4 rows
    std::remove(csv.c_str());
}

TEST_CASE("cli json round-trips the polyhedron document") {
    auto res = run_cli("newton --f x^5+x^2*y^2+y^5");
    REQUIRE(res.exit_code == 0);
    json doc = json::parse(res.stdout_text);
    json again = json::parse(doc.dump());
    CHECK(again == doc);
}

// newtasym command line: Newton polyhedra, leading-pair certificates,
// suspension checks and Mellin pole verification. JSON on stdout,
// diagnostics on stderr.
//
// exit codes: 0 success, 2 invalid input, 3 parse error,
//             4 numeric verification beyond tolerance

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "newtasym/json_io.hpp"
#include "newtasym/parse.hpp"
#include "newtasym/selftest.hpp"

using namespace newtasym;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitParse = 3;
constexpr int kExitNumeric = 4;

void emit(const json& doc, const std::string& output_path) {
    std::string text = doc.dump(2) + "\n";
    if (output_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output_path);
        if (!out) throw std::runtime_error("cannot open output file " + output_path);
        out << text;
    }
}

std::vector<double> parse_grid(const std::string& spec) {
    double lo, hi;
    int steps;
    char c1, c2;
    std::istringstream in(spec);
    if (!(in >> lo >> c1 >> hi >> c2 >> steps) || c1 != ':' || c2 != ':' || steps < 2)
        throw CLI::ValidationError("--grid expects lo:hi:steps with steps >= 2");
    std::vector<double> g;
    for (int j = 0; j < steps; ++j) g.push_back(lo + (hi - lo) * j / (steps - 1));
    return g;
}

/// face selector: "auto", a face id, or a semicolon-separated vertex list
/// like "2,0;0,3"
std::vector<int> select_faces(const NewtonPolyhedron& P, const std::string& sel,
                              const LogForm* phi) {
    if (sel == "auto") {
        if (!phi) throw std::runtime_error("--face auto needs a form");
        return admissible_faces(P, *phi);
    }
    if (sel.find(';') == std::string::npos &&
        sel.find_first_not_of("0123456789") == std::string::npos) {
        int id = std::stoi(sel);
        if (id < 0 || id >= static_cast<int>(P.faces.size()))
            throw std::runtime_error("face id out of range");
        return {id};
    }
    std::vector<Exponent> want;
    std::istringstream in(sel);
    std::string tuple;
    while (std::getline(in, tuple, ';')) {
        std::vector<long> coords;
        std::istringstream tin(tuple);
        std::string num;
        while (std::getline(tin, num, ',')) coords.push_back(std::stol(num));
        if (coords.size() != P.n) throw std::runtime_error("vertex arity mismatch");
        want.push_back(Exponent(coords));
    }
    std::sort(want.begin(), want.end());
    for (auto& face : P.faces) {
        auto vs = face.vertices;
        std::sort(vs.begin(), vs.end());
        if (vs == want) return {face.id};
    }
    throw std::runtime_error("no face with the given vertex set");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Newton-polyhedron asymptotics toolkit"};
    app.require_subcommand(1);

    std::string f_text, form_text = "1", face_sel = "auto", output_path, grid_spec,
                a_text, dump_curve;
    unsigned long seed = 987654321UL;
    long samples = 10000000;
    double tol = 0.05, rho = 0.8;
    std::size_t nvars = 0;

    auto add_common = [&](CLI::App* cmd, bool needs_f) {
        if (needs_f) cmd->add_option("--f", f_text, "polynomial text")->required();
        cmd->add_option("--nvars", nvars, "declared variable count (0 = infer)");
        cmd->add_option("--output", output_path, "write the JSON document to a file");
    };

    auto* cmd_newton = app.add_subcommand("newton", "polyhedron, faces, Newton number");
    add_common(cmd_newton, true);

    auto* cmd_analyze = app.add_subcommand("analyze", "Newton order pair and lower bound");
    add_common(cmd_analyze, true);
    cmd_analyze->add_option("--form", form_text, "top-form coefficient h");

    auto* cmd_certify = app.add_subcommand("certify", "leading-pair certificates");
    add_common(cmd_certify, true);
    cmd_certify->add_option("--form", form_text, "top-form coefficient h");
    cmd_certify->add_option("--face", face_sel, "auto, face id, or vertex list v1;v2");
    cmd_certify->add_option("--seed", seed, "non-degeneracy heuristic seed");

    auto* cmd_suspend = app.add_subcommand("suspend-check", "suspension dimension equality");
    add_common(cmd_suspend, true);
    cmd_suspend->add_option("--face", face_sel, "face id or vertex list");
    cmd_suspend->add_option("--a", a_text, "face degree, rational p/q")->required();

    auto* cmd_mellin = app.add_subcommand("mellin-fit", "Monte Carlo pole fit");
    add_common(cmd_mellin, true);
    cmd_mellin->add_option("--form", form_text, "top-form coefficient h");
    cmd_mellin->add_option("--grid", grid_spec, "lambda grid lo:hi:steps")->required();
    cmd_mellin->add_option("--samples", samples, "Monte Carlo sample count");
    cmd_mellin->add_option("--seed", seed, "master seed");
    cmd_mellin->add_option("--rho", rho, "polydisk radius");
    cmd_mellin->add_option("--tol", tol, "verification tolerance for --expect-location");
    std::string expect_loc;
    cmd_mellin->add_option("--expect-location", expect_loc,
                           "fail (exit 4) when the fitted location differs by more than --tol");
    cmd_mellin->add_option("--dump-curve", dump_curve, "CSV of (lambda, M) pairs");

    auto* cmd_selftest = app.add_subcommand("selftest", "full acceptance suite");
    cmd_selftest->add_option("--output", output_path, "write the JSON document to a file");
    cmd_selftest->add_option("--samples", samples, "Monte Carlo sample count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_newton->parsed()) {
            SparsePolynomial f = parse_polynomial(f_text, nvars);
            NewtonPolyhedron P = build_newton_polyhedron(f);
            json doc = {{"polyhedron", polyhedron_to_json(P)},
                        {"convenient", P.is_convenient()}};
            long compact = 0;
            for (auto& face : P.faces)
                if (face.is_compact) ++compact;
            doc["compact_faces"] = compact;
            if (P.is_convenient()) doc["newton_number"] = P.newton_number().str();
            emit(doc, output_path);
            return kExitOk;
        }
        if (cmd_analyze->parsed()) {
            SparsePolynomial f = parse_polynomial(f_text, nvars);
            NewtonPolyhedron P = build_newton_polyhedron(f);
            SparsePolynomial h = parse_polynomial(form_text, P.n);
            LogForm phi = holomorphic_to_log(h);
            json doc;
            try {
                OrderPair vl = newton_pair_form(P, phi);
                doc["order_pair"] = order_pair_to_json(vl);
                doc["lower_bound"] = leading_pair_to_json(newton_lower_bound(P, phi));
            } catch (const DegenerateSupportError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitInvalid;
            } catch (const NoCompactFaceError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitInvalid;
            }
            emit(doc, output_path);
            return kExitOk;
        }
        if (cmd_certify->parsed()) {
            SparsePolynomial f = parse_polynomial(f_text, nvars);
            NewtonPolyhedron P = build_newton_polyhedron(f);
            SparsePolynomial h = parse_polynomial(form_text, P.n);
            LogForm phi = holomorphic_to_log(h);
            auto ids = select_faces(P, face_sel, &phi);
            if (ids.empty()) {
                std::cerr << "error: no admissible face for the given form\n";
                return kExitInvalid;
            }
            json certs = json::array();
            bool any_invalid = false;
            for (int id : ids) {
                Certificate c = certify(f, P, P.faces[id], phi, 40, seed);
                if (c.verdict == Verdict::InvalidInput) any_invalid = true;
                certs.push_back(certificate_to_json(c));
            }
            emit(json{{"certificates", certs}}, output_path);
            return any_invalid ? kExitInvalid : kExitOk;
        }
        if (cmd_suspend->parsed()) {
            SparsePolynomial f = parse_polynomial(f_text, nvars);
            NewtonPolyhedron P = build_newton_polyhedron(f);
            Rational a = parse_rational(a_text);
            if (face_sel == "auto") {
                std::cerr << "error: suspend-check needs an explicit --face\n";
                return kExitInvalid;
            }
            auto ids = select_faces(P, face_sel, nullptr);
            const Face& face = P.faces[ids.at(0)];
            auto [lhs, rhs] = suspended_quotient_dims(f, P, face, a);
            SuspensionProblem sp = build_suspension_problem(f, P, face, a);
            json doc = {{"e", sp.e},     {"c", sp.c},      {"b", rational_to_json(sp.b)},
                        {"lhs_dim", lhs}, {"rhs_dim", rhs}, {"equal", lhs == rhs}};
            emit(doc, output_path);
            return lhs == rhs ? kExitOk : kExitNumeric;
        }
        if (cmd_mellin->parsed()) {
            SparsePolynomial f = parse_polynomial(f_text, nvars);
            SparsePolynomial h = parse_polynomial(form_text, f.nvars());
            auto grid = parse_grid(grid_spec);
            MonteCarloPoleFit fit;
            try {
                fit = estimate_leading_pole_mc(f, h, rho, grid, samples, seed);
            } catch (const std::runtime_error& e) {
                std::cerr << "error: " << e.what() << "\n";
                return kExitNumeric;
            }
            if (!dump_curve.empty()) {
                std::ofstream csv(dump_curve);
                csv << "lambda,M,stderr\n";
                for (std::size_t j = 0; j < fit.lambda_grid.size(); ++j)
                    csv << fit.lambda_grid[j] << "," << fit.values[j] << ","
                        << fit.std_errors[j] << "\n";
            }
            emit(mc_fit_to_json(fit), output_path);
            if (!expect_loc.empty()) {
                double want = to_double(parse_rational(expect_loc));
                if (std::abs(fit.location - want) > tol) {
                    std::cerr << "error: fitted location " << fit.location
                              << " misses " << expect_loc << " by more than " << tol << "\n";
                    return kExitNumeric;
                }
            }
            return kExitOk;
        }
        if (cmd_selftest->parsed()) {
            auto results = run_acceptance(std::cerr, samples);
            json arr = json::array();
            bool all = true;
            for (auto& r : results) {
                arr.push_back(json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
                all = all && r.pass;
            }
            emit(json{{"criteria", arr}, {"all_pass", all}}, output_path);
            return all ? kExitOk : kExitNumeric;
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}

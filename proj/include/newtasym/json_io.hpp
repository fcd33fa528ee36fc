#ifndef NEWTASYM_JSON_IO_HPP
#define NEWTASYM_JSON_IO_HPP

#include <nlohmann/json.hpp>

#include "newtasym/certifier.hpp"
#include "newtasym/forms.hpp"
#include "newtasym/mellin.hpp"
#include "newtasym/polyhedron.hpp"
#include "newtasym/suspension.hpp"

namespace newtasym {

using nlohmann::json;

/// Exact fields travel as strings "p" or "p/q", never as floats.
inline json rational_to_json(const Rational& q) { return to_string(q); }
inline Rational rational_from_json(const json& j) { return parse_rational(j.get<std::string>()); }

inline json gaussian_to_json(const GaussianRational& g) {
    return json{{"re", rational_to_json(g.re)}, {"im", rational_to_json(g.im)}};
}
inline GaussianRational gaussian_from_json(const json& j) {
    return GaussianRational(rational_from_json(j.at("re")), rational_from_json(j.at("im")));
}

inline json exponent_to_json(const Exponent& m) { return json(m.coords); }
inline Exponent exponent_from_json(const json& j) {
    return Exponent(j.get<std::vector<long>>());
}

inline json facet_to_json(const Facet& f) {
    return json{{"normal", f.normal}, {"level", f.level}};
}
inline Facet facet_from_json(const json& j) {
    Facet f;
    f.normal = j.at("normal").get<std::vector<long>>();
    f.level = j.at("level").get<long>();
    return f;
}

inline json face_to_json(const Face& f) {
    json vs = json::array();
    for (auto& v : f.vertices) vs.push_back(exponent_to_json(v));
    return json{{"id", f.id},
                {"dim", f.dim},
                {"active_facets", f.active_facets},
                {"vertices", vs},
                {"rays", f.rays},
                {"is_compact", f.is_compact},
                {"on_coordinate_hyperplane", f.on_coordinate_hyperplane}};
}
inline Face face_from_json(const json& j) {
    Face f;
    f.id = j.at("id").get<int>();
    f.dim = j.at("dim").get<int>();
    f.active_facets = j.at("active_facets").get<std::vector<int>>();
    for (auto& v : j.at("vertices")) f.vertices.push_back(exponent_from_json(v));
    f.rays = j.at("rays").get<std::vector<int>>();
    f.is_compact = j.at("is_compact").get<bool>();
    f.on_coordinate_hyperplane = j.at("on_coordinate_hyperplane").get<bool>();
    return f;
}

inline json polyhedron_to_json(const NewtonPolyhedron& P) {
    json gens = json::array(), facets = json::array(), faces = json::array();
    for (auto& g : P.generators) gens.push_back(exponent_to_json(g));
    for (auto& f : P.facets) facets.push_back(facet_to_json(f));
    for (auto& f : P.faces) faces.push_back(face_to_json(f));
    return json{{"n", P.n}, {"generators", gens}, {"facets", facets}, {"faces", faces}};
}

/// Facet and face lists only; reconstructs by re-running the builder on the
/// serialized generators and checks the result matches the document.
inline NewtonPolyhedron polyhedron_from_json(const json& j) {
    std::vector<Exponent> gens;
    for (auto& g : j.at("generators")) gens.push_back(exponent_from_json(g));
    NewtonPolyhedron P = build_newton_polyhedron(gens);
    if (polyhedron_to_json(P) != j)
        throw std::runtime_error("serialized polyhedron does not round-trip");
    return P;
}

inline json vector_g_to_json(const GVector& v) {
    json a = json::array();
    for (auto& g : v) a.push_back(gaussian_to_json(g));
    return a;
}

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "certified";
        case Verdict::Inconclusive: return "inconclusive";
        default: return "invalid-input";
    }
}

inline json nondegeneracy_to_json(const NondegeneracyReport& r) {
    json j{{"verdict",
            r.verdict == NondegeneracyReport::Verdict::PassHeuristic ? "pass-heuristic" : "fail"},
           {"trials", r.trials},
           {"seed", r.seed}};
    if (r.witness) {
        json w = json::array();
        for (auto& z : *r.witness) w.push_back(json{{"re", z.real()}, {"im", z.imag()}});
        j["witness"] = w;
        j["witness_residual"] = r.witness_residual;
    }
    return j;
}

inline json certificate_to_json(const Certificate& c) {
    json j{{"face_id", c.face_id},
           {"verdict", verdict_name(c.verdict)},
           {"nondegeneracy", nondegeneracy_to_json(c.nondegeneracy)}};
    if (c.verdict != Verdict::InvalidInput) {
        j["a"] = rational_to_json(c.a);
        j["r"] = c.r;
        j["quotient_dim"] = c.quotient_dim;
        j["matrix_rank"] = c.matrix_rank;
    }
    if (c.verdict == Verdict::Certified) {
        j["alpha"] = rational_to_json(c.pair.alpha);
        j["k"] = c.pair.k;
        j["witness"] = vector_g_to_json(c.witness);
    }
    if (!c.reason.empty()) j["reason"] = c.reason;
    return j;
}

inline json order_pair_to_json(const OrderPair& p) {
    return json{{"v", rational_to_json(p.v)}, {"l", p.l}};
}

inline json leading_pair_to_json(const LeadingPair& p) {
    return json{{"alpha", rational_to_json(p.alpha)}, {"k", p.k}};
}

inline json pole_profile_to_json(const PoleProfile& p) {
    return json{{"location", rational_to_json(p.location)}, {"order", p.order}};
}

inline json mc_fit_to_json(const MonteCarloPoleFit& f) {
    return json{{"location", f.location},
                {"order", f.order},
                {"location_ci", {f.location_ci.first, f.location_ci.second}},
                {"order_ci", {f.order_ci.first, f.order_ci.second}},
                {"lambda_grid", f.lambda_grid},
                {"values", f.values},
                {"std_errors", f.std_errors},
                {"fit_lambda", f.fit_lambda},
                {"fit_values", f.fit_values},
                {"fit_std_errors", f.fit_std_errors},
                {"fit_residual", f.fit_residual},
                {"samples", f.samples},
                {"seed", f.seed}};
}

inline json model_mellin_to_json(const ModelMellinReport& r) {
    json samples = json::array();
    for (auto& s : r.samples)
        samples.push_back(json{{"lambda", s.lambda},
                               {"value", s.value},
                               {"exact", s.exact},
                               {"rel_error", s.rel_error}});
    return json{{"max_rel_error", r.max_rel_error}, {"samples", samples}};
}

} // namespace newtasym

#endif

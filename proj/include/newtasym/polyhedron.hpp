#ifndef NEWTASYM_POLYHEDRON_HPP
#define NEWTASYM_POLYHEDRON_HPP

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "newtasym/linalg.hpp"
#include "newtasym/polynomial.hpp"

namespace newtasym {

/// Raised when the Newton order is requested but the polyhedron has no facet
/// with positive level (support degenerate at the origin).
struct DegenerateSupportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when a minimizing support point meets no compact face of v*Gamma_+,
/// so l(h) is undefined by the boundary definition.
struct NoCompactFaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

/// Scale a rational vector to a primitive integer vector (gcd of entries 1),
/// preserving direction. Zero vector stays zero.
inline std::vector<BigInt> primitive_integer(const QVector& v) {
    BigInt l = 1;
    for (auto& q : v) l = lcm(l, den(q));
    std::vector<BigInt> w(v.size());
    BigInt g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = num(v[i]) * (l / den(v[i]));
        g = gcd(g, w[i]);
    }
    if (g > 1)
        for (auto& x : w) x /= g;
    return w;
}

/// Extreme rays of the pointed cone {d : row . d >= 0 for every row}.
/// Incremental double description with zero-set pruning; desk-scale sizes.
inline std::vector<QVector> double_description(const QMatrix& rows) {
    std::size_t dim = rows[0].size();

    // initial simplicial cone from dim independent rows
    std::vector<std::size_t> basis;
    {
        QMatrix acc;
        for (std::size_t i = 0; i < rows.size() && basis.size() < dim; ++i) {
            acc.push_back(rows[i]);
            if (rational_rank(acc) == acc.size()) basis.push_back(i);
            else acc.pop_back();
        }
        if (basis.size() < dim)
            throw std::logic_error("double description: cone is not pointed");
    }
    QMatrix gb(dim);
    for (std::size_t j = 0; j < dim; ++j) gb[j] = rows[basis[j]];
    auto inv = rational_inverse(gb);
    std::vector<QVector> rays(dim, QVector(dim));
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t i = 0; i < dim; ++i) rays[j][i] = (*inv)[i][j];

    std::vector<std::size_t> processed = basis;
    auto zero_set = [&](const QVector& r) {
        std::set<std::size_t> z;
        for (std::size_t i : processed)
            if (dot(rows[i], r) == 0) z.insert(i);
        return z;
    };
    auto canonical = [](const QVector& r) {
        auto w = primitive_integer(r);
        QVector q(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) q[i] = Rational(w[i]);
        return q;
    };
    auto prune = [&]() {
        for (auto& r : rays) r = canonical(r);
        std::sort(rays.begin(), rays.end());
        rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
        std::vector<std::set<std::size_t>> zs;
        zs.reserve(rays.size());
        for (auto& r : rays) zs.push_back(zero_set(r));
        std::vector<QVector> keep;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < rays.size() && !dominated; ++j)
                if (i != j && std::includes(zs[j].begin(), zs[j].end(),
                                            zs[i].begin(), zs[i].end()) && zs[i] != zs[j])
                    dominated = true;
            if (!dominated) keep.push_back(rays[i]);
        }
        rays = std::move(keep);
    };

    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (std::find(processed.begin(), processed.end(), i) != processed.end()) continue;
        std::vector<Rational> s(rays.size());
        bool any_neg = false;
        for (std::size_t j = 0; j < rays.size(); ++j) {
            s[j] = dot(rows[i], rays[j]);
            if (s[j] < 0) any_neg = true;
        }
        processed.push_back(i);
        if (!any_neg) continue;
        std::vector<QVector> next;
        for (std::size_t j = 0; j < rays.size(); ++j)
            if (s[j] >= 0) next.push_back(rays[j]);
        for (std::size_t p = 0; p < rays.size(); ++p)
            for (std::size_t q = 0; q < rays.size(); ++q) {
                if (!(s[p] > 0 && s[q] < 0)) continue;
                QVector r(dim);
                for (std::size_t k = 0; k < dim; ++k)
                    r[k] = s[p] * rays[q][k] - s[q] * rays[p][k];
                next.push_back(std::move(r));
            }
        rays = std::move(next);
        prune();
    }
    prune();
    return rays;
}

} // namespace detail

/// Facet inequality <normal, x> >= level of a Newton polyhedron; the normal is
/// a primitive non-negative integer vector.
struct Facet {
    std::vector<long> normal;
    long level = 0;
};

struct Face {
    int id = -1;
    int dim = 0;
    std::vector<int> active_facets;     // indices into NewtonPolyhedron::facets
    std::vector<Exponent> vertices;
    std::vector<int> rays;              // coordinate directions e_i in the face (0-based)
    bool is_compact = false;
    bool on_coordinate_hyperplane = false;
};

/// Newton order / defect pair (v, l) of a power series or form.
struct OrderPair {
    Rational v;
    long l = 0;
    friend bool operator==(const OrderPair& a, const OrderPair& b) {
        return a.v == b.v && a.l == b.l;
    }
};

/// Gamma_+ = conv(supp + N^n): facet inequalities plus the full face lattice.
class NewtonPolyhedron {
public:
    std::size_t n = 0;
    std::vector<Exponent> generators;
    std::vector<Facet> facets;
    std::vector<Face> faces;

    static NewtonPolyhedron build(const std::vector<Exponent>& supp);

    BigInt pairing(std::size_t facet_idx, const Exponent& m) const {
        BigInt s = 0;
        const auto& a = facets[facet_idx].normal;
        for (std::size_t i = 0; i < n; ++i) s += BigInt(a[i]) * m[i];
        return s;
    }
    Rational pairing(std::size_t facet_idx, const QVector& p) const {
        Rational s = 0;
        const auto& a = facets[facet_idx].normal;
        for (std::size_t i = 0; i < n; ++i) s += Rational(a[i]) * p[i];
        return s;
    }

    /// true iff a pure power of every variable appears among the generators
    bool is_convenient() const {
        for (std::size_t i = 0; i < n; ++i) {
            bool found = false;
            for (auto& m : generators) {
                bool pure = m[i] > 0;
                for (std::size_t j = 0; j < n && pure; ++j)
                    if (j != i && m[j] != 0) pure = false;
                if (pure) { found = true; break; }
            }
            if (!found) return false;
        }
        return true;
    }

    /// Newton order of a monomial: sup{t : m in t*Gamma_+}; 0 for m = 0.
    Rational newton_order(const Exponent& m) const {
        if (m.size() != n) throw std::invalid_argument("exponent length mismatch");
        if (!m.nonnegative()) throw std::invalid_argument("negative exponent");
        bool zero = true;
        for (std::size_t i = 0; i < n; ++i) if (m[i] != 0) zero = false;
        if (zero) return Rational(0);
        bool have = false;
        Rational best;
        for (std::size_t f = 0; f < facets.size(); ++f) {
            if (facets[f].level <= 0) continue;
            Rational t = Rational(pairing(f, m), BigInt(facets[f].level));
            if (!have || t < best) { best = t; have = true; }
        }
        if (!have) throw DegenerateSupportError("no facet with positive level");
        return best;
    }

    /// Smallest face containing a rational point of the polyhedron boundary
    /// (intersection of all facets tight at the point); nullopt if the point
    /// is tight on no facet.
    std::optional<int> smallest_face_containing(const QVector& p) const {
        std::vector<int> tight;
        for (std::size_t f = 0; f < facets.size(); ++f) {
            Rational s = pairing(f, p);
            if (s < Rational(facets[f].level)) return std::nullopt; // outside
            if (s == Rational(facets[f].level)) tight.push_back(static_cast<int>(f));
        }
        if (tight.empty()) return std::nullopt;
        for (auto& face : faces)
            if (face.active_facets == closure_active_set(tight)) return face.id;
        throw std::logic_error("face lattice is missing a tight-set face");
    }

    /// All lattice points of t*face (closed) or of its relative interior.
    std::vector<Exponent> lattice_points_scaled_face(const Face& face, const Rational& t,
                                                     bool interior) const {
        if (!face.is_compact) throw std::invalid_argument("face is not compact");
        if (t <= 0) throw std::invalid_argument("scale must be positive");
        std::vector<std::pair<long, long>> box(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rational lo = t * face.vertices[0][i], hi = lo;
            for (auto& v : face.vertices) {
                Rational c = t * v[i];
                lo = std::min(lo, c);
                hi = std::max(hi, c);
            }
            BigInt lo_i = -floor_int(-lo), hi_i = floor_int(hi); // ceil / floor
            box[i] = {static_cast<long>(lo_i), static_cast<long>(hi_i)};
            if (box[i].first > box[i].second) return {};
        }
        std::vector<Exponent> out;
        Exponent m(std::vector<long>(n, 0));
        enumerate_box(box, 0, m, [&](const Exponent& p) {
            if (scaled_face_membership(face, t, p, interior)) out.push_back(p);
        });
        std::sort(out.begin(), out.end());
        return out;
    }

    /// m in t*face (closed), or in the relative interior when interior=true.
    bool scaled_face_membership(const Face& face, const Rational& t, const Exponent& m,
                                bool interior) const {
        if (!m.nonnegative()) return false;
        std::vector<bool> active(facets.size(), false);
        for (int f : face.active_facets) active[f] = true;
        for (std::size_t f = 0; f < facets.size(); ++f) {
            Rational s(pairing(f, m));
            Rational lvl = t * Rational(facets[f].level);
            if (active[f]) {
                if (s != lvl) return false;
            } else {
                if (interior ? !(s > lvl) : !(s >= lvl)) return false;
            }
        }
        return true;
    }

    /// Kouchnirenko's Newton number: alternating sum of normalized volumes
    /// under the Newton boundary over coordinate subspaces. Convenient input,
    /// faces of dimension <= 2 per subspace (n <= 3 at desk scale).
    BigInt newton_number() const;

private:
    std::vector<int> closure_active_set(const std::vector<int>& tight) const;

    template <typename F>
    void enumerate_box(const std::vector<std::pair<long, long>>& box, std::size_t i,
                       Exponent& m, F&& fn) const {
        if (i == n) { fn(m); return; }
        for (long c = box[i].first; c <= box[i].second; ++c) {
            m[i] = c;
            enumerate_box(box, i + 1, m, fn);
        }
    }

    friend NewtonPolyhedron build_newton_polyhedron(const std::vector<Exponent>&);
};

inline std::vector<int> NewtonPolyhedron::closure_active_set(const std::vector<int>& tight) const {
    // vertices tight on the whole set
    std::vector<const Exponent*> vs;
    for (auto& face : faces) {
        if (face.dim != 0) continue;
        const Exponent& v = face.vertices[0];
        bool all = true;
        for (int f : tight)
            if (pairing(f, v) != BigInt(facets[f].level)) { all = false; break; }
        if (all) vs.push_back(&v);
    }
    std::vector<int> rays;
    for (std::size_t i = 0; i < n; ++i) {
        bool in = true;
        for (int f : tight)
            if (facets[f].normal[i] != 0) { in = false; break; }
        if (in) rays.push_back(static_cast<int>(i));
    }
    std::vector<int> closure;
    for (std::size_t f = 0; f < facets.size(); ++f) {
        bool all = true;
        for (auto* v : vs)
            if (pairing(f, *v) != BigInt(facets[f].level)) { all = false; break; }
        for (int i : rays)
            if (all && facets[f].normal[i] != 0) all = false;
        if (all) closure.push_back(static_cast<int>(f));
    }
    return closure;
}

inline NewtonPolyhedron NewtonPolyhedron::build(const std::vector<Exponent>& supp) {
    if (supp.empty()) throw std::invalid_argument("empty support");
    std::size_t n = supp[0].size();
    for (auto& m : supp) {
        if (m.size() != n) throw std::invalid_argument("exponent length mismatch");
        if (!m.nonnegative()) throw std::invalid_argument("negative exponent in support");
    }

    NewtonPolyhedron P;
    P.n = n;
    P.generators = supp;
    std::sort(P.generators.begin(), P.generators.end());
    P.generators.erase(std::unique(P.generators.begin(), P.generators.end()),
                       P.generators.end());

    // homogenize: points (1, m), recession rays (0, e_i); facets of the
    // polyhedron are the extreme rays of the dual cone
    QMatrix rows;
    for (auto& m : P.generators) {
        QVector r(n + 1, Rational(0));
        r[0] = 1;
        for (std::size_t i = 0; i < n; ++i) r[i + 1] = Rational(m[i]);
        rows.push_back(std::move(r));
    }
    for (std::size_t i = 0; i < n; ++i) {
        QVector r(n + 1, Rational(0));
        r[i + 1] = 1;
        rows.push_back(std::move(r));
    }
    auto rays = detail::double_description(rows);

    for (auto& d : rays) {
        QVector a(d.begin() + 1, d.end());
        bool zero = std::all_of(a.begin(), a.end(), [](const Rational& q) { return q == 0; });
        if (zero) continue; // the trivial inequality 1 >= 0 of the homogenization
        auto prim = detail::primitive_integer(a);
        Facet f;
        f.normal.resize(n);
        for (std::size_t i = 0; i < n; ++i) f.normal[i] = static_cast<long>(prim[i]);
        BigInt lvl;
        bool first = true;
        for (auto& m : P.generators) {
            BigInt s = 0;
            for (std::size_t i = 0; i < n; ++i) s += prim[i] * m[i];
            if (first || s < lvl) { lvl = s; first = false; }
        }
        f.level = static_cast<long>(lvl);
        P.facets.push_back(std::move(f));
    }
    std::sort(P.facets.begin(), P.facets.end(), [](const Facet& a, const Facet& b) {
        return std::tie(a.normal, a.level) < std::tie(b.normal, b.level);
    });

    // vertices: generators whose tight facet normals span R^n
    std::vector<Exponent> vertices;
    std::vector<std::vector<int>> vertex_active;
    for (auto& m : P.generators) {
        std::vector<int> act;
        QMatrix normals;
        for (std::size_t f = 0; f < P.facets.size(); ++f) {
            if (P.pairing(f, m) != BigInt(P.facets[f].level)) continue;
            act.push_back(static_cast<int>(f));
            QVector row(n);
            for (std::size_t i = 0; i < n; ++i) row[i] = Rational(P.facets[f].normal[i]);
            normals.push_back(std::move(row));
        }
        if (!normals.empty() && rational_rank(normals) == n) {
            vertices.push_back(m);
            vertex_active.push_back(std::move(act));
        }
    }

    // face lattice: start from facets, close under pairwise intersection
    struct Key {
        std::vector<int> vs, rays;
        bool operator<(const Key& o) const { return std::tie(vs, rays) < std::tie(o.vs, o.rays); }
    };
    auto make_face = [&](const std::vector<int>& active0) -> std::optional<std::pair<Key, Face>> {
        std::vector<int> vs;
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            bool all = true;
            for (int f : active0)
                if (P.pairing(f, vertices[v]) != BigInt(P.facets[f].level)) { all = false; break; }
            if (all) vs.push_back(static_cast<int>(v));
        }
        if (vs.empty()) return std::nullopt;
        std::vector<int> rays;
        for (std::size_t i = 0; i < n; ++i) {
            bool in = true;
            for (int f : active0)
                if (P.facets[f].normal[i] != 0) { in = false; break; }
            if (in) rays.push_back(static_cast<int>(i));
        }
        Face face;
        for (int v : vs) face.vertices.push_back(vertices[v]);
        face.rays = rays;
        face.is_compact = rays.empty();
        // full active set
        for (std::size_t f = 0; f < P.facets.size(); ++f) {
            bool all = true;
            for (int v : vs)
                if (P.pairing(f, vertices[v]) != BigInt(P.facets[f].level)) { all = false; break; }
            for (int i : rays)
                if (all && P.facets[f].normal[i] != 0) all = false;
            if (all) face.active_facets.push_back(static_cast<int>(f));
        }
        // dim = rank of {v - v0} u {e_i : i in rays}
        QMatrix span;
        for (std::size_t k = 1; k < face.vertices.size(); ++k) {
            QVector row(n);
            for (std::size_t i = 0; i < n; ++i)
                row[i] = Rational(face.vertices[k][i] - face.vertices[0][i]);
            span.push_back(std::move(row));
        }
        for (int i : rays) {
            QVector row(n, Rational(0));
            row[i] = 1;
            span.push_back(std::move(row));
        }
        face.dim = static_cast<int>(rational_rank(span));
        for (std::size_t i = 0; i < n; ++i) {
            if (std::find(rays.begin(), rays.end(), static_cast<int>(i)) != rays.end()) continue;
            bool all_zero = true;
            for (auto& v : face.vertices)
                if (v[i] != 0) { all_zero = false; break; }
            if (all_zero) { face.on_coordinate_hyperplane = true; break; }
        }
        return std::make_pair(Key{vs, rays}, std::move(face));
    };

    std::map<Key, Face> lattice;
    std::vector<std::vector<int>> work;
    for (std::size_t f = 0; f < P.facets.size(); ++f) work.push_back({static_cast<int>(f)});
    for (std::size_t w = 0; w < work.size(); ++w) {
        auto made = make_face(work[w]);
        if (!made) continue;
        auto [key, face] = std::move(*made);
        if (lattice.count(key)) continue;
        // intersect with every known face to close the lattice
        for (auto& [k2, f2] : lattice) {
            std::vector<int> joint = face.active_facets;
            joint.insert(joint.end(), f2.active_facets.begin(), f2.active_facets.end());
            std::sort(joint.begin(), joint.end());
            joint.erase(std::unique(joint.begin(), joint.end()), joint.end());
            work.push_back(std::move(joint));
        }
        lattice.emplace(std::move(key), std::move(face));
    }

    for (auto& [k, f] : lattice) P.faces.push_back(f);
    std::sort(P.faces.begin(), P.faces.end(), [](const Face& a, const Face& b) {
        return std::tie(a.dim, a.vertices, a.rays) < std::tie(b.dim, b.vertices, b.rays);
    });
    for (std::size_t i = 0; i < P.faces.size(); ++i) P.faces[i].id = static_cast<int>(i);
    return P;
}

inline NewtonPolyhedron build_newton_polyhedron(const std::vector<Exponent>& supp) {
    return NewtonPolyhedron::build(supp);
}

inline NewtonPolyhedron build_newton_polyhedron(const SparsePolynomial& f) {
    return NewtonPolyhedron::build(f.support());
}

namespace detail {

inline BigInt det3(const std::array<std::array<BigInt, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
         - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
         + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// d! * (volume under the Newton boundary) for a convenient polyhedron of
/// dimension d <= 3: sum of cone volumes over compact facets.
inline BigInt normalized_volume_under_diagram(const NewtonPolyhedron& P) {
    std::size_t d = P.n;
    BigInt total = 0;
    for (auto& face : P.faces) {
        if (!face.is_compact || face.dim != static_cast<int>(d) - 1) continue;
        if (d == 1) {
            total += BigInt(face.vertices[0][0]);
        } else if (d == 2) {
            if (face.vertices.size() != 2) throw std::logic_error("edge with bad vertex count");
            const auto& a = face.vertices[0];
            const auto& b = face.vertices[1];
            BigInt det = BigInt(a[0]) * b[1] - BigInt(a[1]) * b[0];
            total += abs(det);
        } else if (d == 3) {
            // order the polygon boundary by projecting out a coordinate with
            // non-zero facet normal, then fan-triangulate
            const auto& normal = P.facets[face.active_facets[0]].normal;
            std::size_t drop = 0;
            while (normal[drop] == 0) ++drop;
            std::size_t u = (drop + 1) % 3, v = (drop + 2) % 3;
            using Pt = std::pair<std::pair<long, long>, std::size_t>;
            std::vector<Pt> pts;
            for (std::size_t i = 0; i < face.vertices.size(); ++i)
                pts.push_back({{face.vertices[i][u], face.vertices[i][v]}, i});
            std::sort(pts.begin(), pts.end());
            auto cross = [](const Pt& o, const Pt& a, const Pt& b) {
                return BigInt(a.first.first - o.first.first) * (b.first.second - o.first.second)
                     - BigInt(a.first.second - o.first.second) * (b.first.first - o.first.first);
            };
            std::vector<Pt> lower, upper;
            for (auto& p : pts) {
                while (lower.size() >= 2 && cross(lower[lower.size() - 2], lower.back(), p) <= 0)
                    lower.pop_back();
                lower.push_back(p);
            }
            for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
                while (upper.size() >= 2 && cross(upper[upper.size() - 2], upper.back(), *it) <= 0)
                    upper.pop_back();
                upper.push_back(*it);
            }
            std::vector<std::size_t> hull;
            for (std::size_t i = 0; i + 1 < lower.size(); ++i) hull.push_back(lower[i].second);
            for (std::size_t i = 0; i + 1 < upper.size(); ++i) hull.push_back(upper[i].second);
            for (std::size_t k = 1; k + 1 < hull.size(); ++k) {
                std::array<std::array<BigInt, 3>, 3> m;
                std::size_t idx[3] = {hull[0], hull[k], hull[k + 1]};
                for (int r = 0; r < 3; ++r)
                    for (int c = 0; c < 3; ++c) m[r][c] = BigInt(face.vertices[idx[r]][c]);
                total += abs(det3(m));
            }
        } else {
            throw std::invalid_argument("newton_number supports n <= 3");
        }
    }
    return total;
}

} // namespace detail

inline BigInt NewtonPolyhedron::newton_number() const {
    if (!is_convenient()) throw std::invalid_argument("newton_number requires a convenient polyhedron");
    if (n > 3) throw std::invalid_argument("newton_number supports n <= 3");
    BigInt mu = (n % 2 == 0) ? 1 : -1; // (-1)^n * 0! * V_0, V_0 = 1
    std::size_t subsets = std::size_t(1) << n;
    for (std::size_t mask = 1; mask < subsets; ++mask) {
        std::vector<std::size_t> J;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t(1) << i)) J.push_back(i);
        std::vector<Exponent> projected;
        for (auto& m : generators) {
            bool in = true;
            for (std::size_t i = 0; i < n && in; ++i)
                if (!(mask & (std::size_t(1) << i)) && m[i] != 0) in = false;
            if (!in) continue;
            std::vector<long> c;
            for (std::size_t i : J) c.push_back(m[i]);
            projected.emplace_back(std::move(c));
        }
        auto PJ = NewtonPolyhedron::build(projected);
        BigInt vol = detail::normalized_volume_under_diagram(PJ); // |J|! * V_J
        mu += ((n - J.size()) % 2 == 0 ? vol : -vol);
    }
    return mu;
}

} // namespace newtasym

#endif

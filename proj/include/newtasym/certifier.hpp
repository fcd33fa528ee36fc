#ifndef NEWTASYM_CERTIFIER_HPP
#define NEWTASYM_CERTIFIER_HPP

#include <string>
#include <vector>

#include "newtasym/grading.hpp"
#include "newtasym/linalg.hpp"

namespace newtasym {

/// Ordered basis of the graded piece (Omega_sigma^p)_b: pairs (I, m) with
/// |I| = p and m a lattice point of b*delta (closed), lex-ordered on (I, m).
struct GradedBasis {
    int p = 0;
    Rational b;
    std::vector<std::pair<IndexSet, Exponent>> elements;

    int index_of(const IndexSet& I, const Exponent& m) const {
        auto key = std::make_pair(I, m);
        for (std::size_t i = 0; i < elements.size(); ++i)
            if (elements[i] == key) return static_cast<int>(i);
        return -1;
    }
};

namespace detail {

inline void index_subsets(int n, int p, IndexSet& cur, int next,
                          std::vector<IndexSet>& out) {
    if (static_cast<int>(cur.size()) == p) { out.push_back(cur); return; }
    for (int i = next; i <= n; ++i) {
        cur.push_back(i);
        index_subsets(n, p, cur, i + 1, out);
        cur.pop_back();
    }
}

/// parity sign of the permutation sorting `perm` ascending (entries distinct)
inline int sort_sign(std::vector<int> perm) {
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

} // namespace detail

inline GradedBasis graded_piece_basis(const FaceContext& ctx, int p, const Rational& b) {
    GradedBasis basis;
    basis.p = p;
    basis.b = b;
    if (b < 0) return basis;
    std::vector<Exponent> points;
    std::size_t n = ctx.P->n;
    if (b == 0) {
        points.push_back(Exponent(std::vector<long>(n, 0)));
    } else {
        points = ctx.P->lattice_points_scaled_face(ctx.face, b, false);
    }
    std::vector<IndexSet> sets;
    IndexSet cur;
    detail::index_subsets(static_cast<int>(n), p, cur, 1, sets);
    for (auto& I : sets)
        for (auto& m : points) basis.elements.emplace_back(I, m);
    std::sort(basis.elements.begin(), basis.elements.end());
    return basis;
}

/// d(x^m (dx)_I/x_I) = sum_{i not in I} m_i x^m (dx_i/x_i) ^ (dx)_I/x_I,
/// wedged with df_delta, expressed on the target graded basis. One column per
/// domain element; empty domains yield zero-column matrices.
inline std::vector<GVector> koszul_de_rham_matrix(const FaceContext& ctx,
                                                  const SparsePolynomial& f_delta,
                                                  const GradedBasis& domain,
                                                  const GradedBasis& target) {
    std::size_t n = ctx.P->n;
    std::vector<GVector> columns;
    columns.reserve(domain.elements.size());
    for (auto& [I, m] : domain.elements) {
        GVector col(target.elements.size(), GaussianRational());
        for (auto& [mp, c] : f_delta.terms()) {
            for (int j = 1; j <= static_cast<int>(n); ++j) {
                long mpj = mp[j - 1];
                if (mpj == 0) continue;
                if (std::find(I.begin(), I.end(), j) != I.end()) continue;
                for (int i = 1; i <= static_cast<int>(n); ++i) {
                    long mi = m[i - 1];
                    if (mi == 0 || i == j) continue;
                    if (std::find(I.begin(), I.end(), i) != I.end()) continue;
                    std::vector<int> perm{j, i};
                    perm.insert(perm.end(), I.begin(), I.end());
                    int sign = detail::sort_sign(perm);
                    IndexSet full = perm;
                    std::sort(full.begin(), full.end());
                    Exponent target_m = m + mp;
                    int idx = target.index_of(full, target_m);
                    if (idx < 0) throw std::logic_error("image term escapes the target basis");
                    GaussianRational term = c * GaussianRational(Rational(mpj * mi * sign));
                    col[idx] += term;
                }
            }
        }
        columns.push_back(std::move(col));
    }
    return columns;
}

enum class Verdict { Certified, Inconclusive, InvalidInput };

/// Machine-readable reasons for InvalidInput.
namespace reason {
inline constexpr const char* support_not_interior = "support-not-interior";
inline constexpr const char* mixed_degrees = "mixed-degrees";
inline constexpr const char* integer_a_with_r_equals_n = "integer-a-with-r-equals-n";
inline constexpr const char* face_on_hyperplane = "face-on-hyperplane";
inline constexpr const char* non_convenient = "non-convenient";
} // namespace reason

struct Certificate {
    int face_id = -1;
    Rational a;
    int r = 0;
    Verdict verdict = Verdict::InvalidInput;
    std::string reason;
    LeadingPair pair;                 // valid when Certified: (a-1, r-1)
    std::size_t quotient_dim = 0;     // |basis(n,a)| - matrix_rank
    std::size_t matrix_rank = 0;
    GVector witness;                  // separating functional when Certified
    NondegeneracyReport nondegeneracy;
};

/// The graded-quotient leading-pair certifier: decide whether the class of phi
/// is non-zero in (Omega_sigma^n)_a / df_delta ^ d(Omega_sigma^{n-2})_{a-1}.
/// NotInImage certifies the leading pair (a-1, r-1); InImage is inconclusive
/// because the criterion is sufficient only.
inline Certificate certify(const SparsePolynomial& f, const NewtonPolyhedron& P,
                           const Face& face, const LogForm& phi,
                           int nondeg_trials = 40, unsigned long nondeg_seed = 12345) {
    std::size_t n = P.n;
    if (phi.is_zero() || phi.grade() != static_cast<int>(n))
        throw std::invalid_argument("phi must be a non-zero top form");

    Certificate cert;
    cert.face_id = face.id;

    if (!P.is_convenient()) {
        cert.reason = reason::non_convenient;
        return cert;
    }
    if (!face.is_compact || face.on_coordinate_hyperplane) {
        cert.reason = reason::face_on_hyperplane;
        return cert;
    }
    FaceContext ctx = make_face_context(P, face);
    cert.r = ctx.r;

    // all log-support points must carry one common face degree a ...
    bool have_a = false;
    for (auto& m : phi.support()) {
        auto t = face_degree(ctx, m);
        if (!t) {
            cert.reason = reason::support_not_interior;
            return cert;
        }
        if (!have_a) { cert.a = *t; have_a = true; }
        else if (*t != cert.a) {
            cert.reason = reason::mixed_degrees;
            return cert;
        }
    }
    // ... and lie in the open scaled face a*delta°
    for (auto& m : phi.support()) {
        if (!scaled_face_interior_test(ctx, cert.a, m)) {
            cert.reason = reason::support_not_interior;
            return cert;
        }
    }
    // hypothesis ranges of the leading-pair theorem
    if (is_integer(cert.a)) {
        if (!(cert.a > 0 && 1 <= cert.r && cert.r <= static_cast<int>(n) - 1)) {
            cert.reason = reason::integer_a_with_r_equals_n;
            return cert;
        }
    } else {
        if (!(cert.a > 0 && 1 <= cert.r && cert.r <= static_cast<int>(n))) {
            cert.reason = reason::support_not_interior;
            return cert;
        }
    }

    SparsePolynomial f_delta = face_polynomial(f, P, face);
    cert.nondegeneracy = nondegeneracy_heuristic(f_delta, nondeg_trials, nondeg_seed);

    GradedBasis domain = graded_piece_basis(ctx, static_cast<int>(n) - 2, cert.a - 1);
    GradedBasis target = graded_piece_basis(ctx, static_cast<int>(n), cert.a);
    auto columns = koszul_de_rham_matrix(ctx, f_delta, domain, target);

    GVector vec(target.elements.size(), GaussianRational());
    for (auto& [key, c] : phi.terms()) {
        int idx = target.index_of(key.first, key.second);
        if (idx < 0) throw std::logic_error("phi does not live in the target graded piece");
        vec[idx] = c;
    }

    auto res = image_membership(columns, vec);
    cert.matrix_rank = res.matrix_rank;
    cert.quotient_dim = target.elements.size() - res.matrix_rank;
    if (res.in_image) {
        cert.verdict = Verdict::Inconclusive;
    } else {
        // re-verify the witness by direct exact evaluation
        for (auto& col : columns) {
            GaussianRational s;
            for (std::size_t i = 0; i < col.size(); ++i) s += res.functional[i] * col[i];
            if (!s.is_zero()) throw std::logic_error("witness functional fails on a column");
        }
        GaussianRational s;
        for (std::size_t i = 0; i < vec.size(); ++i) s += res.functional[i] * vec[i];
        if (s.is_zero()) throw std::logic_error("witness functional vanishes on phi");
        cert.verdict = Verdict::Certified;
        cert.pair = LeadingPair{cert.a - 1, cert.r - 1};
        cert.witness = res.functional;
    }
    return cert;
}

/// Faces eligible for certification of phi: compact, off the coordinate
/// hyperplanes, with the whole log support at one common degree inside the
/// open scaled face.
inline std::vector<int> admissible_faces(const NewtonPolyhedron& P, const LogForm& phi) {
    std::vector<int> out;
    if (phi.is_zero()) return out;
    for (auto& face : P.faces) {
        if (!face.is_compact || face.on_coordinate_hyperplane) continue;
        FaceContext ctx;
        try {
            ctx = make_face_context(P, face);
        } catch (const std::logic_error&) {
            continue;
        }
        std::optional<Rational> a;
        bool ok = true;
        for (auto& m : phi.support()) {
            auto t = face_degree(ctx, m);
            if (!t || (a && *t != *a) || !scaled_face_interior_test(ctx, *t, m)) {
                ok = false;
                break;
            }
            a = *t;
        }
        if (ok && a) out.push_back(face.id);
    }
    return out;
}

} // namespace newtasym

#endif

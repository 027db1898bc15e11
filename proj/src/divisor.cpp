#include "toric/divisor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace toric {

bool Cycle::pure(int* dim_out) const {
    int d = -1;
    for (const auto& [c, q] : terms) {
        int cd = fan->cone(c).dim;
        if (d < 0) d = cd;
        else if (cd != d) return false;
    }
    if (dim_out) *dim_out = d;
    return true;
}

Cycle& Cycle::operator+=(const Cycle& o) {
    if (!fan) fan = o.fan;
    for (const auto& [c, q] : o.terms) add(c, q);
    return *this;
}

Cycle& Cycle::operator*=(const Rat& q) {
    if (q == 0) {
        terms.clear();
        return *this;
    }
    for (auto& [c, t] : terms) t *= q;
    return *this;
}

Cycle operator+(Cycle a, const Cycle& b) {
    a += b;
    return a;
}

Cycle operator*(const Rat& q, Cycle z) {
    z *= q;
    return z;
}

namespace {

bool in_span(const std::vector<IVec>& basis, const RVec& v, int n) {
    if (is_zero(v)) return true;
    if (basis.empty()) return false;
    RMat B(n, static_cast<int>(basis.size()));
    for (size_t j = 0; j < basis.size(); ++j)
        for (int i = 0; i < n; ++i) B.at(i, static_cast<int>(j)) = Rat(basis[j][i]);
    return solve_rational(B, v).consistent;
}

std::string cone_name(const Fan& f, ConeId c) {
    std::string s = "{";
    for (size_t i = 0; i < f.cone(c).rays.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(f.cone(c).rays[i]);
    }
    return s + "}";
}

} // namespace

void validate_divisor(const QCartierDivisor& d) {
    const Fan& f = *d.fan;
    int n = f.rank();
    std::vector<ConeId> mx = f.maximal_cones();
    for (ConeId c : mx) {
        auto it = d.local_eq.find(c);
        if (it == d.local_eq.end())
            throw InputError("missing local equation on a maximal cone");
        if (static_cast<int>(it->second.size()) != n)
            throw InputError("local equation of wrong dimension");
    }
    for (size_t i = 0; i < mx.size(); ++i)
        for (size_t j = i + 1; j < mx.size(); ++j) {
            std::vector<int> common;
            std::set_intersection(f.cone(mx[i]).rays.begin(), f.cone(mx[i]).rays.end(),
                                  f.cone(mx[j]).rays.begin(), f.cone(mx[j]).rays.end(),
                                  std::back_inserter(common));
            ConeId tau = f.cone_id(common);
            RVec diff = d.local_eq.at(mx[i]);
            const RVec& other = d.local_eq.at(mx[j]);
            for (int k = 0; k < n; ++k) diff[k] -= other[k];
            if (!in_span(f.geometry(tau).m_perp, diff, n))
                throw MathError("AgreementViolation",
                                "local equations on " + cone_name(f, mx[i]) + " and " +
                                    cone_name(f, mx[j]) + " disagree on the shared face " +
                                    cone_name(f, tau));
        }
}

RVec local_equation(const QCartierDivisor& d, ConeId tau) {
    const Fan& f = *d.fan;
    if (tau < 0 || tau >= f.num_cones()) throw InputError("cone not in fan");
    return d.local_eq.at(f.a_maximal_over(tau));
}

Cycle divisor_cycle(const QCartierDivisor& d) {
    const Fan& f = *d.fan;
    Cycle z(f);
    for (ConeId rho : f.cones_of_dim(1)) {
        const IVec& v = f.ray(f.cone(rho).rays[0]);
        z.add(rho, dot(local_equation(d, rho), v));
    }
    return z;
}

QCartierDivisor divisor_from_ray_coefficients(const Fan& fan, const std::vector<Rat>& coeffs) {
    if (!fan.is_simplicial())
        throw MathError("NotSimplicial", "ray coefficients determine a divisor only on "
                                         "simplicial fans");
    if (static_cast<int>(coeffs.size()) != fan.num_rays())
        throw InputError("one coefficient per ray required");
    int n = fan.rank();
    QCartierDivisor d;
    d.fan = &fan;
    for (ConeId c : fan.maximal_cones()) {
        const std::vector<int>& rays = fan.cone(c).rays;
        int k = static_cast<int>(rays.size());
        // m = R^T y with (R R^T) y = c picks the representative in the span
        // of the cone's rays
        RMat RRT(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                RRT.at(i, j) = Rat(dot(fan.ray(rays[i]), fan.ray(rays[j])));
        RVec rhs(k);
        for (int i = 0; i < k; ++i) rhs[i] = coeffs[rays[i]];
        auto sol = solve_rational(RRT, rhs);
        RVec m(n, Rat(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) m[i] += Rat(fan.ray(rays[j])[i]) * sol.particular[j];
        d.local_eq[c] = std::move(m);
    }
    return d;
}

// -- convex geometry ---------------------------------------------------------

bool in_convex_hull(const RVec& p, const std::vector<RVec>& points) {
    int n = static_cast<int>(p.size());
    int m = static_cast<int>(points.size());
    // Caratheodory: p is in the hull iff some affinely independent subset of
    // size <= n+1 contains it with nonnegative barycentric coordinates.
    std::vector<int> subset;
    std::function<bool(int, int)> search = [&](int start, int want) -> bool {
        if (static_cast<int>(subset.size()) == want) {
            RMat A(n + 1, want);
            for (int j = 0; j < want; ++j) {
                for (int i = 0; i < n; ++i) A.at(i, j) = points[subset[j]][i];
                A.at(n, j) = 1;
            }
            RVec b = p;
            b.push_back(Rat(1));
            auto s = solve_rational(A, b);
            if (!s.consistent || !s.kernel.empty()) return false;
            for (const Rat& l : s.particular)
                if (l < 0) return false;
            return true;
        }
        for (int i = start; i < m; ++i) {
            subset.push_back(i);
            if (search(i + 1, want)) return true;
            subset.pop_back();
        }
        return false;
    };
    for (int want = 1; want <= n + 1 && want <= m; ++want) {
        subset.clear();
        if (search(0, want)) return true;
    }
    return false;
}

std::vector<RVec> convex_hull_vertices(const std::vector<RVec>& points) {
    std::set<RVec> distinct(points.begin(), points.end());
    std::vector<RVec> pts(distinct.begin(), distinct.end());
    std::vector<RVec> out;
    for (size_t i = 0; i < pts.size(); ++i) {
        std::vector<RVec> others;
        for (size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.push_back(pts[j]);
        if (others.empty() || !in_convex_hull(pts[i], others)) out.push_back(pts[i]);
    }
    return out;
}

namespace {

int affine_rank(const std::vector<RVec>& pts) {
    if (pts.empty()) return -1;
    int n = static_cast<int>(pts[0].size());
    RMat D(static_cast<int>(pts.size()) - 1, n);
    for (size_t i = 1; i < pts.size(); ++i)
        for (int j = 0; j < n; ++j) D.at(static_cast<int>(i) - 1, j) = pts[i][j] - pts[0][j];
    return D.rows == 0 ? 0 : rank(D);
}

template <class F>
void for_subsets(int m, int k, F&& f) {
    if (k < 0 || k > m) return;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        f(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == m - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

} // namespace

std::vector<std::vector<RVec>> triangulate_polytope(const std::vector<RVec>& points) {
    std::vector<RVec> verts = convex_hull_vertices(points);
    std::sort(verts.begin(), verts.end());
    int d = affine_rank(verts);
    if (d <= 0) return {{verts[0]}};
    int n = static_cast<int>(verts[0].size());
    int m = static_cast<int>(verts.size());
    const RVec& v0 = verts[0]; // lexicographically smallest

    // direction span of the polytope, as columns
    RMat S(n, m - 1);
    for (int j = 1; j < m; ++j)
        for (int i = 0; i < n; ++i) S.at(i, j - 1) = verts[j][i] - v0[i];

    // facets: affine hyperplanes within the span spanned by d vertices,
    // with all vertices on one side
    std::set<std::vector<int>> facet_sets;
    for_subsets(m, d, [&](const std::vector<int>& T) {
        std::vector<RVec> sub;
        for (int t : T) sub.push_back(verts[t]);
        if (affine_rank(sub) != d - 1) return;
        // normal h = S y vanishing on differences within T
        RMat C(d - 1, m - 1);
        for (int a = 1; a < d; ++a) {
            RVec diff(n);
            for (int i = 0; i < n; ++i) diff[i] = verts[T[a]][i] - verts[T[0]][i];
            for (int j = 0; j < m - 1; ++j) C.at(a - 1, j) = dot(S.col(j), diff);
        }
        // candidate normals S y for y in the kernel; need a unique direction
        auto K = rat_kernel(C);
        std::vector<RVec> cand;
        for (const RVec& y : K) {
            RVec x = mul(S, y);
            if (!is_zero(x)) cand.push_back(std::move(x));
        }
        if (cand.empty()) return;
        RMat CM(static_cast<int>(cand.size()), n);
        for (size_t i = 0; i < cand.size(); ++i)
            for (int j = 0; j < n; ++j) CM.at(static_cast<int>(i), j) = cand[i][j];
        if (rank(CM) != 1) return;
        const RVec& h = cand[0];
        Rat c0 = dot(h, verts[T[0]]);
        int pos = 0, neg = 0;
        for (const RVec& p : verts) {
            Rat s = dot(h, p) - c0;
            if (s > 0) ++pos;
            else if (s < 0) ++neg;
        }
        if (pos && neg) return;
        std::vector<int> fset;
        for (int i = 0; i < m; ++i)
            if (dot(h, verts[i]) == c0) fset.push_back(i);
        facet_sets.insert(fset);
    });

    std::vector<std::vector<RVec>> out;
    for (const auto& fs : facet_sets) {
        bool has_v0 = std::find(fs.begin(), fs.end(), 0) != fs.end();
        if (has_v0) continue;
        std::vector<RVec> fpts;
        for (int i : fs) fpts.push_back(verts[i]);
        for (auto simplex : triangulate_polytope(fpts)) {
            simplex.push_back(v0);
            out.push_back(std::move(simplex));
        }
    }
    return out;
}

Rat lattice_volume(const std::vector<RVec>& simplex) {
    if (simplex.empty()) throw InputError("empty simplex");
    int n = static_cast<int>(simplex[0].size());
    int k = static_cast<int>(simplex.size()) - 1;
    if (k == 0) return 1;
    std::vector<IVec> dirs;
    std::vector<RVec> diffs;
    for (int j = 1; j <= k; ++j) {
        RVec d(n);
        for (int i = 0; i < n; ++i) d[i] = simplex[j][i] - simplex[0][i];
        diffs.push_back(d);
        if (!is_zero(d)) dirs.push_back(primitive_int(d));
    }
    LatticeBasis lattice = span_saturation(dirs, n, nullptr);
    if (lattice.rank() < k) return 0; // degenerate
    // coordinates of the differences in the induced lattice basis
    RMat B = to_rat(basis_matrix(lattice));
    RMat X(k, k);
    for (int j = 0; j < k; ++j) {
        auto s = solve_rational(B, diffs[j]);
        for (int i = 0; i < k; ++i) X.at(i, j) = s.particular[i];
    }
    Rat v = det(X);
    if (v < 0) v = -v;
    Int fact = 1;
    for (int i = 2; i <= k; ++i) fact *= i;
    return v / Rat(fact);
}

Rat polytope_volume(const LatticePolytope& p) {
    if (p.vertices.empty()) return 0;
    int n = static_cast<int>(p.vertices[0].size());
    if (affine_rank(p.vertices) < n) return 0;
    Rat total = 0;
    for (const auto& simplex : triangulate_polytope(p.vertices)) total += lattice_volume(simplex);
    return total;
}

LatticePolytope polytope_of(const QCartierDivisor& d) {
    const Fan& f = *d.fan;
    if (f.completeness() != Fan::Completeness::Yes)
        throw MathError("NotComplete", "polytope of a divisor needs a complete fan");
    validate_divisor(d);
    std::vector<RVec> pts;
    std::set<RVec> distinct;
    for (ConeId c : f.maximal_cones()) {
        RVec m = d.local_eq.at(c);
        for (Rat& q : m) q = -q;
        if (!distinct.insert(m).second)
            throw MathError("CorrespondenceFailed",
                            "two maximal cones share the same local equation");
        pts.push_back(std::move(m));
    }
    std::vector<RVec> verts = convex_hull_vertices(pts);
    if (verts.size() != pts.size())
        throw MathError("CorrespondenceFailed",
                        "a local equation is not a vertex of the polytope");
    std::sort(verts.begin(), verts.end());
    LatticePolytope p;
    p.dim = affine_rank(verts);
    p.vertices = std::move(verts);
    return p;
}

Rat degree(const Cycle& z) {
    const Fan& f = *z.fan;
    Rat total = 0;
    for (const auto& [c, q] : z.terms) {
        if (f.cone(c).dim != f.rank())
            throw MathError("SupportNotMaximal", "degree needs a cycle of point classes");
        total += q;
    }
    return total;
}

} // namespace toric

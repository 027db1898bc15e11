#include "toric/fan.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace toric {

namespace {

RMat rows_matrix(const std::vector<IVec>& vecs, int n) {
    RMat m(static_cast<int>(vecs.size()), n);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = Rat(vecs[i][j]);
    return m;
}

IMat rows_matrix_int(const std::vector<IVec>& vecs, int n) {
    IMat m(static_cast<int>(vecs.size()), n);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = vecs[i][j];
    return m;
}

RMat cols_matrix(const std::vector<IVec>& vecs, int n) {
    RMat m(n, static_cast<int>(vecs.size()));
    for (int j = 0; j < m.cols; ++j)
        for (int i = 0; i < n; ++i) m.at(i, j) = Rat(vecs[j][i]);
    return m;
}

int span_rank(const std::vector<IVec>& vecs, int n) {
    if (vecs.empty()) return 0;
    return rank(rows_matrix(vecs, n));
}

int span_rank_rat(const std::vector<RVec>& vecs) {
    if (vecs.empty()) return 0;
    RMat m(static_cast<int>(vecs.size()), static_cast<int>(vecs[0].size()));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = vecs[i][j];
    return rank(m);
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

// Basis (primitive integer vectors) of colspace(A) intersect colspace(B).
std::vector<IVec> subspace_intersection(const std::vector<IVec>& A,
                                        const std::vector<IVec>& B, int n) {
    if (A.empty() || B.empty()) return {};
    int a = static_cast<int>(A.size()), b = static_cast<int>(B.size());
    RMat M(n, a + b);
    for (int j = 0; j < a; ++j)
        for (int i = 0; i < n; ++i) M.at(i, j) = Rat(A[j][i]);
    for (int j = 0; j < b; ++j)
        for (int i = 0; i < n; ++i) M.at(i, a + j) = -Rat(B[j][i]);
    std::vector<IVec> out;
    std::vector<RVec> kept;
    for (const RVec& y : rat_kernel(M)) {
        RVec x(n, Rat(0));
        for (int j = 0; j < a; ++j)
            for (int i = 0; i < n; ++i) x[i] += y[j] * Rat(A[j][i]);
        if (is_zero(x)) continue;
        kept.push_back(x);
        if (span_rank_rat(kept) < static_cast<int>(kept.size())) {
            kept.pop_back();
            continue;
        }
        out.push_back(primitive_int(x));
    }
    return out;
}

// Extreme rays of { x in span(V) : <u, x> >= 0 for all constraints },
// assuming the cone is pointed.
std::vector<IVec> hspace_extreme_rays(const std::vector<IVec>& V,
                                      const std::vector<IVec>& constraints, int n) {
    int v = static_cast<int>(V.size());
    if (v == 0) return {};
    int m = static_cast<int>(constraints.size());
    RMat C = cols_matrix(V, n);
    RMat L(m, v);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < v; ++j) L.at(i, j) = dot(to_rat(V[j]), constraints[i]);
    std::set<IVec> seen;
    std::vector<IVec> out;
    for_subsets(m, v - 1, [&](const std::vector<int>& S) {
        RMat M(static_cast<int>(S.size()), v);
        for (int a = 0; a < M.rows; ++a)
            for (int j = 0; j < v; ++j) M.at(a, j) = L.at(S[a], j);
        auto K = rat_kernel(M);
        if (K.size() != 1) return;
        RVec z = K[0];
        int pos = 0, neg = 0;
        for (int i = 0; i < m; ++i) {
            Rat s = dot(L.row(i), z);
            if (s > 0) ++pos;
            else if (s < 0) ++neg;
        }
        if ((pos && neg) || (!pos && !neg)) return;
        if (neg)
            for (Rat& q : z) q = -q;
        IVec x = primitive_int(mul(C, z));
        if (seen.insert(x).second) out.push_back(x);
    });
    return out;
}

std::vector<int> set_intersection(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

std::vector<IVec> cone_supports(const std::vector<IVec>& gens, int ambient) {
    std::vector<IVec> out;
    if (gens.empty()) return out;
    int g = static_cast<int>(gens.size());
    int d = span_rank(gens, ambient);
    if (d == 0) return out;
    RMat GT = cols_matrix(gens, ambient);
    std::set<IVec> seen;
    for_subsets(g, d - 1, [&](const std::vector<int>& S) {
        // support candidates u = GT y with <u, gens[s]> = 0 for s in S;
        // the constraint matrix is a slice of the Gram matrix of the gens
        RMat M(static_cast<int>(S.size()), g);
        for (int a = 0; a < M.rows; ++a)
            for (int j = 0; j < g; ++j) M.at(a, j) = Rat(dot(gens[S[a]], gens[j]));
        auto K = rat_kernel(M);
        std::vector<RVec> cand;
        for (const RVec& y : K) cand.push_back(mul(GT, y));
        if (span_rank_rat(cand) != 1) return;
        RVec u;
        for (const RVec& c : cand)
            if (!is_zero(c)) { u = c; break; }
        int pos = 0, neg = 0;
        for (int j = 0; j < g; ++j) {
            Rat s = dot(u, gens[j]);
            if (s > 0) ++pos;
            else if (s < 0) ++neg;
        }
        if (pos && neg) return;
        if (neg)
            for (Rat& q : u) q = -q;
        IVec up = primitive_int(u);
        if (seen.insert(up).second) out.push_back(up);
    });
    return out;
}

bool cone_is_pointed(const std::vector<IVec>& gens, const std::vector<IVec>& supports,
                     int ambient) {
    int d = span_rank(gens, ambient);
    return span_rank(supports, ambient) == d;
}

std::vector<int> extremal_generators(const std::vector<IVec>& gens,
                                     const std::vector<IVec>& supports, int ambient) {
    std::vector<int> out;
    int g = static_cast<int>(gens.size());
    for (int i = 0; i < g; ++i) {
        if (is_zero(gens[i])) continue;
        // minimal face containing gens[i]: cut by all supports vanishing on it
        std::vector<const IVec*> zero_supports;
        for (const IVec& u : supports)
            if (dot(u, gens[i]) == 0) zero_supports.push_back(&u);
        std::vector<IVec> face_gens;
        for (int j = 0; j < g; ++j) {
            bool on_face = true;
            for (const IVec* u : zero_supports)
                if (dot(*u, gens[j]) != 0) { on_face = false; break; }
            if (on_face) face_gens.push_back(gens[j]);
        }
        if (span_rank(face_gens, ambient) == 1) out.push_back(i);
    }
    return out;
}

bool cone_contains(const std::vector<IVec>& gens, const std::vector<IVec>& supports,
                   int ambient, const RVec& x) {
    if (gens.empty()) return is_zero(x);
    auto s = solve_rational(cols_matrix(gens, ambient), x);
    if (!s.consistent) return false;
    for (const IVec& u : supports)
        if (dot(x, u) < 0) return false;
    return true;
}

LatticeBasis span_saturation(const std::vector<IVec>& gens, int ambient, Int* index_out) {
    if (gens.empty()) {
        if (index_out) *index_out = 1;
        return LatticeBasis{ambient, {}};
    }
    int g = static_cast<int>(gens.size());
    IMat C(ambient, g);
    for (int j = 0; j < g; ++j)
        for (int i = 0; i < ambient; ++i) C.at(i, j) = gens[j][i];
    SnfResult s = smith_normal_form(C);
    int r = 0;
    Int idx = 1;
    for (int i = 0; i < std::min(ambient, g); ++i)
        if (s.S.at(i, i) != 0) {
            ++r;
            idx *= s.S.at(i, i);
        }
    RMat uinv = inverse(to_rat(s.U));
    LatticeBasis sat{ambient, {}};
    for (int j = 0; j < r; ++j) {
        IVec v(ambient);
        for (int i = 0; i < ambient; ++i) v[i] = uinv.at(i, j).get_num();
        sat.vectors.push_back(std::move(v));
    }
    if (index_out) *index_out = idx;
    return sat;
}

Fan Fan::build(int rank, std::vector<IVec> rays, std::vector<std::vector<int>> maximal_cones) {
    if (rank < 0) throw InputError("negative lattice rank");
    Fan f;
    f.rank_ = rank;
    std::set<IVec> distinct;
    for (const IVec& r : rays) {
        if (static_cast<int>(r.size()) != rank) throw InputError("ray of wrong dimension");
        if (is_zero(r) || content(r) != 1)
            throw MathError("NonPrimitiveRay", "rays must be nonzero primitive vectors");
        if (!distinct.insert(r).second)
            throw MathError("DuplicateRay", "rays must be pairwise distinct");
    }
    f.rays_ = std::move(rays);
    int n = rank;
    int nrays = f.num_rays();

    std::set<std::vector<int>> all;
    all.insert({});
    std::vector<std::vector<int>> mx_sets;
    std::vector<std::vector<IVec>> mx_supports;
    std::vector<std::set<std::vector<int>>> mx_faces;
    for (std::vector<int> S : maximal_cones) {
        std::sort(S.begin(), S.end());
        if (std::adjacent_find(S.begin(), S.end()) != S.end())
            throw InputError("repeated ray index in a cone");
        for (int i : S)
            if (i < 0 || i >= nrays) throw InputError("ray index out of range");
        std::vector<IVec> gens;
        for (int i : S) gens.push_back(f.rays_[i]);
        std::vector<IVec> sup = cone_supports(gens, n);
        if (!cone_is_pointed(gens, sup, n))
            throw MathError("NotStronglyConvex", "cone contains a line");
        if (extremal_generators(gens, sup, n).size() != gens.size())
            throw MathError("RayNotExtremal", "listed ray is not an extreme ray of its cone");
        // faces = closure of the cone's ray set under intersection with facets
        std::vector<std::vector<int>> facet_sets;
        for (const IVec& u : sup) {
            std::vector<int> fu;
            for (size_t i = 0; i < S.size(); ++i)
                if (dot(u, gens[i]) == 0) fu.push_back(S[i]);
            facet_sets.push_back(std::move(fu));
        }
        std::set<std::vector<int>> faces{S};
        std::vector<std::vector<int>> work{S};
        while (!work.empty()) {
            std::vector<int> t = std::move(work.back());
            work.pop_back();
            for (const auto& fu : facet_sets) {
                std::vector<int> i2 = set_intersection(t, fu);
                if (faces.insert(i2).second) work.push_back(i2);
            }
        }
        faces.insert({});
        for (const auto& fc : faces) all.insert(fc);
        mx_sets.push_back(std::move(S));
        mx_supports.push_back(std::move(sup));
        mx_faces.push_back(std::move(faces));
    }

    // pairwise intersections must be common faces
    for (size_t i = 0; i < mx_sets.size(); ++i)
        for (size_t j = i + 1; j < mx_sets.size(); ++j) {
            std::vector<int> common = set_intersection(mx_sets[i], mx_sets[j]);
            if (!mx_faces[i].count(common) || !mx_faces[j].count(common))
                throw MathError("IntersectionNotAFace",
                                "intersection of two cones is not a common face");
            std::vector<IVec> gi, gj;
            for (int k : mx_sets[i]) gi.push_back(f.rays_[k]);
            for (int k : mx_sets[j]) gj.push_back(f.rays_[k]);
            std::vector<IVec> V = subspace_intersection(gi, gj, n);
            std::vector<IVec> cons = mx_supports[i];
            cons.insert(cons.end(), mx_supports[j].begin(), mx_supports[j].end());
            std::vector<IVec> ext = hspace_extreme_rays(V, cons, n);
            std::set<IVec> got(ext.begin(), ext.end());
            std::set<IVec> expected;
            for (int k : common) expected.insert(f.rays_[k]);
            if (got != expected)
                throw MathError("IntersectionNotAFace",
                                "intersection of two cones is not a common face");
        }

    // cone records, sorted by (dim, ray set)
    std::vector<std::pair<int, std::vector<int>>> ordered;
    for (const auto& s : all) {
        std::vector<IVec> gens;
        for (int i : s) gens.push_back(f.rays_[i]);
        ordered.emplace_back(span_rank(gens, n), s);
    }
    std::sort(ordered.begin(), ordered.end());
    for (const auto& [d, s] : ordered) {
        Cone c;
        c.rays = s;
        c.dim = d;
        f.by_rays_[s] = static_cast<ConeId>(f.cones_.size());
        f.cones_.push_back(std::move(c));
    }
    // maximal = not a proper subset of another cone's ray set
    for (auto& c : f.cones_) {
        c.maximal = true;
        for (const auto& o : f.cones_) {
            if (o.rays.size() <= c.rays.size()) continue;
            if (std::includes(o.rays.begin(), o.rays.end(), c.rays.begin(), c.rays.end())) {
                c.maximal = false;
                break;
            }
        }
    }
    // supports and "cones over" tables
    for (const auto& c : f.cones_) {
        std::vector<IVec> gens;
        for (int i : c.rays) gens.push_back(f.rays_[i]);
        f.supports_.push_back(cone_supports(gens, n));
    }
    f.over_.resize(f.cones_.size());
    for (ConeId a = 0; a < f.num_cones(); ++a)
        for (ConeId b = 0; b < f.num_cones(); ++b)
            if (f.cones_[b].dim == f.cones_[a].dim + 1 && f.is_face(a, b))
                f.over_[a].push_back(b);
    return f;
}

std::optional<ConeId> Fan::find_cone(std::vector<int> ray_set) const {
    std::sort(ray_set.begin(), ray_set.end());
    auto it = by_rays_.find(ray_set);
    if (it == by_rays_.end()) return std::nullopt;
    return it->second;
}

ConeId Fan::cone_id(std::vector<int> ray_set) const {
    auto c = find_cone(std::move(ray_set));
    if (!c) throw MathError("NoSuchCone", "ray set does not span a cone of the fan");
    return *c;
}

std::vector<ConeId> Fan::maximal_cones() const {
    std::vector<ConeId> out;
    for (ConeId c = 0; c < num_cones(); ++c)
        if (cones_[c].maximal) out.push_back(c);
    return out;
}

std::vector<ConeId> Fan::cones_of_dim(int d) const {
    std::vector<ConeId> out;
    for (ConeId c = 0; c < num_cones(); ++c)
        if (cones_[c].dim == d) out.push_back(c);
    return out;
}

bool Fan::is_face(ConeId tau, ConeId sigma) const {
    const auto& a = cones_[tau].rays;
    const auto& b = cones_[sigma].rays;
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<ConeId> Fan::faces(ConeId sigma) const {
    std::vector<ConeId> out;
    for (ConeId c = 0; c < num_cones(); ++c)
        if (is_face(c, sigma)) out.push_back(c);
    return out;
}

std::vector<ConeId> Fan::facets(ConeId sigma) const {
    std::vector<ConeId> out;
    for (ConeId c = 0; c < num_cones(); ++c)
        if (cones_[c].dim == cones_[sigma].dim - 1 && is_face(c, sigma)) out.push_back(c);
    return out;
}

const std::vector<ConeId>& Fan::cones_over(ConeId sigma) const { return over_[sigma]; }

ConeId Fan::a_maximal_over(ConeId sigma) const {
    for (ConeId c = 0; c < num_cones(); ++c)
        if (cones_[c].maximal && is_face(sigma, c)) return c;
    throw MathError("Internal", "cone has no maximal cone over it");
}

const ConeGeometry& Fan::geometry(ConeId c) const {
    auto it = geom_.find(c);
    if (it != geom_.end()) return it->second;
    std::vector<IVec> gens;
    for (int i : cones_[c].rays) gens.push_back(rays_[i]);
    ConeGeometry g;
    g.n_sigma = span_saturation(gens, rank_, &g.multiplicity);
    g.quotient = quotient_coordinates(rank_, g.n_sigma);
    g.m_perp = int_kernel(rows_matrix_int(gens, rank_));
    return geom_.emplace(c, std::move(g)).first->second;
}

const std::vector<IVec>& Fan::supports(ConeId c) const { return supports_[c]; }

bool Fan::is_simplicial() const {
    for (const auto& c : cones_)
        if (static_cast<int>(c.rays.size()) != c.dim) return false;
    return true;
}

bool Fan::is_smooth() const {
    if (!is_simplicial()) return false;
    for (ConeId c = 0; c < num_cones(); ++c)
        if (multiplicity(c) != 1) return false;
    return true;
}

Fan::Completeness Fan::completeness() const {
    if (rank_ == 0) return Completeness::Yes;
    for (const auto& c : cones_)
        if (c.maximal && c.dim < rank_) return Completeness::No;
    for (ConeId c = 0; c < num_cones(); ++c) {
        if (cones_[c].dim != rank_ - 1) continue;
        if (over_[c].size() == 1) return Completeness::No;
    }
    if (num_rays() >= rank_ + 1) return Completeness::Yes;
    return Completeness::Undecided;
}

bool Fan::contains_point(ConeId c, const RVec& x) const {
    std::vector<IVec> gens;
    for (int i : cones_[c].rays) gens.push_back(rays_[i]);
    return cone_contains(gens, supports_[c], rank_, x);
}

std::optional<ConeId> Fan::cone_containing(const RVec& x) const {
    for (ConeId c = 0; c < num_cones(); ++c)
        if (contains_point(c, x)) return c;
    return std::nullopt;
}

IVec Fan::primitive_quotient_generator(ConeId tau, ConeId sigma) const {
    if (!is_face(sigma, tau) || cones_[tau].dim != cones_[sigma].dim + 1)
        throw MathError("NotAFacet", "first cone must contain the second as a facet");
    const QuotientChart& chart = geometry(sigma).quotient;
    IVec g;
    for (int r : cones_[tau].rays) {
        IVec img = chart.project(rays_[r]);
        if (!is_zero(img)) {
            g = primitivize(img);
            break;
        }
    }
    IMat B = basis_matrix(geometry(tau).n_sigma);
    auto x = solve_integer(mul(chart.projection, B), g);
    if (!x) throw MathError("Internal", "quotient generator has no integral lift");
    return mul(B, *x);
}

StarFan Fan::star(ConeId sigma) const {
    const QuotientChart& chart = geometry(sigma).quotient;
    int q = chart.quotient_rank;
    std::vector<ConeId> up;
    for (ConeId c = 0; c < num_cones(); ++c)
        if (is_face(sigma, c)) up.push_back(c);

    std::map<ConeId, std::vector<IVec>> img_rays;
    for (ConeId c : up) {
        std::vector<IVec> gens;
        std::set<IVec> seen;
        for (int r : cones_[c].rays) {
            IVec img = chart.project(rays_[r]);
            if (is_zero(img)) continue;
            img = primitivize(img);
            if (seen.insert(img).second) gens.push_back(img);
        }
        std::vector<IVec> sup = cone_supports(gens, q);
        std::vector<IVec> ext;
        for (int e : extremal_generators(gens, sup, q)) ext.push_back(gens[e]);
        img_rays[c] = std::move(ext);
    }

    std::vector<IVec> star_rays;
    std::map<IVec, int> ridx;
    for (ConeId c : up)
        for (const IVec& v : img_rays[c])
            if (!ridx.count(v)) {
                ridx[v] = static_cast<int>(star_rays.size());
                star_rays.push_back(v);
            }
    auto index_set = [&](ConeId c) {
        std::vector<int> s;
        for (const IVec& v : img_rays[c]) s.push_back(ridx.at(v));
        std::sort(s.begin(), s.end());
        return s;
    };
    std::vector<std::vector<int>> mx;
    for (ConeId c : up)
        if (cones_[c].maximal) mx.push_back(index_set(c));

    StarFan out;
    out.chart = chart;
    out.fan = std::make_shared<Fan>(build(q, star_rays, mx));
    for (ConeId c : up) out.image[c] = out.fan->cone_id(index_set(c));
    return out;
}

bool Fan::same_cones(const Fan& o) const {
    if (cones_.size() != o.cones_.size()) return false;
    for (size_t i = 0; i < cones_.size(); ++i)
        if (cones_[i].rays != o.cones_[i].rays) return false;
    return true;
}

} // namespace toric

#include "toric/morphism.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "toric/intersection.hpp"

namespace toric {

namespace {

void check_fan(const QCartierDivisor& d, const Fan& f, const char* what) {
    if (d.fan == nullptr || (d.fan != &f && !(*d.fan == f)))
        throw InputError(std::string(what) + " lives on a different fan");
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

RVec ToricMorphism::map_point(const RVec& x) const {
    return mul(to_rat(phi_), x);
}

RVec ToricMorphism::pullback_form(const RVec& m) const {
    return mul(to_rat(transpose(phi_)), m);
}

ToricMorphism ToricMorphism::build(const IMat& phi, const Fan& source, const Fan& target) {
    if (phi.rows != target.rank() || phi.cols != source.rank())
        throw InputError("lattice map of the wrong shape");

    ToricMorphism f;
    f.phi_ = phi;
    f.source_ = &source;
    f.target_ = &target;
    f.image_.assign(source.num_cones(), -1);

    RMat phir = to_rat(phi);
    for (ConeId c = 0; c < source.num_cones(); ++c) {
        const Cone& cone = source.cone(c);
        if (cone.dim == 0) {
            f.image_[c] = target.zero_cone();
            continue;
        }
        // an interior point of the image cone; the minimal cone of the target
        // fan containing it contains the whole image
        RVec x(target.rank(), Rat(0));
        std::vector<RVec> images;
        for (int r : cone.rays) {
            images.push_back(mul(phir, to_rat(source.ray(r))));
            for (int i = 0; i < target.rank(); ++i) x[i] += images.back()[i];
        }
        std::optional<ConeId> hit = target.cone_containing(x);
        bool ok = hit.has_value();
        for (size_t i = 0; ok && i < images.size(); ++i)
            ok = target.contains_point(*hit, images[i]);
        if (!ok)
            throw MathError("ConeNotMapped",
                            "source cone " + cone_name(source, c) +
                                " does not map into any cone of the target fan");
        f.image_[c] = *hit;
    }
    return f;
}

namespace {

// Exact-coverage test for square nonsingular phi: the source maximal cones
// tile the preimage of every maximal target cone.
bool covers_preimages(const ToricMorphism& f) {
    const Fan& src = f.source();
    const Fan& tgt = f.target();
    std::vector<ConeId> max_src = src.maximal_cones();

    std::vector<bool> hit(tgt.num_cones(), false);
    for (ConeId s : max_src) {
        ConeId c = f.image_cone(s);
        if (!tgt.cone(c).maximal || src.cone(s).dim != tgt.cone(c).dim) return false;
        hit[c] = true;
    }
    for (ConeId t : tgt.maximal_cones())
        if (!hit[t]) return false;

    // every facet of a maximal source cone is an interior wall or maps into
    // the boundary of the containing target cone
    for (ConeId s : max_src) {
        for (ConeId facet : src.facets(s)) {
            int walls = 0;
            for (ConeId other : max_src)
                if (src.cone(other).dim == src.cone(facet).dim + 1 &&
                    src.is_face(facet, other))
                    ++walls;
            if (walls >= 2) continue;
            bool on_boundary = false;
            for (const IVec& u : tgt.supports(f.image_cone(s))) {
                bool vanishes = true;
                for (int r : src.cone(facet).rays)
                    if (dot(u, mul(f.phi(), src.ray(r))) != 0) vanishes = false;
                if (vanishes) {
                    on_boundary = true;
                    break;
                }
            }
            if (!on_boundary) return false;
        }
    }
    return true;
}

} // namespace

PropernessReport is_proper_restricted(const ToricMorphism& f) {
    const Fan& src = f.source();
    const Fan& tgt = f.target();

    if (src.completeness() == Fan::Completeness::Yes &&
        tgt.completeness() == Fan::Completeness::Yes)
        return {Properness::Yes, {}};

    if (f.phi().rows == f.phi().cols && det(f.phi()) != 0 && covers_preimages(f))
        return {Properness::Yes, {}};

    // hunt for a support-mismatch witness: a point whose image lies in the
    // target support while the point itself escapes the source support
    std::vector<RVec> candidates;
    RVec total(src.rank(), Rat(0));
    for (const IVec& v : src.rays()) {
        RVec x = to_rat(v);
        for (auto& e : x) e = -e;
        candidates.push_back(x);
        for (int i = 0; i < src.rank(); ++i) total[i] += x[i];
    }
    candidates.push_back(total);
    for (const RVec& x : candidates) {
        if (is_zero(x)) continue;
        if (!src.cone_containing(x) && tgt.cone_containing(f.map_point(x)))
            return {Properness::No, x};
    }
    return {Properness::Undecided, {}};
}

PushforwardEntry pushforward_entry(const ToricMorphism& f, ConeId src) {
    const Fan& source = f.source();
    const Fan& target = f.target();
    ConeId img = f.image_cone(src);
    int codim_src = source.rank() - source.cone(src).dim;
    int codim_img = target.rank() - target.cone(img).dim;
    if (codim_img < codim_src) return {true, -1, Int(0)};
    if (codim_img > codim_src)
        throw MathError("Internal", "image cone codimension exceeds source codimension");

    if (codim_src == 0) return {false, img, Int(1)};
    LatticeBasis sub{source.rank(), {}};
    IMat phit = transpose(f.phi());
    for (const IVec& m : target.geometry(img).m_perp) sub.vectors.push_back(mul(phit, m));
    LatticeBasis sup{source.rank(), source.geometry(src).m_perp};
    return {false, img, lattice_index(sub, sup)};
}

Cycle pushforward(const ToricMorphism& f, const Cycle& z) {
    if (z.fan == nullptr || (z.fan != &f.source() && !(*z.fan == f.source())))
        throw InputError("cycle lives on a different fan");
    if (is_proper_restricted(f).value != Properness::Yes)
        throw MathError("NotProper", "pushforward requires a certified proper map");

    Cycle out(f.target());
    for (const auto& [c, q] : z.terms) {
        PushforwardEntry e = pushforward_entry(f, c);
        if (!e.zero) out.add(e.target, Rat(e.multiplicity) * q);
    }
    return out;
}

QCartierDivisor pullback_divisor(const ToricMorphism& f, const QCartierDivisor& d) {
    check_fan(d, f.target(), "divisor");
    QCartierDivisor out;
    out.fan = &f.source();
    for (ConeId s : f.source().maximal_cones()) {
        ConeId over = f.target().a_maximal_over(f.image_cone(s));
        out.local_eq[s] = f.pullback_form(d.local_eq.at(over));
    }
    validate_divisor(out);
    return out;
}

Fan star_subdivision(const Fan& fan, const IVec& rho) {
    if (static_cast<int>(rho.size()) != fan.rank() || is_zero(rho))
        throw InputError("subdivision ray must be a nonzero lattice vector");
    IVec r = primitivize(rho);
    RVec rq = to_rat(r);
    if (!fan.cone_containing(rq))
        throw MathError("RayOutsideSupport", "subdivision ray lies outside the fan support");

    std::vector<IVec> rays = fan.rays();
    int rho_idx = -1;
    for (int i = 0; i < fan.num_rays(); ++i)
        if (fan.ray(i) == r) rho_idx = i;
    if (rho_idx < 0) {
        rho_idx = static_cast<int>(rays.size());
        rays.push_back(r);
    }

    std::set<std::vector<int>> maximal;
    for (ConeId c : fan.maximal_cones()) {
        if (!fan.contains_point(c, rq)) {
            maximal.insert(fan.cone(c).rays);
            continue;
        }
        for (ConeId facet : fan.facets(c)) {
            if (fan.contains_point(facet, rq)) continue;
            std::vector<int> joined = fan.cone(facet).rays;
            joined.push_back(rho_idx);
            std::sort(joined.begin(), joined.end());
            maximal.insert(joined);
        }
    }
    return Fan::build(fan.rank(), rays,
                      std::vector<std::vector<int>>(maximal.begin(), maximal.end()));
}

Fan simplicialize(const Fan& fan, int max_steps) {
    Fan cur = fan;
    for (int step = 0; step <= max_steps; ++step) {
        ConeId bad = -1; // cones are sorted by dimension: first hit is minimal
        for (ConeId c = 0; c < cur.num_cones() && bad < 0; ++c)
            if (static_cast<int>(cur.cone(c).rays.size()) != cur.cone(c).dim) bad = c;
        if (bad < 0) return cur;
        if (step == max_steps) break;
        // a facet's join with one of the cone's own rays splits the cone and
        // adds no new rays; minimality keeps every replacement simplicial
        cur = star_subdivision(cur, cur.ray(cur.cone(bad).rays[0]));
    }
    throw MathError("CannotSimplicialize",
                    "no simplicial refinement within " + std::to_string(max_steps) +
                        " star subdivisions");
}

Cycle product_on_nonsimplicial(const Fan& fan, const std::vector<QCartierDivisor>& divisors,
                               const IMat& gram) {
    Fan refined = simplicialize(fan);
    ToricMorphism f = ToricMorphism::build(IMat::identity(fan.rank()), refined, fan);
    ComplementChoice psi = ComplementChoice::from_inner_product(refined, gram);

    Cycle z(refined);
    z.add(refined.zero_cone(), Rat(1));
    for (const QCartierDivisor& d : divisors) {
        check_fan(d, fan, "divisor");
        z = intersect(pullback_divisor(f, d), z, psi);
    }
    Cycle out = pushforward(f, z);
    out.fan = &fan;
    return out;
}

CompatibilityReport check_pushforward_compatible(const ComplementChoice& psi,
                                                 const ComplementChoice& psi_source,
                                                 const ToricMorphism& f) {
    const Fan& src = f.source();
    const Fan& tgt = f.target();
    if (!(&psi_source.fan() == &src || psi_source.fan() == src) ||
        !(&psi.fan() == &tgt || psi.fan() == tgt))
        throw InputError("complement choices live on different fans");

    for (ConeId s = 0; s < src.num_cones(); ++s) {
        ConeId t = f.image_cone(s);
        if (src.rank() - src.cone(s).dim != tgt.rank() - tgt.cone(t).dim) continue;
        const std::vector<RVec>& basis = psi_source.psi(s);
        RMat a(src.rank(), static_cast<int>(basis.size()));
        for (int j = 0; j < a.cols; ++j)
            for (int i = 0; i < a.rows; ++i) a.at(i, j) = basis[j][i];
        for (const RVec& u : psi.psi(t)) {
            RVec pb = f.pullback_form(u);
            if (!solve_rational(a, pb).consistent) return {false, s, t};
        }
    }
    return {true, -1, -1};
}

ProjectionFormulaReport projection_formula_check(const ToricMorphism& f,
                                                 const QCartierDivisor& d, const Cycle& z,
                                                 const ComplementChoice& psi,
                                                 const ComplementChoice& psi_source) {
    CompatibilityReport compat = check_pushforward_compatible(psi, psi_source, f);
    if (!compat.ok)
        throw MathError("IncompatibleAt",
                        "complements disagree at source cone " +
                            cone_name(f.source(), compat.source_cone));

    ProjectionFormulaReport rep;
    rep.lhs = pushforward(f, intersect(pullback_divisor(f, d), z, psi_source));
    rep.rhs = intersect(d, pushforward(f, z), psi);
    rep.ok = rep.lhs == rep.rhs;
    return rep;
}

} // namespace toric

#include "doctest.h"
#include "fixtures.hpp"
#include "toric/cycle_ring.hpp"
#include "toric/intersection.hpp"
#include "toric/morphism.hpp"

#include <random>

using namespace toric;
using namespace fixtures;

namespace {

Cycle unit(const Fan& f, ConeId c) {
    Cycle z(f);
    z.add(c, Rat(1));
    return z;
}

IMat imat2(long a, long b, long c, long d) {
    IMat m(2, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
}

QCartierDivisor principal(const Fan& f, const RVec& m) {
    QCartierDivisor d;
    d.fan = &f;
    for (ConeId c : f.maximal_cones()) d.local_eq[c] = m;
    return d;
}

IMat random_gram(int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(-3, 3);
    IMat b(n, n);
    for (auto& x : b.a) x = pick(rng);
    IMat g = mul(transpose(b), b);
    for (int i = 0; i < n; ++i) g.at(i, i) += 1;
    return g;
}

} // namespace

TEST_CASE("building morphisms") {
    Fan f = p2();
    ToricMorphism id = ToricMorphism::build(IMat::identity(2), f, f);
    for (ConeId c = 0; c < f.num_cones(); ++c) CHECK(id.image_cone(c) == c);

    Fan bl = blowup_c2(), quad = c2();
    ToricMorphism pi = ToricMorphism::build(IMat::identity(2), bl, quad);
    CHECK(pi.image_cone(bl.cone_id({2})) == quad.cone_id({0, 1})); // exceptional ray
    CHECK(pi.image_cone(bl.cone_id({0})) == quad.cone_id({0}));
    CHECK(pi.image_cone(bl.cone_id({0, 2})) == quad.cone_id({0, 1}));

    CHECK_THROWS_WITH_AS(ToricMorphism::build(imat2(0, -1, 1, 0), quad, quad),
                         doctest::Contains("ConeNotMapped"), MathError);
    CHECK_THROWS_AS(ToricMorphism::build(IMat::identity(3), quad, quad), InputError);
}

TEST_CASE("restricted properness") {
    Fan bl = blowup_c2(), quad = c2(), proj = p2();

    CHECK(is_proper_restricted(ToricMorphism::build(IMat::identity(2), bl, quad)).value ==
          Properness::Yes);

    PropernessReport no = is_proper_restricted(ToricMorphism::build(IMat::identity(2), quad, proj));
    CHECK(no.value == Properness::No);
    CHECK(!quad.cone_containing(no.witness).has_value()); // genuine support gap
    CHECK(proj.cone_containing(no.witness).has_value());

    // inclusion of a half line into the plane: actually proper, but outside
    // the decidable classes
    Fan ray = halfline();
    IMat incl(2, 1);
    incl.at(0, 0) = 1;
    CHECK(is_proper_restricted(ToricMorphism::build(incl, ray, quad)).value ==
          Properness::Undecided);

    // complete source and target
    Fan cube = p1p1p1(), line = pn(1);
    IMat first(1, 3);
    first.at(0, 0) = 1;
    CHECK(is_proper_restricted(ToricMorphism::build(first, cube, line)).value ==
          Properness::Yes);

    // multiplication by 2 on the half line: square and covering
    IMat two(1, 1);
    two.at(0, 0) = 2;
    CHECK(is_proper_restricted(ToricMorphism::build(two, ray, ray)).value == Properness::Yes);
}

TEST_CASE("pushforward of cycles") {
    Fan bl = blowup_c2(), quad = c2();
    ToricMorphism pi = ToricMorphism::build(IMat::identity(2), bl, quad);

    CHECK(pushforward(pi, unit(bl, bl.cone_id({2}))).is_zero()); // exceptional ray dies
    CHECK(pushforward(pi, unit(bl, bl.cone_id({0, 2}))) == unit(quad, quad.cone_id({0, 1})));
    CHECK(pushforward(pi, unit(bl, bl.zero_cone())) == unit(quad, quad.zero_cone()));

    SUBCASE("lattice index multiplicities") {
        Fan ray = halfline();
        IMat two(1, 1);
        two.at(0, 0) = 2;
        ToricMorphism dbl = ToricMorphism::build(two, ray, ray);
        CHECK(pushforward(dbl, unit(ray, ray.zero_cone())) ==
              Rat(2) * unit(ray, ray.zero_cone()));
        CHECK(pushforward(dbl, unit(ray, ray.cone_id({0}))) == unit(ray, ray.cone_id({0})));
    }
    SUBCASE("projection of the triple product preserves point degree") {
        Fan cube = p1p1p1(), line = pn(1);
        IMat first(1, 3);
        first.at(0, 0) = 1;
        ToricMorphism f = ToricMorphism::build(first, cube, line);
        Cycle pts(cube);
        for (ConeId c : cube.maximal_cones()) pts.add(c, Rat(1));
        CHECK(degree(pushforward(f, pts)) == degree(pts));
        // fibers of positive dimension die
        CHECK(pushforward(f, unit(cube, cube.cone_id({0}))).is_zero());
        // a section-like curve pushes onto the whole target
        CHECK(pushforward(f, unit(cube, cube.cone_id({1, 2}))) ==
              unit(line, line.zero_cone()));
    }
    SUBCASE("uncertified maps are blocked") {
        ToricMorphism incl = ToricMorphism::build(IMat::identity(2), quad, p2());
        Fan proj = p2();
        incl = ToricMorphism::build(IMat::identity(2), quad, proj);
        CHECK_THROWS_WITH_AS(pushforward(incl, unit(quad, quad.zero_cone())),
                             doctest::Contains("NotProper"), MathError);
    }
}

TEST_CASE("pullback of divisors") {
    Fan bl = blowup_c2(), quad = c2();
    ToricMorphism pi = ToricMorphism::build(IMat::identity(2), bl, quad);

    QCartierDivisor d = principal(quad, rv({1, 0}));
    QCartierDivisor pb = pullback_divisor(pi, d);
    CHECK(pb.local_eq.at(bl.cone_id({0, 2})) == rv({1, 0}));
    CHECK(pb.local_eq.at(bl.cone_id({1, 2})) == rv({1, 0}));
    Cycle cls = divisor_cycle(pb); // ray coefficients (1, 1, 0)
    CHECK(cls.coeff(bl.cone_id({0})) == Rat(1));
    CHECK(cls.coeff(bl.cone_id({2})) == Rat(1));
    CHECK(cls.coeff(bl.cone_id({1})) == Rat(0));

    ToricMorphism id = ToricMorphism::build(IMat::identity(2), quad, quad);
    CHECK(pullback_divisor(id, d).local_eq == d.local_eq);
}

TEST_CASE("star subdivision") {
    Fan quad = c2();
    CHECK(star_subdivision(quad, iv({1, 1})) == blowup_c2());
    CHECK(star_subdivision(quad, iv({2, 2})) == blowup_c2()); // primitivized

    CHECK(star_subdivision(p2(), iv({0, 1})) == p2()); // existing ray, simplicial

    // one step of resolving the A_1-type singular cone
    Fan sing = Fan::build(2, {iv({1, 0}), iv({1, 2})}, {{0, 1}});
    Fan res = star_subdivision(sing, iv({1, 1}));
    CHECK(res.num_rays() == 3);
    for (ConeId c : res.maximal_cones()) CHECK(res.multiplicity(c) == 1);

    CHECK_THROWS_WITH_AS(star_subdivision(quad, iv({-1, -1})),
                         doctest::Contains("RayOutsideSupport"), MathError);
    CHECK_THROWS_AS(star_subdivision(quad, iv({0, 0})), InputError);
}

TEST_CASE("simplicialization") {
    Fan sq = cone_over_square();
    Fan simp = simplicialize(sq);
    CHECK(simp.is_simplicial());
    CHECK(simp.num_rays() == 4); // splits along a diagonal, no new rays
    CHECK(simp.maximal_cones().size() == 2);

    Fan already = p1p1();
    CHECK(simplicialize(already) == already);
}

TEST_CASE("products on non-simplicial fans") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> pick(-4, 4);

    SUBCASE("agrees with the direct action on simplicial fans") {
        Fan f = p2();
        IMat g = random_gram(2, rng);
        ComplementChoice psi = ComplementChoice::from_inner_product(f, g);
        for (int t = 0; t < 5; ++t) {
            std::vector<QCartierDivisor> ds;
            for (int i = 0; i < 2; ++i)
                ds.push_back(divisor_from_ray_coefficients(
                    f, {Rat(pick(rng)), Rat(pick(rng)), Rat(pick(rng))}));
            Cycle direct = unit(f, f.zero_cone());
            for (const auto& d : ds) direct = intersect(d, direct, psi);
            CHECK(product_on_nonsimplicial(f, ds, g) == direct);
        }
    }
    SUBCASE("cone over a square") {
        Fan f = cone_over_square();
        for (int t = 0; t < 5; ++t) {
            IMat g = random_gram(3, rng);
            ComplementChoice psi = ComplementChoice::from_inner_product(f, g);
            std::vector<QCartierDivisor> ds;
            for (int i = 0; i < 2; ++i)
                ds.push_back(principal(f, rv({pick(rng), pick(rng), pick(rng)})));
            Cycle direct = unit(f, f.zero_cone());
            for (const auto& d : ds) direct = intersect(d, direct, psi);
            Cycle via_refinement = product_on_nonsimplicial(f, ds, g);
            CHECK(via_refinement == direct);
            int dim = -1;
            CHECK(via_refinement.pure(&dim));
            if (!via_refinement.is_zero()) CHECK(dim == 2);
        }
    }
}

TEST_CASE("pushforward compatibility of complements") {
    Fan bl = blowup_c2(), quad = c2();
    ToricMorphism pi = ToricMorphism::build(IMat::identity(2), bl, quad);

    SUBCASE("a shared gram is always compatible on refinements") {
        std::mt19937 rng(31);
        for (int t = 0; t < 5; ++t) {
            IMat g = random_gram(2, rng);
            CHECK(check_pushforward_compatible(ComplementChoice::from_inner_product(quad, g),
                                               ComplementChoice::from_inner_product(bl, g), pi)
                      .ok);
        }
    }
    SUBCASE("identity morphism with identical complements") {
        Fan f = p2();
        ToricMorphism id = ToricMorphism::build(IMat::identity(2), f, f);
        ComplementChoice psi = ComplementChoice::from_inner_product(f, pn_gram(2));
        CHECK(check_pushforward_compatible(psi, psi, id).ok);
    }
    SUBCASE("mismatched grams are flagged with the offending pair") {
        CompatibilityReport rep = check_pushforward_compatible(
            ComplementChoice::from_inner_product(quad, IMat::identity(2)),
            ComplementChoice::from_inner_product(bl, imat2(2, 1, 1, 2)), pi);
        CHECK(!rep.ok);
        CHECK(bl.cone(rep.source_cone).dim == 1); // fails at a ray pair
    }
}

TEST_CASE("projection formula") {
    Fan bl = blowup_c2(), quad = c2();
    ToricMorphism pi = ToricMorphism::build(IMat::identity(2), bl, quad);
    ComplementChoice psi = ComplementChoice::from_inner_product(quad, IMat::identity(2));
    ComplementChoice psi_bl = ComplementChoice::from_inner_product(bl, IMat::identity(2));

    SUBCASE("blowup with a coordinate divisor") {
        QCartierDivisor d = principal(quad, rv({1, 0}));
        ProjectionFormulaReport rep =
            projection_formula_check(pi, d, unit(bl, bl.zero_cone()), psi, psi_bl);
        CHECK(rep.ok);
        CHECK(rep.lhs == unit(quad, quad.cone_id({0})));
    }
    SUBCASE("both sides vanish when every facet drops codimension") {
        Fan cube = p1p1p1(), line = pn(1);
        IMat first(1, 3);
        first.at(0, 0) = 1;
        ToricMorphism f = ToricMorphism::build(first, cube, line);
        IMat one(1, 1);
        one.at(0, 0) = 1;
        ComplementChoice psi_line = ComplementChoice::from_inner_product(line, one);
        ComplementChoice psi_cube = ComplementChoice::from_inner_product(cube, IMat::identity(3));
        QCartierDivisor d = divisor_from_ray_coefficients(line, {Rat(1), Rat(0)});
        ProjectionFormulaReport rep =
            projection_formula_check(f, d, unit(cube, cube.zero_cone()), psi_line, psi_cube);
        CHECK(rep.ok);
        CHECK(rep.lhs.is_zero());
        CHECK(rep.rhs.is_zero());
    }
    SUBCASE("exceptional cancellation: opposite wall generators") {
        QCartierDivisor d = principal(quad, rv({1, 0}));
        Cycle up = intersect(pullback_divisor(pi, d), unit(bl, bl.cone_id({2})), psi_bl);
        Rat left = up.coeff(bl.cone_id({0, 2})), right = up.coeff(bl.cone_id({1, 2}));
        CHECK(left != 0);
        CHECK(left == -right); // the pushforward sums them to zero
        ProjectionFormulaReport rep =
            projection_formula_check(pi, d, unit(bl, bl.cone_id({2})), psi, psi_bl);
        CHECK(rep.ok);
        CHECK(rep.lhs.is_zero());
    }
    SUBCASE("randomized refinement battery") {
        std::mt19937 rng(47);
        std::uniform_int_distribution<int> pick(-4, 4);
        for (const Fan& target : {c2(), p2(), p1p1()}) {
            Fan refined = star_subdivision(target, iv({1, 1}));
            ToricMorphism f = ToricMorphism::build(IMat::identity(2), refined, target);
            for (int t = 0; t < 8; ++t) {
                IMat g = random_gram(2, rng);
                ComplementChoice pt = ComplementChoice::from_inner_product(target, g);
                ComplementChoice ps = ComplementChoice::from_inner_product(refined, g);
                QCartierDivisor d = principal(target, rv({pick(rng), pick(rng)}));
                Cycle z(refined);
                for (ConeId c = 0; c < refined.num_cones(); ++c) z.add(c, Rat(pick(rng)));
                CHECK(projection_formula_check(f, d, z, pt, ps).ok);
            }
        }
    }
    SUBCASE("incompatible complements are rejected") {
        ComplementChoice skew = ComplementChoice::from_inner_product(bl, imat2(2, 1, 1, 2));
        QCartierDivisor d = principal(quad, rv({1, 0}));
        CHECK_THROWS_WITH_AS(
            projection_formula_check(pi, d, unit(bl, bl.zero_cone()), psi, skew),
            doctest::Contains("IncompatibleAt"), MathError);
    }
}

TEST_CASE("structure of refinement morphisms") {
    SUBCASE("preimages decompose into equal-codimension pieces") {
        for (const Fan& target : {c2(), p2(), p1p1()}) {
            Fan refined = star_subdivision(target, iv({1, 1}));
            ToricMorphism f = ToricMorphism::build(IMat::identity(2), refined, target);
            for (ConeId t = 0; t < target.num_cones(); ++t) {
                // maximal cones among those mapping into t have the codim of t
                for (ConeId s = 0; s < refined.num_cones(); ++s) {
                    if (f.image_cone(s) != t) continue;
                    bool covered = false;
                    for (ConeId bigger = 0; bigger < refined.num_cones(); ++bigger)
                        if (bigger != s && f.image_cone(bigger) == t &&
                            refined.is_face(s, bigger))
                            covered = true;
                    if (!covered)
                        CHECK(refined.cone(s).dim == target.cone(t).dim);
                }
            }
        }
    }
    SUBCASE("pushforward is functorial along composed subdivisions") {
        Fan base = p2();
        Fan mid = star_subdivision(base, iv({1, 1}));
        Fan top = star_subdivision(mid, iv({0, -1}));
        ToricMorphism f1 = ToricMorphism::build(IMat::identity(2), mid, base);
        ToricMorphism f2 = ToricMorphism::build(IMat::identity(2), top, mid);
        ToricMorphism f = ToricMorphism::build(IMat::identity(2), top, base);
        std::mt19937 rng(59);
        std::uniform_int_distribution<int> pick(-4, 4);
        for (int t = 0; t < 5; ++t) {
            Cycle z(top);
            for (ConeId c = 0; c < top.num_cones(); ++c) z.add(c, Rat(pick(rng)));
            CHECK(pushforward(f, z) == pushforward(f1, pushforward(f2, z)));
        }
    }
}

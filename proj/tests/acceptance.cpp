// Acceptance gate: twelve exact-arithmetic criteria, one pass/fail line each.
// Exit code 0 iff every criterion passes.

#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "toric/cycle_ring.hpp"
#include "toric/intersection.hpp"
#include "toric/morphism.hpp"

using namespace toric;
using namespace fixtures;

namespace {

struct Failure {
    std::string what;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

Cycle unit(const Fan& f, ConeId c) {
    Cycle z(f);
    z.add(c, Rat(1));
    return z;
}

Cycle fundamental(const Fan& f) { return unit(f, f.zero_cone()); }

IMat random_gram(int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(-4, 4);
    IMat b(n, n);
    for (auto& x : b.a) x = pick(rng);
    IMat g = mul(transpose(b), b);
    for (int i = 0; i < n; ++i) g.at(i, i) += 1;
    return g;
}

QCartierDivisor random_divisor(const Fan& f, std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(-5, 5);
    std::vector<Rat> coeffs;
    for (int i = 0; i < f.num_rays(); ++i) coeffs.emplace_back(pick(rng));
    return divisor_from_ray_coefficients(f, coeffs);
}

Cycle random_cycle(const Fan& f, std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(-3, 3);
    Cycle z(f);
    for (ConeId c = 0; c < f.num_cones(); ++c) z.add(c, Rat(pick(rng)));
    return z;
}

std::vector<IVec> random_generic_flag(const Fan& f, std::mt19937& rng) {
    std::uniform_int_distribution<int> pick(-5, 5);
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<IVec> flag;
        for (int i = 0; i < f.rank(); ++i) {
            IVec v(f.rank());
            for (auto& x : v) x = pick(rng);
            flag.push_back(v);
        }
        try {
            ComplementChoice::from_flag(f, flag);
            return flag;
        } catch (const MathError&) {
        }
    }
    throw Failure{"could not sample a generic flag"};
}

// 1. affine space, standard inner product: coordinate divisors move cones up
void criterion_1() {
    for (int n = 2; n <= 4; ++n) {
        Fan f = cn(n);
        ComplementChoice psi = ComplementChoice::from_inner_product(f, IMat::identity(n));
        for (int i = 0; i < n; ++i) {
            std::vector<Rat> coeffs(n, Rat(0));
            coeffs[i] = 1;
            QCartierDivisor d = divisor_from_ray_coefficients(f, coeffs);
            for (ConeId tau = 0; tau < f.num_cones(); ++tau) {
                Cycle got = intersect(d, unit(f, tau), psi);
                std::vector<int> rays = f.cone(tau).rays;
                bool has = std::find(rays.begin(), rays.end(), i) != rays.end();
                Cycle want(f);
                if (!has) {
                    rays.push_back(i);
                    std::sort(rays.begin(), rays.end());
                    want.add(f.cone_id(rays), Rat(1));
                }
                require(got == want, "coordinate action mismatch on C^" + std::to_string(n));
            }
        }
    }
}

// 2. commutativity of the divisor action for all three complement variants
void criterion_2() {
    std::mt19937 rng(1002);
    std::vector<Fan> fans = {p2(), p112(), blowup_c2(), p1p1(), cn(3), pn(3), p1p1p1(), cn(4)};
    for (int t = 0; t < 200; ++t) {
        const Fan& f = fans[t % fans.size()];
        QCartierDivisor d = random_divisor(f, rng), e = random_divisor(f, rng);
        Cycle z = random_cycle(f, rng);
        std::vector<ComplementChoice> psis;
        psis.push_back(ComplementChoice::from_inner_product(f, random_gram(f.rank(), rng)));
        psis.push_back(ComplementChoice::from_flag(f, random_generic_flag(f, rng)));
        {
            ComplementChoice base =
                ComplementChoice::from_inner_product(f, random_gram(f.rank(), rng));
            std::vector<std::vector<RVec>> bases;
            for (ConeId c = 0; c < f.num_cones(); ++c) bases.push_back(base.psi(c));
            psis.push_back(ComplementChoice::from_explicit(f, bases));
        }
        for (const ComplementChoice& psi : psis)
            require(intersect(d, intersect(e, z, psi), psi) ==
                        intersect(e, intersect(d, z, psi), psi),
                    "commutativity failed on case " + std::to_string(t));
    }
}

// 3. global coefficients equal their affine localizations, chains of length <= 3
void criterion_3() {
    std::mt19937 rng(1003);
    for (const Fan& f : {p2(), p112(), blowup_c2(), p1p1(), cn(3), pn(3)}) {
        ComplementChoice psi = ComplementChoice::from_inner_product(f, random_gram(f.rank(), rng));
        for (int s = 1; s <= 3; ++s) {
            std::vector<QCartierDivisor> ds;
            for (int i = 0; i < s; ++i) ds.push_back(random_divisor(f, rng));
            for (ConeId sigma = 0; sigma < f.num_cones(); ++sigma)
                for (ConeId tau = 0; tau < f.num_cones(); ++tau) {
                    if (!f.is_face(sigma, tau)) continue;
                    if (f.cone(tau).dim - f.cone(sigma).dim != s) continue;
                    Cycle z = unit(f, sigma);
                    for (const auto& d : ds) z = intersect(d, z, psi);
                    require(z.coeff(tau) == localize_coefficient(tau, sigma, ds, psi),
                            "localization mismatch");
                }
        }
    }
}

// 4. ring presentation soundness: generators vanish, reduce == direct action
void criterion_4() {
    std::mt19937 rng(1004);
    unsigned seed = 40000;
    for (const Fan& f : {p2(), pn(3), p1p1(), cn(3)}) {
        for (int t = 0; t < 5; ++t) {
            IMat g = random_gram(f.rank(), rng);
            ComplementChoice psi = ComplementChoice::from_inner_product(f, g);
            PresentationReport rep = verify_presentation(f, g, psi, ++seed, 100);
            require(rep.ok, rep.mismatches.empty() ? "presentation check failed"
                                                   : rep.mismatches.front());
        }
    }
}

// 5. the cyclic projective-space relations vanish under the matching metric
void criterion_5() {
    for (int n = 2; n <= 3; ++n) {
        Fan f = pn(n);
        int r = n + 1;
        ComplementChoice psi = ComplementChoice::from_inner_product(f, pn_gram(n));
        Polynomial all = Polynomial::constant(Rat(1), r);
        for (int j = 0; j < r; ++j) {
            Polynomial y = Polynomial::variable(j, r);
            Polynomial rel =
                y * (y - Rat(1, 2) * Polynomial::variable((j + r - 1) % r, r) -
                     Rat(1, 2) * Polynomial::variable((j + 1) % r, r));
            require(evaluate_ray_polynomial(rel, psi).is_zero(),
                    "cyclic quadric does not vanish");
            all *= y;
        }
        require(evaluate_ray_polynomial(all, psi).is_zero(),
                "product of all ray divisors does not vanish");
    }
}

// 6. Todd coefficients on projective space are the cyclic fractions
void criterion_6() {
    for (int n = 1; n <= 4; ++n) {
        Fan f = pn(n);
        ComplementChoice psi = ComplementChoice::from_inner_product(f, pn_gram(n));
        Cycle t = todd_cycle(f, psi);
        Rat top(0);
        for (ConeId c = 0; c < f.num_cones(); ++c) {
            require(t.coeff(c) == q_fraction(f.cone(c).rays, n + 1),
                    "Todd coefficient is not the cyclic fraction");
            if (f.cone(c).dim == n) top += t.coeff(c);
            if (n <= 2) {
                int d = f.cone(c).dim;
                Rat want = d == 0 ? Rat(1) : d == 1 ? Rat(1, 2) : Rat(1, 3);
                require(t.coeff(c) == want, "Todd value table mismatch");
            }
        }
        require(top == Rat(1), "point part of the Todd cycle has degree != 1");
    }
}

// 7. degree of the top self-intersection equals n! times the polytope volume
void criterion_7() {
    struct Case {
        Fan fan;
        std::vector<Rat> coeffs;
        Rat expected;
    };
    std::vector<Case> cases;
    cases.push_back({p2(), {Rat(0), Rat(0), Rat(1)}, Rat(1)});
    cases.push_back({p2(), {Rat(1), Rat(1), Rat(1)}, Rat(9)});
    cases.push_back({p1p1(), {Rat(1), Rat(1), Rat(0), Rat(0)}, Rat(2)});
    cases.push_back({pn(3), {Rat(0), Rat(0), Rat(0), Rat(1)}, Rat(1)});
    cases.push_back({p1p1p1(), {Rat(1), Rat(1), Rat(1), Rat(0), Rat(0), Rat(0)}, Rat(6)});
    std::mt19937 rng(1007);
    for (const Case& c : cases) {
        const Fan& f = c.fan;
        int n = f.rank();
        QCartierDivisor d = divisor_from_ray_coefficients(f, c.coeffs);
        Rat vol = polytope_volume(polytope_of(d));
        ComplementChoice psi = ComplementChoice::from_inner_product(f, random_gram(n, rng));
        Cycle z = fundamental(f);
        for (int i = 0; i < n; ++i) z = intersect(d, z, psi);
        Int nfact(1);
        for (int i = 2; i <= n; ++i) nfact *= i;
        require(degree(z) == Rat(nfact) * vol, "degree != n! vol(P)");
        require(degree(z) == c.expected, "degree differs from the frozen oracle");
    }
}

// 8. signed simplex volume == closed form == recursive action, with sign
void criterion_8() {
    std::mt19937 rng(1008);
    std::vector<Fan> fans = {c2(), p2(), p112(), blowup_c2(), cn(3), pn(3), cn(4)};
    int done = 0;
    while (done < 100) {
        const Fan& f = fans[done % fans.size()];
        int n = f.rank();
        QCartierDivisor d = random_divisor(f, rng);
        std::vector<IVec> flag = random_generic_flag(f, rng);
        std::vector<ConeId> tops = f.cones_of_dim(n);
        ConeId sigma = tops[std::uniform_int_distribution<size_t>(0, tops.size() - 1)(rng)];
        Polynomial q = Polynomial::variable(0, 1);
        for (int i = 1; i < n; ++i) q *= Polynomial::variable(0, 1);
        try {
            Rat closed = flag_closed_form(q, {d}, sigma, flag);
            FlagCoefficient simplex = flag_simplex_coefficient(d, sigma, flag);
            ComplementChoice psi = ComplementChoice::from_flag(f, flag);
            Cycle z = fundamental(f);
            for (int i = 0; i < n; ++i) z = intersect(d, z, psi);
            require(simplex.value == closed, "simplex value != closed form");
            require(z.coeff(sigma) == closed, "recursive action != closed form");
            ++done;
        } catch (const MathError&) {
            // degenerate flag for this cone; resample
        }
    }
}

// 9. symbolic coefficients specialize to the closed form
void criterion_9() {
    std::mt19937 rng(1009);
    std::vector<Fan> fans = {p2(), p112(), blowup_c2(), pn(3)};
    int instances = 0;
    while (instances < 50) {
        const Fan& f = fans[instances % fans.size()];
        std::uniform_int_distribution<int> spick(1, 3);
        int s = spick(rng);
        std::vector<QCartierDivisor> ds;
        for (int i = 0; i < s; ++i) ds.push_back(random_divisor(f, rng));
        std::vector<ConeId> all;
        for (ConeId c = 0; c < f.num_cones(); ++c)
            if (f.cone(c).dim >= 1) all.push_back(c);
        ConeId sigma = all[std::uniform_int_distribution<size_t>(0, all.size() - 1)(rng)];
        int k = f.cone(sigma).dim;
        // a random homogeneous monomial of degree k in the divisors
        Polynomial q = Polynomial::constant(Rat(1), s);
        std::uniform_int_distribution<int> vpick(0, s - 1);
        for (int i = 0; i < k; ++i) q *= Polynomial::variable(vpick(rng), s);
        RationalFunction symbolic = symbolic_flag_coefficient(q, ds, sigma, f);
        int hits = 0, attempts = 0;
        while (hits < 3 && attempts < 200) {
            ++attempts;
            std::vector<IVec> flag = random_generic_flag(f, rng);
            try {
                Rat concrete = flag_closed_form(q, ds, sigma, flag);
                RVec w = flag_normal_coordinates(f, sigma, flag);
                require(symbolic.evaluate(w) == concrete,
                        "symbolic specialization != closed form");
                ++hits;
            } catch (const MathError&) {
                // degenerate normal; resample
            }
        }
        require(hits == 3, "could not sample three generic normals");
        ++instances;
    }
}

// 10. projection formula: randomized refinements plus the three case fixtures
void criterion_10() {
    std::mt19937 rng(1010);
    std::uniform_int_distribution<int> pick(-4, 4);
    std::vector<Fan> targets = {c2(), p2(), p1p1(), p112()};
    for (int t = 0; t < 100; ++t) {
        const Fan& target = targets[t % targets.size()];
        std::vector<ConeId> tops = target.maximal_cones();
        ConeId c = tops[std::uniform_int_distribution<size_t>(0, tops.size() - 1)(rng)];
        IVec rho(target.rank(), Int(0));
        for (int r : target.cone(c).rays)
            for (int i = 0; i < target.rank(); ++i) rho[i] += target.ray(r)[i];
        Fan refined = star_subdivision(target, rho);
        ToricMorphism f = ToricMorphism::build(IMat::identity(2), refined, target);
        IMat g = random_gram(2, rng);
        ComplementChoice psi = ComplementChoice::from_inner_product(target, g);
        ComplementChoice psi_src = ComplementChoice::from_inner_product(refined, g);
        QCartierDivisor d = random_divisor(target, rng);
        Cycle z = random_cycle(refined, rng);
        require(projection_formula_check(f, d, z, psi, psi_src).ok,
                "projection formula failed on a refinement");
    }

    // case (i): every facet drops codimension, both sides vanish
    {
        Fan cube = p1p1p1(), line = pn(1);
        IMat first(1, 3);
        first.at(0, 0) = 1;
        ToricMorphism f = ToricMorphism::build(first, cube, line);
        IMat one(1, 1);
        one.at(0, 0) = 1;
        ComplementChoice psi = ComplementChoice::from_inner_product(line, one);
        ComplementChoice psi_src = ComplementChoice::from_inner_product(cube, IMat::identity(3));
        QCartierDivisor d = divisor_from_ray_coefficients(line, {Rat(1), Rat(0)});
        ProjectionFormulaReport rep =
            projection_formula_check(f, d, fundamental(cube), psi, psi_src);
        require(rep.ok && rep.lhs.is_zero() && rep.rhs.is_zero(),
                "case (i) sides are not both zero");
    }
    // case (ii): exceptional cancellation on the blowup
    {
        Fan bl = blowup_c2(), quad = c2();
        ToricMorphism f = ToricMorphism::build(IMat::identity(2), bl, quad);
        ComplementChoice psi = ComplementChoice::from_inner_product(quad, IMat::identity(2));
        ComplementChoice psi_src = ComplementChoice::from_inner_product(bl, IMat::identity(2));
        QCartierDivisor d;
        d.fan = &quad;
        d.local_eq[quad.cone_id({0, 1})] = rv({1, 0});
        Cycle up = intersect(pullback_divisor(f, d), unit(bl, bl.cone_id({2})), psi_src);
        require(up.coeff(bl.cone_id({0, 2})) == -up.coeff(bl.cone_id({1, 2})) &&
                    up.coeff(bl.cone_id({0, 2})) != 0,
                "wall coefficients do not cancel");
        ProjectionFormulaReport rep =
            projection_formula_check(f, d, unit(bl, bl.cone_id({2})), psi, psi_src);
        require(rep.ok && rep.lhs.is_zero(), "case (ii) left side is not zero");
    }
    // case (iii): multiplicity matching for the degree-two cover of the line
    {
        Fan ray = halfline();
        IMat two(1, 1);
        two.at(0, 0) = 2;
        ToricMorphism f = ToricMorphism::build(two, ray, ray);
        IMat one(1, 1);
        one.at(0, 0) = 1;
        ComplementChoice psi = ComplementChoice::from_inner_product(ray, one);
        QCartierDivisor d;
        d.fan = &ray;
        d.local_eq[ray.cone_id({0})] = rv({1});
        ProjectionFormulaReport rep =
            projection_formula_check(f, d, fundamental(ray), psi, psi);
        require(rep.ok && rep.lhs == Rat(2) * unit(ray, ray.cone_id({0})),
                "case (iii) multiplicity mismatch");
    }
}

// 11. hard Lefschetz ranks: sampled grams on complete surfaces, exact
//     isomorphism in the orthogonal affine case
void criterion_11() {
    std::mt19937 rng(1011);
    for (const Fan& f : {pn(1), p2(), p1p1()}) {
        int n = f.rank();
        std::vector<Rat> a(f.num_rays(), Rat(1));
        for (int i = 0; 2 * i <= n; ++i) {
            bool ok = false;
            for (int attempt = 0; attempt < 3 && !ok; ++attempt)
                ok = lefschetz_injectivity(f, a, i, random_gram(n, rng)).injective;
            require(ok, "Lefschetz map not injective after 3 resamples");
        }
    }
    for (int n = 2; n <= 4; ++n) {
        Fan f = cn(n);
        std::vector<Rat> a(n, Rat(1));
        a[0] = Rat(3);
        for (int i = 0; 2 * i <= n; ++i) {
            LefschetzReport rep = lefschetz_injectivity(f, a, i, IMat::identity(n));
            require(rep.injective && rep.domain == rep.codomain && rep.rank == rep.domain,
                    "orthogonal affine case is not an isomorphism");
        }
    }
}

// 12. the frozen projective-plane intersection numbers
void criterion_12() {
    Fan f = p2();
    ComplementChoice psi = ComplementChoice::from_inner_product(f, IMat::identity(2));
    QCartierDivisor d3 = divisor_from_ray_coefficients(f, {Rat(0), Rat(0), Rat(1)});
    Cycle sq = intersect(d3, intersect(d3, fundamental(f), psi), psi);
    Cycle want(f);
    want.add(f.cone_id({0, 2}), Rat(1, 2));
    want.add(f.cone_id({1, 2}), Rat(1, 2));
    require(sq == want, "D3^2 differs from the hand value");
    require(degree(sq) == Rat(1), "deg D3^2 != 1");
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void()>>> criteria = {
        {"affine coordinate action (exhaustive, rank <= 4)", criterion_1},
        {"commutativity across 200 randomized divisor pairs", criterion_2},
        {"affine localization of coefficients (exhaustive)", criterion_3},
        {"ring presentation: generators vanish, reduce == direct (100/instance)", criterion_4},
        {"cyclic projective-space relations vanish", criterion_5},
        {"Todd coefficients are cyclic fractions (n <= 4)", criterion_6},
        {"degree law: deg(D^n) = n! vol(P) on 5 polytope divisors", criterion_7},
        {"simplex volume == closed form == recursion on 100 flag triples", criterion_8},
        {"symbolic coefficients specialize correctly (50 instances)", criterion_9},
        {"projection formula: 100 refinements + three case fixtures", criterion_10},
        {"hard Lefschetz ranks (sampled grams, <= 3 resamples)", criterion_11},
        {"projective-plane intersection numbers", criterion_12},
    };

    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        std::string verdict = "PASS";
        std::string detail;
        try {
            criteria[i].second();
        } catch (const Failure& f) {
            verdict = "FAIL";
            detail = " [" + f.what + "]";
        } catch (const std::exception& e) {
            verdict = "FAIL";
            detail = std::string(" [") + e.what() + "]";
        }
        if (verdict == "FAIL") ++failed;
        std::cout << verdict << " criterion " << (i + 1) << ": " << criteria[i].first << detail
                  << "\n";
    }
    return failed == 0 ? 0 : 1;
}

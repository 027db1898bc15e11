#include "toric/cycle_ring.hpp"

#include <algorithm>
#include <random>

namespace toric {

namespace {

void require_simplicial(const Fan& f) {
    if (!f.is_simplicial())
        throw MathError("NotSimplicial", "the cycle ring needs a simplicial fan");
}

std::vector<QCartierDivisor> ray_divisors(const Fan& f) {
    std::vector<QCartierDivisor> out;
    for (int i = 0; i < f.num_rays(); ++i) {
        std::vector<Rat> coeffs(f.num_rays(), Rat(0));
        coeffs[i] = 1;
        out.push_back(divisor_from_ray_coefficients(f, coeffs));
    }
    return out;
}

std::vector<int> support_of(const Polynomial::Exponents& e) {
    std::vector<int> s;
    for (size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0) s.push_back(static_cast<int>(i));
    return s;
}

bool contained_in_some_cone(const Fan& f, const std::vector<int>& rays) {
    for (ConeId c = 0; c < f.num_cones(); ++c) {
        const std::vector<int>& cr = f.cone(c).rays;
        if (std::includes(cr.begin(), cr.end(), rays.begin(), rays.end())) return true;
    }
    return false;
}

Polynomial monomial(const Polynomial::Exponents& e, const Rat& c) {
    Polynomial p(static_cast<int>(e.size()));
    p.add_term(e, c);
    return p;
}

} // namespace

Cycle evaluate_ray_polynomial(const Polynomial& p, const ComplementChoice& psi) {
    const Fan& f = psi.fan();
    require_simplicial(f);
    Cycle x(f);
    x.add(f.zero_cone(), Rat(1));
    return evaluate_polynomial(p, ray_divisors(f), x, psi);
}

Polynomial cycle_as_polynomial(const Cycle& z, const ComplementChoice& psi) {
    const Fan& f = psi.fan();
    require_simplicial(f);
    std::vector<QCartierDivisor> div = ray_divisors(f);
    Cycle x(f);
    x.add(f.zero_cone(), Rat(1));
    Polynomial out(f.num_rays());
    for (const auto& [sigma, coeff] : z.terms) {
        // the ray divisors of sigma meet properly, so their product hits
        // [V(sigma)] with a nonzero coefficient c_sigma
        Cycle w = x;
        for (int r : f.cone(sigma).rays) w = intersect(div[r], w, psi);
        Rat c = w.coeff(sigma);
        if (c == 0)
            throw MathError("InternalZero",
                            "proper ray product vanished on its own cone");
        Polynomial::Exponents e(f.num_rays(), 0);
        for (int r : f.cone(sigma).rays) e[r] = 1;
        out.add_term(e, coeff / c);
    }
    return out;
}

Cycle product(const Cycle& a, const Cycle& b, const ComplementChoice& psi) {
    return evaluate_ray_polynomial(cycle_as_polynomial(a, psi) * cycle_as_polynomial(b, psi),
                                   psi);
}

std::vector<Polynomial> stanley_reisner_generators(const Fan& fan) {
    int r = fan.num_rays();
    std::vector<Polynomial> out;
    // minimal non-faces: ray sets spanning no cone all of whose proper
    // subsets span cones
    for (unsigned mask = 1; mask < (1u << r); ++mask) {
        std::vector<int> rays;
        for (int i = 0; i < r; ++i)
            if (mask & (1u << i)) rays.push_back(i);
        if (contained_in_some_cone(fan, rays)) continue;
        bool minimal = true;
        for (size_t skip = 0; skip < rays.size() && minimal; ++skip) {
            std::vector<int> sub = rays;
            sub.erase(sub.begin() + static_cast<long>(skip));
            if (!contained_in_some_cone(fan, sub)) minimal = false;
        }
        if (!minimal) continue;
        Polynomial::Exponents e(r, 0);
        for (int i : rays) e[i] = 1;
        out.push_back(monomial(e, Rat(1)));
    }
    return out;
}

namespace {

RMat ray_pairing(const Fan& fan, const IMat& gram) {
    // <omega(v_i), v_j> with omega(v) = G^{-1} v: the metric the inner
    // product on M induces on N
    RMat gn = inverse(to_rat(gram));
    int r = fan.num_rays();
    RMat q(r, r);
    for (int i = 0; i < r; ++i) {
        RVec gi = mul(gn, to_rat(fan.ray(i)));
        for (int j = 0; j < r; ++j) q.at(i, j) = dot(gi, fan.ray(j));
    }
    return q;
}

} // namespace

std::vector<Polynomial> j_generators(const Fan& fan, const IMat& gram) {
    require_simplicial(fan);
    RMat q = ray_pairing(fan, gram);
    int r = fan.num_rays();
    std::vector<Polynomial> out;
    for (int j = 0; j < r; ++j) {
        Polynomial g(r);
        for (int i = 0; i < r; ++i) {
            Polynomial::Exponents e(r, 0);
            e[i] += 1;
            e[j] += 1;
            g.add_term(e, q.at(j, i));
        }
        out.push_back(g);
    }
    return out;
}

RingPresentation make_presentation(const Fan& fan, const IMat& gram) {
    require_simplicial(fan);
    RingPresentation p;
    p.fan = &fan;
    p.gram = gram;
    p.pairing = ray_pairing(fan, gram);
    p.stanley_reisner = stanley_reisner_generators(fan);
    p.quadrics = j_generators(fan, gram);
    return p;
}

Polynomial reduce(const Polynomial& p, const RingPresentation& pres) {
    const Fan& f = *pres.fan;
    int r = f.num_rays();
    if (p.nvars() != r) throw InputError("polynomial must be in one variable per ray");
    Polynomial work = p, done(r);
    while (!work.is_zero()) {
        auto [e, c] = *work.terms().begin();
        work.add_term(e, -c);
        std::vector<int> supp = support_of(e);
        if (!contained_in_some_cone(f, supp)) continue; // lies in I_Sigma
        int excess = 0;
        for (int i : supp) excess += e[i] - 1;
        if (excess == 0) {
            done.add_term(e, c);
            continue;
        }
        // rewrite Y_i Y_sigma via the matrix step W = -A^{-1} B U, taking the
        // lexicographically first repeated variable
        int i = -1;
        for (int s : supp)
            if (e[s] >= 2) {
                i = s;
                break;
            }
        int k = static_cast<int>(supp.size());
        std::vector<int> rest;
        for (int l = 0; l < r; ++l)
            if (!std::binary_search(supp.begin(), supp.end(), l)) rest.push_back(l);
        RMat a(k, k), b(k, static_cast<int>(rest.size()));
        for (int row = 0; row < k; ++row) {
            for (int col = 0; col < k; ++col) a.at(row, col) = pres.pairing.at(supp[row], supp[col]);
            for (size_t col = 0; col < rest.size(); ++col)
                b.at(row, static_cast<int>(col)) = pres.pairing.at(supp[row], rest[col]);
        }
        RMat w;
        try {
            w = mul(inverse(a), b);
        } catch (const MathError&) {
            throw MathError("SingularA",
                            "face pairing matrix is singular; inner product is degenerate");
        }
        int row = static_cast<int>(std::find(supp.begin(), supp.end(), i) - supp.begin());
        for (size_t col = 0; col < rest.size(); ++col) {
            Rat coeff = -w.at(row, static_cast<int>(col));
            if (coeff == 0) continue;
            Polynomial::Exponents ne = e;
            ne[i] -= 1;
            ne[rest[col]] += 1;
            work.add_term(ne, c * coeff);
        }
    }
    return done;
}

PresentationReport verify_presentation(const Fan& fan, const IMat& gram,
                                       const ComplementChoice& psi, unsigned seed,
                                       int battery) {
    PresentationReport rep;
    RingPresentation pres = make_presentation(fan, gram);
    auto complain = [&](const std::string& msg) {
        rep.ok = false;
        rep.mismatches.push_back(msg);
    };
    for (const Polynomial& g : pres.stanley_reisner)
        if (!evaluate_ray_polynomial(g, psi).is_zero())
            complain("Stanley-Reisner generator " + g.to_string("Y") + " is not zero");
    for (const Polynomial& g : pres.quadrics)
        if (!evaluate_ray_polynomial(g, psi).is_zero())
            complain("quadric generator " + g.to_string("Y") + " is not zero");

    std::mt19937 rng(seed);
    int r = fan.num_rays();
    std::uniform_int_distribution<int> coeff(-9, 9), nterms(1, 5), var(0, r - 1),
        deg(0, fan.rank() + 2);
    for (int t = 0; t < battery; ++t) {
        Polynomial p(r);
        int terms = nterms(rng);
        for (int j = 0; j < terms; ++j) {
            Polynomial::Exponents e(r, 0);
            int d = deg(rng);
            for (int s = 0; s < d; ++s) e[var(rng)] += 1;
            p.add_term(e, Rat(coeff(rng)));
        }
        if (evaluate_ray_polynomial(p, psi) != evaluate_ray_polynomial(reduce(p, pres), psi))
            complain("reduction changed the value of " + p.to_string("Y"));
    }
    return rep;
}

Cycle todd_cycle(const Fan& fan, const ComplementChoice& psi) {
    require_simplicial(fan);
    int n = fan.rank(), r = fan.num_rays();
    // Phi(x) = x / (1 - e^{-x}): invert the unit series (1 - e^{-x}) / x
    // = sum (-1)^k x^k / (k+1)!  exactly, modulo x^{n+1}
    RVec u(static_cast<size_t>(n) + 1);
    Rat fact(1);
    for (int k = 0; k <= n; ++k) {
        fact *= k + 1;
        u[k] = Rat(k % 2 == 0 ? 1 : -1) / fact;
    }
    RVec phi(static_cast<size_t>(n) + 1);
    phi[0] = 1;
    for (int k = 1; k <= n; ++k) {
        Rat s(0);
        for (int j = 1; j <= k; ++j) s += u[j] * phi[k - j];
        phi[k] = -s;
    }
    Polynomial total = Polynomial::constant(Rat(1), r);
    for (int i = 0; i < r; ++i) {
        Polynomial factor(r);
        for (int k = 0; k <= n; ++k) {
            Polynomial::Exponents e(r, 0);
            e[i] = k;
            factor.add_term(e, phi[k]);
        }
        total = (total * factor).truncated(n);
    }
    return evaluate_ray_polynomial(total, psi);
}

Rat q_fraction(const std::vector<int>& s, int m) {
    if (static_cast<int>(s.size()) >= m)
        throw InputError("the fraction is only defined for proper subsets");
    std::vector<bool> in(m, false);
    for (int i : s) {
        if (i < 0 || i >= m) throw InputError("index out of range");
        in[i] = true;
    }
    Rat out(1);
    for (int i = 0; i < m; ++i) {
        if (!in[i] || in[(i + m - 1) % m]) continue; // not the start of a component
        int len = 0;
        for (int j = i; in[j % m]; ++j) ++len;
        out /= len + 1;
    }
    return out;
}

Rat linear_span_fraction(const Fan& fan, ConeId sigma, const IMat& gram) {
    const Cone& c = fan.cone(sigma);
    if (c.dim == 0) return 1;
    if (c.dim == 1) return Rat(1, 2);
    if (c.dim != 2 || c.rays.size() != 2)
        throw MathError("Irrational", "solid angles are only computed for dimension <= 2");
    RMat gn = inverse(to_rat(gram));
    RVec v1 = to_rat(fan.ray(c.rays[0])), v2 = to_rat(fan.ray(c.rays[1]));
    Rat p12 = dot(mul(gn, v1), v2);
    Rat p11 = dot(mul(gn, v1), v1), p22 = dot(mul(gn, v2), v2);
    Rat c2 = p12 * p12 / (p11 * p22); // cos^2 of the angle
    bool neg = p12 < 0;
    // angle / 2 pi for the angles with rational cosine-squared in
    // {0, 1/4, 1/2, 3/4}: right angles and multiples of 30 and 45 degrees
    if (p12 == 0) return Rat(1, 4);
    if (c2 == Rat(1, 4)) return neg ? Rat(1, 3) : Rat(1, 6);
    if (c2 == Rat(1, 2)) return neg ? Rat(3, 8) : Rat(1, 8);
    if (c2 == Rat(3, 4)) return neg ? Rat(5, 12) : Rat(1, 12);
    throw MathError("Irrational", "angle is not a standard rational multiple of pi");
}

Cycle chern_cycle(const Fan& fan, const ComplementChoice& psi, int j) {
    int r = fan.num_rays();
    if (j < 0 || j > r) throw InputError("symmetric polynomial index out of range");
    Polynomial e(r);
    // j-th elementary symmetric polynomial
    std::vector<int> idx(j);
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == j) {
            Polynomial::Exponents ex(r, 0);
            for (int i : idx) ex[i] = 1;
            e.add_term(ex, Rat(1));
            return;
        }
        for (int i = start; i < r; ++i) {
            idx[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return evaluate_ray_polynomial(e, psi);
}

Cycle characteristic_class(const Polynomial& p, const ComplementChoice& psi) {
    return evaluate_ray_polynomial(p, psi);
}

LefschetzReport lefschetz_injectivity(const Fan& fan, const std::vector<Rat>& coeffs, int i,
                                      const IMat& gram) {
    require_simplicial(fan);
    int n = fan.rank();
    if (static_cast<int>(coeffs.size()) != fan.num_rays())
        throw InputError("one coefficient per ray required");
    for (const Rat& a : coeffs)
        if (a == 0) throw MathError("ZeroCoefficient", "all divisor coefficients must be nonzero");
    if (i < 0 || 2 * i > n) throw InputError("index must satisfy 0 <= i <= n/2");

    ComplementChoice psi = ComplementChoice::from_inner_product(fan, gram);
    QCartierDivisor omega = divisor_from_ray_coefficients(fan, coeffs);
    std::vector<ConeId> domain = fan.cones_of_dim(i), codomain = fan.cones_of_dim(n - i);

    LefschetzReport rep;
    rep.i = i;
    rep.domain = static_cast<int>(domain.size());
    rep.codomain = static_cast<int>(codomain.size());
    RMat mat(rep.codomain, rep.domain);
    for (int col = 0; col < rep.domain; ++col) {
        Cycle z(fan);
        z.add(domain[col], Rat(1));
        for (int step = 0; step < n - 2 * i; ++step) z = intersect(omega, z, psi);
        for (int row = 0; row < rep.codomain; ++row) mat.at(row, col) = z.coeff(codomain[row]);
    }
    rep.rank = rank(mat);
    rep.injective = rep.rank == rep.domain;
    return rep;
}

} // namespace toric

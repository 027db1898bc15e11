#include "toric/intersection.hpp"

#include <cassert>

namespace toric {

namespace {

void check_same_fan(const Fan* a, const Fan* b) {
    if (a == b) return;
    if (!a || !b || !(*a == *b))
        throw InputError("divisor, cycle, and complement choice must share a fan");
}

Rat factorial(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rat(f);
}

RVec restrict_to(const RMat& bt, const RVec& m) { return mul(bt, m); }

// Per-cone dual data for a simplicial cone sigma: the saturated basis B of
// span(sigma), sigma's rays in B coordinates, and the scaled dual vectors
// t_i spanning the extreme rays of the dual cone in M_sigma, normalized so
// vol(0, t_1, ..., t_k) = 1/k!.
struct DualChart {
    int k = 0;
    IMat b;  // n x k
    RMat bt; // k x n, restriction M -> M_sigma
    std::vector<RVec> t;
};

DualChart dual_chart(const Fan& f, ConeId sigma) {
    const Cone& c = f.cone(sigma);
    if (static_cast<int>(c.rays.size()) != c.dim)
        throw MathError("NotSimplicial", "closed forms require a simplicial cone");
    DualChart out;
    out.k = c.dim;
    out.b = basis_matrix(f.geometry(sigma).n_sigma);
    out.bt = transpose(to_rat(out.b));
    if (out.k == 0) return out;
    RMat rays(out.k, out.k);
    for (int j = 0; j < out.k; ++j) {
        auto x = solve_rational(to_rat(out.b), to_rat(f.ray(c.rays[j])));
        for (int i = 0; i < out.k; ++i) rays.at(i, j) = x.particular[i];
    }
    // dual basis: <u_i, v_j> = delta_ij, then rescale t_1 by the multiplicity
    // so the t-simplex has lattice volume exactly 1/k!
    RMat dual = inverse(transpose(rays));
    for (int i = 0; i < out.k; ++i) out.t.push_back(dual.col(i));
    Rat mult(f.multiplicity(sigma));
    for (auto& x : out.t[0]) x *= mult;
    return out;
}

void check_degree(const Polynomial& q, size_t ndiv, int k) {
    if (q.nvars() != static_cast<int>(ndiv))
        throw InputError("polynomial variable count must match the number of divisors");
    if (q.is_zero()) return;
    if (!q.is_homogeneous() || q.total_degree() != k)
        throw MathError("NotHomogeneous",
                        "polynomial must be homogeneous of degree equal to the cone dimension");
}

} // namespace

Cycle intersect(const QCartierDivisor& d, const Cycle& z, const ComplementChoice& psi) {
    check_same_fan(d.fan, z.fan);
    check_same_fan(z.fan, &psi.fan());
    const Fan& f = *z.fan;
    Cycle out(f);
    for (const auto& [sigma, c] : z.terms)
        for (ConeId tau : f.cones_over(sigma)) {
            RVec pm = psi.project(sigma, local_equation(d, tau));
            IVec lift = f.primitive_quotient_generator(tau, sigma);
            out.add(tau, c * dot(pm, lift));
        }
    return out;
}

bool intersects_properly(const QCartierDivisor& d, ConeId sigma) {
    const Fan& f = *d.fan;
    RVec m = local_equation(d, sigma);
    for (int r : f.cone(sigma).rays)
        if (dot(m, f.ray(r)) != 0) return false;
    return true;
}

Cycle proper_restriction_cycle(const QCartierDivisor& d, ConeId sigma) {
    if (!intersects_properly(d, sigma))
        throw MathError("NotProper", "divisor does not restrict to the subvariety");
    const Fan& f = *d.fan;
    Cycle out(f);
    // the local equations already lie in sigma-perp, which every projection
    // fixes, so the coefficients need no choice of complements
    for (ConeId tau : f.cones_over(sigma))
        out.add(tau, dot(local_equation(d, tau), f.primitive_quotient_generator(tau, sigma)));
    return out;
}

namespace {

Cycle apply_monomial(const Polynomial::Exponents& e, const std::vector<QCartierDivisor>& divisors,
                     Cycle z, const ComplementChoice& psi, bool reversed) {
    int s = static_cast<int>(divisors.size());
    for (int step = 0; step < s; ++step) {
        int i = reversed ? s - 1 - step : step;
        for (int k = 0; k < e[i]; ++k) z = intersect(divisors[i], z, psi);
    }
    return z;
}

} // namespace

Cycle evaluate_polynomial(const Polynomial& p, const std::vector<QCartierDivisor>& divisors,
                          const Cycle& z, const ComplementChoice& psi) {
    if (p.nvars() != static_cast<int>(divisors.size()))
        throw InputError("polynomial variable count must match the number of divisors");
    for (const auto& d : divisors) check_same_fan(d.fan, z.fan);
    check_same_fan(z.fan, &psi.fan());
    Cycle out(*z.fan);
    for (const auto& [e, c] : p.terms()) {
        Cycle w = apply_monomial(e, divisors, z, psi, false);
        assert(apply_monomial(e, divisors, z, psi, true) == w);
        out += c * w;
    }
    return out;
}

Rat localize_coefficient(ConeId tau, ConeId sigma, const std::vector<QCartierDivisor>& divisors,
                         const ComplementChoice& psi) {
    const Fan& f = psi.fan();
    for (const auto& d : divisors) check_same_fan(d.fan, &f);
    if (!f.is_face(sigma, tau))
        throw MathError("NotAFace", "the source cone must be a face of the target cone");
    int k = f.cone(tau).dim;
    int s = k - f.cone(sigma).dim;
    if (static_cast<int>(divisors.size()) != s)
        throw MathError("RankMismatch",
                        "number of divisors must equal the codimension gap");
    if (s == 0) return Rat(1);

    // coordinates on N_tau via the saturated basis of span(tau)
    IMat b = basis_matrix(f.geometry(tau).n_sigma);
    RMat br = to_rat(b);
    RMat bt = transpose(br);
    const std::vector<int>& tau_rays = f.cone(tau).rays;
    std::vector<IVec> local_rays;
    for (int r : tau_rays) {
        auto x = solve_integer(b, f.ray(r));
        if (!x) throw MathError("Internal", "ray escapes the saturated span of its cone");
        local_rays.push_back(*x);
    }
    std::vector<int> all(tau_rays.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    Fan local = Fan::build(k, local_rays, {all});

    // transport each face and its complement subspace into the local fan
    std::vector<std::vector<RVec>> bases(local.num_cones());
    auto to_global = [&](ConeId lc) {
        std::vector<int> rs;
        for (int i : local.cone(lc).rays) rs.push_back(tau_rays[i]);
        return f.cone_id(rs);
    };
    for (ConeId lc = 0; lc < local.num_cones(); ++lc)
        for (const RVec& v : psi.psi(to_global(lc))) bases[lc].push_back(restrict_to(bt, v));
    ComplementChoice local_psi = ComplementChoice::from_explicit(local, bases);

    ConeId local_sigma = 0, local_tau = 0;
    for (ConeId lc = 0; lc < local.num_cones(); ++lc) {
        if (to_global(lc) == sigma) local_sigma = lc;
        if (to_global(lc) == tau) local_tau = lc;
    }

    Cycle z(local);
    z.add(local_sigma, Rat(1));
    for (const auto& d : divisors) {
        QCartierDivisor ld;
        ld.fan = &local;
        ld.local_eq[local_tau] = restrict_to(bt, local_equation(d, tau));
        z = intersect(ld, z, local_psi);
    }
    return z.coeff(local_tau);
}

VolumeDecomposition dn_volume_decomposition(const QCartierDivisor& d, ConeId sigma,
                                            const ComplementChoice& psi) {
    const Fan& f = psi.fan();
    check_same_fan(d.fan, &f);
    int n = f.rank();
    if (f.cone(sigma).dim != n)
        throw MathError("NotMaximal", "volume decomposition needs a full-dimensional cone");
    RVec m = local_equation(d, sigma);

    std::vector<std::vector<ConeId>> chains;
    std::vector<ConeId> cur{sigma};
    auto descend = [&](auto&& self, ConeId c) -> void {
        if (f.cone(c).dim == 0) {
            chains.emplace_back(cur.rbegin(), cur.rend());
            return;
        }
        for (ConeId g : f.facets(c)) {
            cur.push_back(g);
            self(self, g);
            cur.pop_back();
        }
    };
    descend(descend, sigma);

    VolumeDecomposition out;
    out.total = 0;
    for (const auto& chain : chains) {
        VolumeTerm term;
        term.chain = chain;
        Rat prod(1);
        for (int i = 0; i + 1 <= n; ++i) {
            RVec pm = psi.project(chain[i], m);
            term.simplex.push_back(pm);
            prod *= dot(pm, f.primitive_quotient_generator(chain[i + 1], chain[i]));
        }
        term.simplex.push_back(psi.project(chain[n], m));
        term.sign = prod > 0 ? 1 : (prod < 0 ? -1 : 0);
        term.volume = lattice_volume(term.simplex);
        out.total += prod;
        out.terms.push_back(std::move(term));
    }
    return out;
}

RVec flag_normal_coordinates(const Fan& fan, ConeId sigma, const std::vector<IVec>& flag) {
    DualChart dc = dual_chart(fan, sigma);
    if (static_cast<int>(flag.size()) < dc.k)
        throw InputError("flag has fewer vectors than the cone dimension");
    if (dc.k == 0) return {};
    // <f_i, w> = 0 for i < k, <f_k, w> = 1, with w in span(sigma)
    RMat a(dc.k, dc.k);
    RVec rhs(dc.k, Rat(0));
    rhs[dc.k - 1] = 1;
    for (int i = 0; i < dc.k; ++i) {
        RVec fi = restrict_to(dc.bt, to_rat(flag[i]));
        for (int j = 0; j < dc.k; ++j) a.at(i, j) = fi[j];
    }
    auto sol = solve_rational(a, rhs);
    if (!sol.consistent || !sol.kernel.empty())
        throw MathError("FlagDegenerateAt", "flag is not generic for the cone");
    return sol.particular;
}

FlagCoefficient flag_simplex_coefficient(const QCartierDivisor& d, ConeId sigma,
                                         const std::vector<IVec>& flag) {
    const Fan& f = *d.fan;
    int n = f.rank();
    const Cone& c = f.cone(sigma);
    if (c.dim != n)
        throw MathError("NotMaximal", "the simplex formula needs a full-dimensional cone");
    if (static_cast<int>(c.rays.size()) != n)
        throw MathError("NotSimplicial", "the simplex formula needs a simplicial cone");
    if (static_cast<int>(flag.size()) != n) throw InputError("flag must list a full basis of M");

    // w with <f_i, w> = 0 for i < n and <f_n, w> = 1
    RMat a(n, n);
    RVec rhs(n, Rat(0));
    rhs[n - 1] = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a.at(i, j) = Rat(flag[i][j]);
    auto sol = solve_rational(a, rhs);
    if (!sol.consistent || !sol.kernel.empty())
        throw MathError("FlagDegenerateAt", "flag is not generic for the cone");
    RVec w = sol.particular;

    // dual basis u_i of the rays; the hyperplane through m parallel to the
    // flag's top proper subspace meets the dual ray of u_i at (mw/<u_i,w>) u_i
    RMat rays(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) rays.at(i, j) = Rat(f.ray(c.rays[j])[i]);
    RMat dual = inverse(transpose(rays));
    Rat mw = dot(local_equation(d, sigma), w);

    FlagCoefficient out;
    out.simplex.push_back(RVec(n, Rat(0)));
    int missed = 0;
    for (int i = 0; i < n; ++i) {
        RVec u = dual.col(i);
        Rat uw = dot(u, w);
        if (uw == 0) throw MathError("FlagDegenerateAt", "flag normal lies on a dual facet");
        Rat scale = mw / uw;
        if (scale < 0) ++missed;
        for (auto& x : u) x *= scale;
        out.simplex.push_back(std::move(u));
    }
    Rat vol = lattice_volume(out.simplex);
    out.value = factorial(n) * vol;
    if (missed % 2 == 1) out.value = -out.value;
    return out;
}

Rat flag_closed_form(const Polynomial& q, const std::vector<QCartierDivisor>& divisors,
                     ConeId sigma, const std::vector<IVec>& flag) {
    if (divisors.empty()) throw InputError("need at least one divisor");
    const Fan& f = *divisors[0].fan;
    for (const auto& d : divisors) check_same_fan(d.fan, &f);
    DualChart dc = dual_chart(f, sigma);
    check_degree(q, divisors.size(), dc.k);
    if (q.is_zero()) return Rat(0);
    if (dc.k == 0) return q.coeff(Polynomial::Exponents(q.nvars(), 0));
    RVec w = flag_normal_coordinates(f, sigma, flag);
    RVec vals;
    for (const auto& d : divisors)
        vals.push_back(dot(restrict_to(dc.bt, local_equation(d, sigma)), w));
    Rat den(1);
    for (const RVec& t : dc.t) den *= dot(t, w);
    if (den == 0) throw MathError("FlagDegenerateAt", "flag normal lies on a dual facet");
    return q.evaluate(vals) / den;
}

RationalFunction symbolic_flag_coefficient(const Polynomial& q,
                                           const std::vector<QCartierDivisor>& divisors,
                                           ConeId sigma, const Fan& fan) {
    for (const auto& d : divisors) check_same_fan(d.fan, &fan);
    DualChart dc = dual_chart(fan, sigma);
    check_degree(q, divisors.size(), dc.k);
    int k = dc.k;
    auto linear = [&](const RVec& coeffs) {
        Polynomial p(k);
        for (int j = 0; j < k; ++j)
            p += coeffs[j] * Polynomial::variable(j, k);
        return p;
    };
    if (q.is_zero() || k == 0) {
        Rat c = q.is_zero() ? Rat(0) : q.coeff(Polynomial::Exponents(q.nvars(), 0));
        return RationalFunction(Polynomial::constant(c, k), Polynomial::constant(Rat(1), k));
    }
    std::vector<Polynomial> lm;
    for (const auto& d : divisors)
        lm.push_back(linear(restrict_to(dc.bt, local_equation(d, sigma))));
    Polynomial num(k);
    for (const auto& [e, c] : q.terms()) {
        Polynomial term = Polynomial::constant(c, k);
        for (size_t i = 0; i < lm.size(); ++i) term = term * pow(lm[i], e[i]);
        num += term;
    }
    std::vector<Polynomial> den;
    for (const RVec& t : dc.t) den.push_back(linear(t));
    return RationalFunction(num, den);
}

} // namespace toric

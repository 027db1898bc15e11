#ifndef TORIC_INTERSECTION_HPP
#define TORIC_INTERSECTION_HPP

#include <vector>

#include "toric/complements.hpp"
#include "toric/divisor.hpp"
#include "toric/polynomial.hpp"

namespace toric {

// The fundamental action: D . [V(sigma)] = sum over cones tau covering sigma
// of <pi_sigma(m_tau), n~_{tau,sigma}> [V(tau)], extended linearly.  The
// coefficient pairs the psi-projection of tau's local equation against the
// canonical lift of the primitive generator of tau's image ray in N(sigma).
Cycle intersect(const QCartierDivisor& d, const Cycle& z, const ComplementChoice& psi);

// True when the local equation of d at sigma lies in sigma-perp, so d
// restricts to a divisor on V(sigma).
bool intersects_properly(const QCartierDivisor& d, ConeId sigma);

// d . [V(sigma)] for a properly intersecting divisor, computed without any
// choice of complements; agrees with intersect for every valid psi.
// Throws MathError("NotProper") otherwise.
Cycle proper_restriction_cycle(const QCartierDivisor& d, ConeId sigma);

// Evaluates p(E_1, ..., E_s) . z by repeated application of intersect; the
// result does not depend on the order of the factors (Commutativity), which
// is asserted in debug builds.
Cycle evaluate_polynomial(const Polynomial& p, const std::vector<QCartierDivisor>& divisors,
                          const Cycle& z, const ComplementChoice& psi);

// Coefficient of [V(tau)] in E_1 ... E_s . [V(sigma)] for sigma a face of tau
// with codimension gap s, computed entirely inside the affine fan of tau's
// faces in the lattice N_tau, with the complements transported by the
// restriction map.  Serves as an independent oracle against intersect.
Rat localize_coefficient(ConeId tau, ConeId sigma, const std::vector<QCartierDivisor>& divisors,
                         const ComplementChoice& psi);

// One complete flag of faces 0 = gamma_0 < ... < gamma_n = sigma together
// with its signed simplex: the chain's contribution to the coefficient of
// [V(sigma)] in D^n equals sign * n! * volume exactly.
struct VolumeTerm {
    std::vector<ConeId> chain;  // ascending, chain.front() = zero cone
    int sign = 0;               // sign of the chain product (0 for zero)
    std::vector<RVec> simplex;  // vertices pi_{gamma_i}(m), i = 0..n
    Rat volume;                 // lattice volume of the simplex
};

struct VolumeDecomposition {
    std::vector<VolumeTerm> terms;
    Rat total; // coefficient of [V(sigma)] in D^n . [X]
};

// Decomposes the coefficient of [V(sigma)] in D^n . [X] (sigma
// full-dimensional) as a signed sum of simplex volumes, one per complete
// flag of faces of sigma.
VolumeDecomposition dn_volume_decomposition(const QCartierDivisor& d, ConeId sigma,
                                            const ComplementChoice& psi);

// -- closed forms for the generic-flag action --------------------------------

struct FlagCoefficient {
    Rat value;                 // coefficient of [V(sigma)] in D^n . [X]
    std::vector<RVec> simplex; // witness: origin plus one vertex per dual ray
};

// For sigma full-dimensional and simplicial and the flag choice of
// complements: the coefficient is plus or minus n! times the volume of the
// simplex cut out by the facet hyperplanes of the dual cone and the
// hyperplane through m orthogonal to the flag normal; the sign counts the
// dual rays missed by that hyperplane.
FlagCoefficient flag_simplex_coefficient(const QCartierDivisor& d, ConeId sigma,
                                         const std::vector<IVec>& flag);

// Coordinates (in the saturated basis of span(sigma)) of the unique w in
// N_sigma with <f_i, w> = 0 for i < k and <f_k, w> = 1, k = dim sigma.
// Throws MathError("FlagDegenerateAt") when no such w exists.
RVec flag_normal_coordinates(const Fan& fan, ConeId sigma, const std::vector<IVec>& flag);

// Closed form for the coefficient of [V(sigma)] in q(E_1, ..., E_s) . [X]
// with the flag complements, sigma simplicial of dimension k and q
// homogeneous of degree k:  q(<m_1,w>, ..., <m_s,w>) / (<t_1,w> ... <t_k,w>).
Rat flag_closed_form(const Polynomial& q, const std::vector<QCartierDivisor>& divisors,
                     ConeId sigma, const std::vector<IVec>& flag);

// The same coefficient with the flag normal w kept symbolic: a rational
// function in the k coordinates of w on N_sigma.  Specializing w at
// flag_normal_coordinates reproduces flag_closed_form.
RationalFunction symbolic_flag_coefficient(const Polynomial& q,
                                           const std::vector<QCartierDivisor>& divisors,
                                           ConeId sigma, const Fan& fan);

} // namespace toric

#endif

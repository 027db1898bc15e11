#ifndef TORIC_CYCLE_RING_HPP
#define TORIC_CYCLE_RING_HPP

#include <string>
#include <vector>

#include "toric/intersection.hpp"

namespace toric {

// The ring structure on invariant cycles of a simplicial fan: the cycle
// group is a cyclic module over Q[Y_1, ..., Y_r] (Y_i acting as the i-th ray
// divisor), so cycles multiply through their polynomial representatives.

// Evaluates p(D_1, ..., D_r) . [X] for the ray divisors D_i.
Cycle evaluate_ray_polynomial(const Polynomial& p, const ComplementChoice& psi);

// Inverse of the module map on the cone basis: writes z as a polynomial
// supported on square-free face monomials Y_sigma, dividing each term by the
// (never-zero) coefficient of [V(sigma)] in the proper product of its ray
// divisors.  Throws MathError("InternalZero") if that coefficient vanishes.
Polynomial cycle_as_polynomial(const Cycle& z, const ComplementChoice& psi);

// Ring product: evaluate the product of the polynomial representatives.
Cycle product(const Cycle& a, const Cycle& b, const ComplementChoice& psi);

// Square-free monomials of the minimal ray sets spanning no cone.
std::vector<Polynomial> stanley_reisner_generators(const Fan& fan);

// One quadric per ray j:  sum_i <omega(v_j), v_i> Y_i Y_j,  where omega is
// the isomorphism N -> M defined by the inner product; each evaluates to the
// zero cycle under the matching inner-product complements.
std::vector<Polynomial> j_generators(const Fan& fan, const IMat& gram);

// Reduction engine for the inner-product presentation
// Z_*(X) = Q[Y_1...Y_r] / (I_Sigma + J).
struct RingPresentation {
    const Fan* fan = nullptr;
    IMat gram;
    RMat pairing; // r x r, entries <omega(v_i), v_j>
    std::vector<Polynomial> stanley_reisner;
    std::vector<Polynomial> quadrics;
};

RingPresentation make_presentation(const Fan& fan, const IMat& gram);

// Rewrites p modulo I_Sigma + J to a combination of face monomials,
// strictly decreasing the excess exponent at each step.
Polynomial reduce(const Polynomial& p, const RingPresentation& pres);

struct PresentationReport {
    bool ok = true;
    std::vector<std::string> mismatches;
};

// Checks that every presentation generator evaluates to the zero cycle and
// that reduction agrees with direct evaluation on a battery of random
// polynomials (degrees <= rank + 2, coefficients in [-9, 9]).
PresentationReport verify_presentation(const Fan& fan, const IMat& gram,
                                       const ComplementChoice& psi, unsigned seed = 0,
                                       int battery = 25);

// Evaluates prod_i Phi(D_i) . [X] with Phi(x) = x / (1 - e^{-x}) truncated
// beyond total degree rank(fan); exact rational coefficients throughout.
Cycle todd_cycle(const Fan& fan, const ComplementChoice& psi);

// prod 1/(|T|+1) over the cyclically consecutive components T of s inside
// {0, ..., m-1}; throws InputError when s is the full set.
Rat q_fraction(const std::vector<int>& s, int m);

// Fraction of the linear span of sigma lying inside sigma, measured by the
// metric the gram induces on N.  Exact for dim <= 1 and for two-dimensional
// cones whose angle is a standard rational multiple of pi; throws
// MathError("Irrational") otherwise.
Rat linear_span_fraction(const Fan& fan, ConeId sigma, const IMat& gram);

// j-th elementary symmetric polynomial in the ray divisors, on [X].
Cycle chern_cycle(const Fan& fan, const ComplementChoice& psi, int j);

// Arbitrary characteristic-class polynomial in the ray divisors, on [X].
Cycle characteristic_class(const Polynomial& p, const ComplementChoice& psi);

struct LefschetzReport {
    int i = 0;
    int domain = 0;   // number of cones of dimension i
    int codomain = 0; // number of cones of dimension n - i
    int rank = 0;
    bool injective = false;
};

// Exact rank of multiplication by (sum_j a_j D_j)^(n-2i) from Z_{n-i} to Z_i
// in the cone bases, with the inner-product complements of the given gram.
LefschetzReport lefschetz_injectivity(const Fan& fan, const std::vector<Rat>& coeffs, int i,
                                      const IMat& gram);

} // namespace toric

#endif

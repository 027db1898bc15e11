#ifndef TORIC_MORPHISM_HPP
#define TORIC_MORPHISM_HPP

#include <vector>

#include "toric/complements.hpp"
#include "toric/divisor.hpp"
#include "toric/fan.hpp"

namespace toric {

// A lattice map phi: N' -> N carrying every cone of the source fan into some
// cone of the target fan, with the minimal containing cones precomputed.
class ToricMorphism {
public:
    // Validates the shape of phi and the cone-image condition; throws
    // MathError("ConeNotMapped") naming the first offending source cone.
    static ToricMorphism build(const IMat& phi, const Fan& source, const Fan& target);

    const IMat& phi() const { return phi_; }
    const Fan& source() const { return *source_; }
    const Fan& target() const { return *target_; }

    // the minimal cone of the target fan containing phi(source cone)
    ConeId image_cone(ConeId src) const { return image_[src]; }

    RVec map_point(const RVec& x) const;   // phi(x)
    RVec pullback_form(const RVec& m) const; // phi^T(m), the induced map on M

private:
    ToricMorphism() = default;

    IMat phi_;
    const Fan* source_ = nullptr; // not owned; must outlive the morphism
    const Fan* target_ = nullptr;
    std::vector<ConeId> image_;
};

enum class Properness { Yes, No, Undecided };

struct PropernessReport {
    Properness value = Properness::Undecided;
    RVec witness; // for "No": a point of phi^{-1}|target| outside |source|
};

// Sound but restricted properness test (phi^{-1}|target| = |source|):
//   yes  for square nonsingular phi whose source exactly covers the
//        preimage of every maximal target cone (facet-matching check),
//        and when both fans pass the restricted completeness test;
//   no   when a support-mismatch witness point is found;
//   undecided otherwise.
PropernessReport is_proper_restricted(const ToricMorphism& f);

struct PushforwardEntry {
    bool zero = false;    // codimension drops, so the class dies
    ConeId target = -1;   // otherwise: the image cone ...
    Int multiplicity = 0; // ... with the lattice index [M'(s') : phi^*(M(s))]
};

PushforwardEntry pushforward_entry(const ToricMorphism& f, ConeId src);

// Linear extension of the entries; requires is_proper_restricted = yes,
// else throws MathError("NotProper").
Cycle pushforward(const ToricMorphism& f, const Cycle& z);

// Local equation on each maximal source cone is phi^T of the local equation
// on any maximal target cone over its image.
QCartierDivisor pullback_divisor(const ToricMorphism& f, const QCartierDivisor& d);

// Replaces every cone containing rho by the joins of rho with the facets not
// containing it.  rho must lie in the support (MathError("RayOutsideSupport"));
// subdividing at an existing ray of a simplicial fan returns an equal fan.
Fan star_subdivision(const Fan& fan, const IVec& rho);

// Repeated star subdivision at rays of minimal-dimension non-simplicial
// cones; throws MathError("CannotSimplicialize") past max_steps.
Fan simplicialize(const Fan& fan, int max_steps = 64);

// E_1 ... E_k . [X] on a possibly non-simplicial fan: pull the divisors back
// to a simplicial star-subdivision refinement, intersect there with the
// inner-product complements of the same gram, and push the result forward.
Cycle product_on_nonsimplicial(const Fan& fan, const std::vector<QCartierDivisor>& divisors,
                               const IMat& gram);

struct CompatibilityReport {
    bool ok = true;
    ConeId source_cone = -1; // first pair violating phi^*(Psi(s)) in Psi'(s')
    ConeId target_cone = -1;
};

// Checks phi^*(Psi(sigma)) subset of Psi'(sigma') whenever phi maps sigma'
// into sigma with equal codimension (the pushforward-compatibility hypothesis
// of the projection formula).
CompatibilityReport check_pushforward_compatible(const ComplementChoice& psi,
                                                 const ComplementChoice& psi_source,
                                                 const ToricMorphism& f);

struct ProjectionFormulaReport {
    bool ok = false;
    Cycle lhs; // f_*(f^*(D) . z)
    Cycle rhs; // D . f_*(z)
};

// Requires compatibility (InputError("IncompatibleAt ...")) and restricted
// properness; computes both sides exactly.
ProjectionFormulaReport projection_formula_check(const ToricMorphism& f,
                                                 const QCartierDivisor& d, const Cycle& z,
                                                 const ComplementChoice& psi,
                                                 const ComplementChoice& psi_source);

} // namespace toric

#endif

#ifndef TORIC_COMPLEMENTS_HPP
#define TORIC_COMPLEMENTS_HPP

#include <vector>

#include "toric/fan.hpp"

namespace toric {

enum class ComplementKind { InnerProduct, Flag, Explicit };

// For every cone sigma, a subspace Psi(sigma) of M tensor Q complementary to
// M(sigma) = M intersect sigma-perp.  Psi determines the projection
// pi_sigma : M_Q -> M(sigma)_Q along Psi(sigma) that drives all intersection
// coefficients.
class ComplementChoice {
public:
    ComplementChoice() = default; // empty; assign from a factory before use

    // Psi(sigma) = orthogonal complement of M(sigma) under the given inner
    // product on M (symmetric positive definite).
    static ComplementChoice from_inner_product(const Fan& fan, const IMat& gram);

    // Psi(sigma) = span(f_1, ..., f_{dim sigma}) for a fixed basis f of M_Q.
    // Requires the flag to be generic: F_k meets every M(sigma) trivially.
    static ComplementChoice from_flag(const Fan& fan, const std::vector<IVec>& flag);

    // Explicit bases, indexed by cone id.
    static ComplementChoice from_explicit(const Fan& fan,
                                          const std::vector<std::vector<RVec>>& psi_bases);

    ComplementKind kind() const { return kind_; }
    int rank() const { return rank_; }

    const std::vector<RVec>& psi(ConeId c) const { return psi_[c]; }
    // n x n matrix of pi_sigma: image M(sigma)_Q, kernel Psi(sigma)
    const RMat& projection(ConeId c) const { return proj_[c]; }
    RVec project(ConeId c, const RVec& m) const { return mul(proj_[c], m); }

    // The induced map on quotients M_tau -> M(sigma)_tau for sigma a face of
    // tau: project any representative; the result is well defined mod tau-perp.
    RVec project_between(ConeId sigma, ConeId tau, const RVec& m) const;

    const Fan& fan() const { return *fan_; }

    // construction data, kept for serialization
    const IMat& gram() const;
    const std::vector<IVec>& flag() const;

private:
    static ComplementChoice finish(const Fan& fan, ComplementKind kind,
                                   std::vector<std::vector<RVec>> psi);

    ComplementKind kind_ = ComplementKind::Explicit;
    const Fan* fan_ = nullptr; // not owned; must outlive the choice
    int rank_ = 0;
    std::vector<std::vector<RVec>> psi_;
    std::vector<RMat> proj_;
    IMat gram_;
    std::vector<IVec> flag_;
};

} // namespace toric

#endif

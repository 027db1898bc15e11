#ifndef TORIC_FAN_HPP
#define TORIC_FAN_HPP

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "toric/linalg.hpp"

namespace toric {

using ConeId = int;

struct Cone {
    std::vector<int> rays; // sorted indices of extremal rays
    int dim = 0;
    bool maximal = false;
};

// Per-cone lattice data: N_sigma, the chart for N(sigma) = N/N_sigma,
// an integer basis of M(sigma) = M intersect sigma-perp, and the
// multiplicity [N_sigma : Z-span of the rays].
struct ConeGeometry {
    LatticeBasis n_sigma;
    QuotientChart quotient;
    std::vector<IVec> m_perp;
    Int multiplicity;
};

// -- low-level cone machinery on generator lists ---------------------------

// Primitive facet-support vectors of cone(gens) within its linear span:
// u with <u, g> >= 0 for all generators, zero on a facet.  Brute-force
// double description over (dim-1)-subsets of the generators.
std::vector<IVec> cone_supports(const std::vector<IVec>& gens, int ambient);

bool cone_is_pointed(const std::vector<IVec>& gens, const std::vector<IVec>& supports,
                     int ambient);

// Indices of generators spanning 1-dimensional faces.
std::vector<int> extremal_generators(const std::vector<IVec>& gens,
                                     const std::vector<IVec>& supports, int ambient);

bool cone_contains(const std::vector<IVec>& gens, const std::vector<IVec>& supports,
                   int ambient, const RVec& x);

// Saturated basis of span(gens) intersect Z^n; index_out receives
// [saturation : Z-span of gens].
LatticeBasis span_saturation(const std::vector<IVec>& gens, int ambient, Int* index_out);

// -- the fan ----------------------------------------------------------------

class Fan;

struct StarFan {
    std::shared_ptr<Fan> fan;
    QuotientChart chart; // chart of N(sigma) used for the quotient
    // parent cone id -> cone id in the star fan, for every cone >= sigma
    std::map<ConeId, ConeId> image;
};

class Fan {
public:
    // Validates everything: primitive distinct rays, strong convexity,
    // extremality of listed rays, and the pairwise face-intersection axiom.
    static Fan build(int rank, std::vector<IVec> rays,
                     std::vector<std::vector<int>> maximal_cones);

    int rank() const { return rank_; }
    int num_rays() const { return static_cast<int>(rays_.size()); }
    const IVec& ray(int i) const { return rays_[i]; }
    const std::vector<IVec>& rays() const { return rays_; }

    int num_cones() const { return static_cast<int>(cones_.size()); }
    const Cone& cone(ConeId c) const { return cones_[c]; }
    ConeId zero_cone() const { return 0; }
    std::optional<ConeId> find_cone(std::vector<int> ray_set) const;
    // id of the cone spanned by ray_set; throws if absent
    ConeId cone_id(std::vector<int> ray_set) const;

    std::vector<ConeId> maximal_cones() const;
    std::vector<ConeId> cones_of_dim(int d) const;

    // tau <= sigma iff rays(tau) subset rays(sigma) (valid fans only)
    bool is_face(ConeId tau, ConeId sigma) const;
    std::vector<ConeId> faces(ConeId sigma) const;  // all faces incl. sigma
    std::vector<ConeId> facets(ConeId sigma) const; // codim-1 faces
    const std::vector<ConeId>& cones_over(ConeId sigma) const;
    ConeId a_maximal_over(ConeId sigma) const;

    const ConeGeometry& geometry(ConeId c) const;
    const std::vector<IVec>& supports(ConeId c) const;
    Int multiplicity(ConeId c) const { return geometry(c).multiplicity; }

    bool is_simplicial() const;
    bool is_smooth() const;

    enum class Completeness { Yes, No, Undecided };
    // Restricted criterion; sound for the fan classes used here.
    Completeness completeness() const;

    bool contains_point(ConeId c, const RVec& x) const;
    // minimal cone containing x, if x is in the support
    std::optional<ConeId> cone_containing(const RVec& x) const;

    // Lift into N_tau of the primitive generator of the image ray of tau in
    // N(sigma); requires sigma a facet of tau.
    IVec primitive_quotient_generator(ConeId tau, ConeId sigma) const;

    // The quotient fan Star(sigma) in N(sigma).
    StarFan star(ConeId sigma) const;

    bool operator==(const Fan& o) const { return rank_ == o.rank_ && rays_ == o.rays_ && same_cones(o); }

private:
    Fan() = default;
    bool same_cones(const Fan& o) const;

    int rank_ = 0;
    std::vector<IVec> rays_;
    std::vector<Cone> cones_; // sorted by (dim, ray set)
    std::map<std::vector<int>, ConeId> by_rays_;
    std::vector<std::vector<ConeId>> over_; // cones_over table
    std::vector<std::vector<IVec>> supports_;

    mutable std::map<ConeId, ConeGeometry> geom_; // lazy cache
};

} // namespace toric

#endif

#ifndef TORIC_DIVISOR_HPP
#define TORIC_DIVISOR_HPP

#include <map>
#include <vector>

#include "toric/fan.hpp"

namespace toric {

// Q-Cartier divisor given by local equations on the maximal cones: m_sigma is
// a coset representative in M tensor Q, well defined modulo sigma-perp.  The
// sign convention is that the character of m_sigma cuts out D itself.
struct QCartierDivisor {
    const Fan* fan = nullptr;
    std::map<ConeId, RVec> local_eq; // key: every maximal cone
};

// Formal Q-combination of invariant cycles [V(sigma)].
struct Cycle {
    const Fan* fan = nullptr;
    std::map<ConeId, Rat> terms;

    Cycle() = default;
    explicit Cycle(const Fan& f) : fan(&f) {}

    void add(ConeId c, const Rat& q) {
        if (q == 0) return;
        Rat& t = terms[c];
        t += q;
        if (t == 0) terms.erase(c);
    }
    bool is_zero() const { return terms.empty(); }
    Rat coeff(ConeId c) const {
        auto it = terms.find(c);
        return it == terms.end() ? Rat(0) : it->second;
    }
    // true if all terms live in a single dimension (vacuously for 0)
    bool pure(int* dim_out = nullptr) const;

    Cycle& operator+=(const Cycle& o);
    Cycle& operator*=(const Rat& q);
    bool operator==(const Cycle& o) const { return terms == o.terms; }
};

Cycle operator+(Cycle a, const Cycle& b);
Cycle operator*(const Rat& q, Cycle z);

struct LatticePolytope {
    std::vector<RVec> vertices; // exactly the extreme points, sorted
    int dim = 0;
};

// Throws AgreementViolation naming the first bad pair of maximal cones.
void validate_divisor(const QCartierDivisor& d);

// m_sigma for any maximal sigma over tau; well defined modulo tau-perp.
RVec local_equation(const QCartierDivisor& d, ConeId tau);

// [D] = sum over rays of <m_rho, v_rho> [V(rho)]
Cycle divisor_cycle(const QCartierDivisor& d);

// Simplicial fans only: solves <m_sigma, v_i> = coeff(rho_i) on each maximal
// cone, taking the representative in the span of the cone's rays.
QCartierDivisor divisor_from_ray_coefficients(const Fan& fan, const std::vector<Rat>& coeffs);

// Convex hull of the -m_sigma.  Requires a complete fan and throws
// CorrespondenceFailed unless the -m_sigma are distinct vertices of the hull.
LatticePolytope polytope_of(const QCartierDivisor& d);

// Volume of a simplex normalized so a basis of the induced lattice in the
// affine span gives volume 1/k!.  Degenerate input gives 0.
Rat lattice_volume(const std::vector<RVec>& simplex);

// Exact volume of a full-dimensional polytope; 0 when lower-dimensional.
Rat polytope_volume(const LatticePolytope& p);

// Sum of coefficients of a cycle supported in dimension 0 (maximal cones).
Rat degree(const Cycle& z);

// -- exact convex geometry helpers ------------------------------------------

bool in_convex_hull(const RVec& p, const std::vector<RVec>& points);
std::vector<RVec> convex_hull_vertices(const std::vector<RVec>& points);
// decomposition into simplices (lists of affinely independent points),
// coning from the lexicographically smallest vertex
std::vector<std::vector<RVec>> triangulate_polytope(const std::vector<RVec>& points);

} // namespace toric

#endif

#ifndef TORIC_LINALG_HPP
#define TORIC_LINALG_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "toric/error.hpp"

namespace toric {

// All arithmetic in the library is exact: arbitrary-precision integers and
// reduced rationals.  There is no floating point anywhere.
using Int = mpz_class;
using Rat = mpq_class;
using IVec = std::vector<Int>;
using RVec = std::vector<Rat>;

std::string rat_to_string(const Rat& q);
Rat rat_from_string(const std::string& s);

struct IMat {
    int rows = 0, cols = 0;
    std::vector<Int> a; // row-major

    IMat() = default;
    IMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    static IMat identity(int n);

    Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    IVec row(int i) const;
    IVec col(int j) const;
    bool operator==(const IMat&) const = default;
};

struct RMat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    RMat() = default;
    RMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    static RMat identity(int n);

    Rat& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rat& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    RVec row(int i) const;
    RVec col(int j) const;
    bool operator==(const RMat&) const = default;
};

IMat mul(const IMat& A, const IMat& B);
RMat mul(const RMat& A, const RMat& B);
IVec mul(const IMat& A, const IVec& x);
RVec mul(const RMat& A, const RVec& x);
IMat transpose(const IMat& A);
RMat transpose(const RMat& A);
RMat to_rat(const IMat& A);
RVec to_rat(const IVec& v);

Int det(const IMat& A);
Rat det(const RMat& A);

// Exact inverse; throws MathError("Singular") if not invertible.
RMat inverse(const RMat& A);

Int dot(const IVec& x, const IVec& y);
Rat dot(const RVec& x, const RVec& y);
Rat dot(const RVec& x, const IVec& y);

// gcd of the absolute values of the entries (0 for the zero vector)
Int content(const IVec& v);
// v / content(v); the zero vector is returned unchanged
IVec primitivize(const IVec& v);
bool is_zero(const IVec& v);
bool is_zero(const RVec& v);
// clears denominators and divides by content
IVec primitive_int(const RVec& v);

struct HnfResult {
    IMat H; // row echelon, positive pivots, zeros below each pivot
    IMat U; // unimodular, U*A = H
};

// Row-style Hermite normal form.  Pivots are chosen with minimal absolute
// value to bound coefficient growth.
HnfResult hermite_normal_form(const IMat& A);

struct SnfResult {
    IMat S; // diagonal, d1 | d2 | ..., nonnegative
    IMat U, V; // unimodular, U*A*V = S
};

SnfResult smith_normal_form(const IMat& A);

struct LinearSolution {
    bool consistent = false;
    RVec particular;          // one solution of A x = b (when consistent)
    std::vector<RVec> kernel; // basis of the null space of A
};

// Exact Gaussian elimination.  Always fills in the kernel basis.
LinearSolution solve_rational(const RMat& A, const RVec& b);

// One integer solution of A x = b, if any exists.
std::optional<IVec> solve_integer(const IMat& A, const IVec& b);

// Basis of { x : A x = 0 } over Q.
std::vector<RVec> rat_kernel(const RMat& A);
// Integer basis of the saturated lattice { x in Z^n : A x = 0 }.
std::vector<IVec> int_kernel(const IMat& A);

int rank(const RMat& A);

struct LatticeBasis {
    int ambient_rank = 0;
    std::vector<IVec> vectors; // linearly independent over Q

    int rank() const { return static_cast<int>(vectors.size()); }
};

// Matrix whose columns are the basis vectors.
IMat basis_matrix(const LatticeBasis& b);

// [sup : sub] for sub a finite-index sublattice of sup (same rank).
// Throws on rank mismatch or when sub is not contained in sup.
Int lattice_index(const LatticeBasis& sub, const LatticeBasis& sup);

struct SaturationResult {
    LatticeBasis basis; // basis of the saturation Q*L  intersect  Z^n
    Int index;          // [saturation : L]
};

SaturationResult saturate(const LatticeBasis& sub);

// Coordinates on the quotient Z^n / L for a saturated sublattice L.
// projection o section = identity on Z^(n-k); kernel(projection) = L.
struct QuotientChart {
    int ambient_rank = 0;
    int quotient_rank = 0;
    IMat projection; // (n-k) x n
    IMat section;    // n x (n-k)

    IVec project(const IVec& x) const { return mul(projection, x); }
    RVec project(const RVec& x) const;
    IVec lift(const IVec& y) const { return mul(section, y); }
};

// Requires sub saturated unless saturate_first is set, in which case the
// chart is built for the saturation.
QuotientChart quotient_coordinates(int ambient_rank, const LatticeBasis& sub,
                                   bool saturate_first = false);

} // namespace toric

#endif

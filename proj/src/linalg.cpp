#include "toric/linalg.hpp"

#include <algorithm>
#include <cstdlib>

namespace toric {

std::string rat_to_string(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw InputError("empty rational");
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
            throw InputError("malformed rational \"" + s + "\"");
    }
    Rat q;
    if (q.set_str(s, 10) != 0) throw InputError("malformed rational \"" + s + "\"");
    if (q.get_den() == 0) throw InputError("zero denominator in \"" + s + "\"");
    q.canonicalize();
    return q;
}

IMat IMat::identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RMat RMat::identity(int n) {
    RMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IVec IMat::row(int i) const {
    IVec r(cols);
    for (int j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
}

IVec IMat::col(int j) const {
    IVec c(rows);
    for (int i = 0; i < rows; ++i) c[i] = at(i, j);
    return c;
}

RVec RMat::row(int i) const {
    RVec r(cols);
    for (int j = 0; j < cols; ++j) r[j] = at(i, j);
    return r;
}

RVec RMat::col(int j) const {
    RVec c(rows);
    for (int i = 0; i < rows; ++i) c[i] = at(i, j);
    return c;
}

IMat mul(const IMat& A, const IMat& B) {
    IMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            if (A.at(i, k) == 0) continue;
            for (int j = 0; j < B.cols; ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
        }
    return C;
}

RMat mul(const RMat& A, const RMat& B) {
    RMat C(A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            if (A.at(i, k) == 0) continue;
            for (int j = 0; j < B.cols; ++j) C.at(i, j) += A.at(i, k) * B.at(k, j);
        }
    return C;
}

IVec mul(const IMat& A, const IVec& x) {
    IVec y(A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) y[i] += A.at(i, j) * x[j];
    return y;
}

RVec mul(const RMat& A, const RVec& x) {
    RVec y(A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) y[i] += A.at(i, j) * x[j];
    return y;
}

IMat transpose(const IMat& A) {
    IMat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

RMat transpose(const RMat& A) {
    RMat T(A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

RMat to_rat(const IMat& A) {
    RMat B(A.rows, A.cols);
    for (size_t i = 0; i < A.a.size(); ++i) B.a[i] = Rat(A.a[i]);
    return B;
}

RVec to_rat(const IVec& v) {
    RVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = Rat(v[i]);
    return w;
}

Rat det(const RMat& A) {
    if (A.rows != A.cols) throw MathError("Shape", "determinant of non-square matrix");
    RMat M = A;
    int n = M.rows;
    Rat d = 1;
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (M.at(r, c) != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != c) {
            for (int j = 0; j < n; ++j) std::swap(M.at(piv, j), M.at(c, j));
            d = -d;
        }
        d *= M.at(c, c);
        for (int r = c + 1; r < n; ++r) {
            if (M.at(r, c) == 0) continue;
            Rat f = M.at(r, c) / M.at(c, c);
            for (int j = c; j < n; ++j) M.at(r, j) -= f * M.at(c, j);
        }
    }
    return d;
}

Int det(const IMat& A) {
    Rat d = det(to_rat(A));
    return d.get_num(); // denominator is 1 for integer input
}

RMat inverse(const RMat& A) {
    if (A.rows != A.cols) throw MathError("Shape", "inverse of non-square matrix");
    int n = A.rows;
    RMat M = A, X = RMat::identity(n);
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (M.at(r, c) != 0) { piv = r; break; }
        if (piv < 0) throw MathError("Singular", "matrix is not invertible");
        if (piv != c)
            for (int j = 0; j < n; ++j) {
                std::swap(M.at(piv, j), M.at(c, j));
                std::swap(X.at(piv, j), X.at(c, j));
            }
        Rat p = M.at(c, c);
        for (int j = 0; j < n; ++j) {
            M.at(c, j) /= p;
            X.at(c, j) /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || M.at(r, c) == 0) continue;
            Rat f = M.at(r, c);
            for (int j = 0; j < n; ++j) {
                M.at(r, j) -= f * M.at(c, j);
                X.at(r, j) -= f * X.at(c, j);
            }
        }
    }
    return X;
}

Int dot(const IVec& x, const IVec& y) {
    Int s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

Rat dot(const RVec& x, const RVec& y) {
    Rat s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

Rat dot(const RVec& x, const IVec& y) {
    Rat s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * Rat(y[i]);
    return s;
}

Int content(const IVec& v) {
    Int g = 0;
    for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

IVec primitivize(const IVec& v) {
    Int g = content(v);
    if (g == 0 || g == 1) return v;
    IVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
    return w;
}

bool is_zero(const IVec& v) {
    for (const Int& x : v)
        if (x != 0) return false;
    return true;
}

bool is_zero(const RVec& v) {
    for (const Rat& x : v)
        if (x != 0) return false;
    return true;
}

IVec primitive_int(const RVec& v) {
    Int lcm = 1;
    for (const Rat& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    IVec w(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rat s = v[i] * Rat(lcm);
        w[i] = s.get_num();
    }
    return primitivize(w);
}

namespace {

// row r of (M, U) -> r += f * row s
void add_row(IMat& M, IMat& U, int r, int s, const Int& f) {
    for (int j = 0; j < M.cols; ++j) M.at(r, j) += f * M.at(s, j);
    for (int j = 0; j < U.cols; ++j) U.at(r, j) += f * U.at(s, j);
}

void swap_rows(IMat& M, IMat& U, int r, int s) {
    for (int j = 0; j < M.cols; ++j) std::swap(M.at(r, j), M.at(s, j));
    for (int j = 0; j < U.cols; ++j) std::swap(U.at(r, j), U.at(s, j));
}

void negate_row(IMat& M, IMat& U, int r) {
    for (int j = 0; j < M.cols; ++j) M.at(r, j) = -M.at(r, j);
    for (int j = 0; j < U.cols; ++j) U.at(r, j) = -U.at(r, j);
}

} // namespace

HnfResult hermite_normal_form(const IMat& A) {
    IMat H = A;
    IMat U = IMat::identity(A.rows);
    int r = 0;
    for (int c = 0; c < H.cols && r < H.rows; ++c) {
        // Euclid the column below row r down to one nonzero entry,
        // repeatedly reducing by the minimal-absolute-value pivot.
        for (;;) {
            int piv = -1;
            for (int i = r; i < H.rows; ++i) {
                if (H.at(i, c) == 0) continue;
                if (piv < 0 || mpz_cmpabs(H.at(i, c).get_mpz_t(), H.at(piv, c).get_mpz_t()) < 0)
                    piv = i;
            }
            if (piv < 0) break; // column is zero below r
            bool done = true;
            for (int i = r; i < H.rows; ++i) {
                if (i == piv || H.at(i, c) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), H.at(i, c).get_mpz_t(), H.at(piv, c).get_mpz_t());
                add_row(H, U, i, piv, -q);
                if (H.at(i, c) != 0) done = false;
            }
            if (done) {
                if (piv != r) swap_rows(H, U, piv, r);
                break;
            }
        }
        if (r < H.rows && H.at(r, c) != 0) {
            if (H.at(r, c) < 0) negate_row(H, U, r);
            ++r;
        }
    }
    return {H, U};
}

namespace {

void add_col(IMat& M, IMat& V, int c, int s, const Int& f) {
    for (int i = 0; i < M.rows; ++i) M.at(i, c) += f * M.at(i, s);
    for (int i = 0; i < V.rows; ++i) V.at(i, c) += f * V.at(i, s);
}

void swap_cols(IMat& M, IMat& V, int c, int s) {
    for (int i = 0; i < M.rows; ++i) std::swap(M.at(i, c), M.at(i, s));
    for (int i = 0; i < V.rows; ++i) std::swap(V.at(i, c), V.at(i, s));
}

void negate_col(IMat& M, IMat& V, int c) {
    for (int i = 0; i < M.rows; ++i) M.at(i, c) = -M.at(i, c);
    for (int i = 0; i < V.rows; ++i) V.at(i, c) = -V.at(i, c);
}

} // namespace

SnfResult smith_normal_form(const IMat& A) {
    IMat S = A;
    IMat U = IMat::identity(A.rows);
    IMat V = IMat::identity(A.cols);
    int n = std::min(A.rows, A.cols);

    // clears row k and column k outside the diagonal, pivoting at (k,k)
    auto clear_cross = [&](int k) {
        for (;;) {
            int pi = -1, pj = -1;
            for (int i = k; i < S.rows; ++i)
                for (int j = k; j < S.cols; ++j) {
                    if (S.at(i, j) == 0) continue;
                    if (pi < 0 || mpz_cmpabs(S.at(i, j).get_mpz_t(), S.at(pi, pj).get_mpz_t()) < 0) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) return false; // trailing block is zero
            if (pi != k) swap_rows(S, U, pi, k);
            if (pj != k) swap_cols(S, V, pj, k);
            bool clean = true;
            for (int i = k + 1; i < S.rows; ++i) {
                if (S.at(i, k) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), S.at(i, k).get_mpz_t(), S.at(k, k).get_mpz_t());
                add_row(S, U, i, k, -q);
                if (S.at(i, k) != 0) clean = false;
            }
            for (int j = k + 1; j < S.cols; ++j) {
                if (S.at(k, j) == 0) continue;
                Int q;
                mpz_tdiv_q(q.get_mpz_t(), S.at(k, j).get_mpz_t(), S.at(k, k).get_mpz_t());
                add_col(S, V, j, k, -q);
                if (S.at(k, j) != 0) clean = false;
            }
            if (clean) return true;
        }
    };

    for (int k = 0; k < n; ++k) {
        if (!clear_cross(k)) break;
        if (S.at(k, k) < 0) negate_col(S, V, k);
    }
    // enforce the divisibility chain d1 | d2 | ...
    for (bool changed = true; changed;) {
        changed = false;
        for (int k = 0; k + 1 < n; ++k) {
            Int a = S.at(k, k), b = S.at(k + 1, k + 1);
            if (a == 0 || b % a == 0) continue;
            // fold the 2x2 block and rediagonalize from k
            add_col(S, V, k, k + 1, 1);
            for (int j = k; j < n && clear_cross(j); ++j)
                if (S.at(j, j) < 0) negate_col(S, V, j);
            changed = true;
        }
    }
    return {S, U, V};
}

LinearSolution solve_rational(const RMat& A, const RVec& b) {
    int m = A.rows, n = A.cols;
    RMat M(m, n + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) M.at(i, j) = A.at(i, j);
        M.at(i, n) = b[i];
    }
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < n && r < m; ++c) {
        int piv = -1;
        for (int i = r; i < m; ++i)
            if (M.at(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j <= n; ++j) std::swap(M.at(piv, j), M.at(r, j));
        Rat p = M.at(r, c);
        for (int j = 0; j <= n; ++j) M.at(r, j) /= p;
        for (int i = 0; i < m; ++i) {
            if (i == r || M.at(i, c) == 0) continue;
            Rat f = M.at(i, c);
            for (int j = 0; j <= n; ++j) M.at(i, j) -= f * M.at(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    LinearSolution sol;
    for (int i = r; i < m; ++i)
        if (M.at(i, n) != 0) {
            sol.consistent = false;
            return sol;
        }
    sol.consistent = true;
    sol.particular.assign(n, Rat(0));
    for (size_t k = 0; k < pivot_col.size(); ++k)
        sol.particular[pivot_col[k]] = M.at(static_cast<int>(k), n);
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (int c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        RVec k(n, Rat(0));
        k[c] = 1;
        for (size_t i = 0; i < pivot_col.size(); ++i)
            k[pivot_col[i]] = -M.at(static_cast<int>(i), c);
        sol.kernel.push_back(std::move(k));
    }
    return sol;
}

std::optional<IVec> solve_integer(const IMat& A, const IVec& b) {
    // U A V = S diagonal; A x = b  <=>  S y = U b with x = V y
    SnfResult s = smith_normal_form(A);
    IVec ub = mul(s.U, b);
    int n = A.cols;
    IVec y(n, Int(0));
    int k = std::min(A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i) {
        Int d = i < k ? s.S.at(i, i) : Int(0);
        if (d == 0) {
            if (ub[i] != 0) return std::nullopt;
        } else {
            if (ub[i] % d != 0) return std::nullopt;
            y[i] = ub[i] / d;
        }
    }
    return mul(s.V, y);
}

std::vector<RVec> rat_kernel(const RMat& A) {
    return solve_rational(A, RVec(A.rows, Rat(0))).kernel;
}

std::vector<IVec> int_kernel(const IMat& A) {
    // HNF of A^T: rows of U mapping to zero rows of H give a basis of the
    // saturated integer kernel.
    HnfResult h = hermite_normal_form(transpose(A));
    std::vector<IVec> out;
    for (int i = 0; i < h.H.rows; ++i) {
        bool zero = true;
        for (int j = 0; j < h.H.cols; ++j)
            if (h.H.at(i, j) != 0) { zero = false; break; }
        if (zero) out.push_back(h.U.row(i));
    }
    return out;
}

int rank(const RMat& A) {
    return A.cols - static_cast<int>(rat_kernel(A).size());
}

IMat basis_matrix(const LatticeBasis& b) {
    IMat m(b.ambient_rank, b.rank());
    for (int j = 0; j < b.rank(); ++j)
        for (int i = 0; i < b.ambient_rank; ++i) m.at(i, j) = b.vectors[j][i];
    return m;
}

Int lattice_index(const LatticeBasis& sub, const LatticeBasis& sup) {
    if (sub.rank() != sup.rank())
        throw MathError("RankMismatch", "lattice_index requires equal ranks");
    if (sub.ambient_rank != sup.ambient_rank)
        throw MathError("RankMismatch", "ambient ranks differ");
    int k = sub.rank();
    RMat S = to_rat(basis_matrix(sup));
    RMat X(k, k);
    for (int j = 0; j < k; ++j) {
        LinearSolution s = solve_rational(S, to_rat(sub.vectors[j]));
        if (!s.consistent)
            throw MathError("NotContained", "sub vector outside the span of sup");
        for (int i = 0; i < k; ++i) {
            if (s.particular[i].get_den() != 1)
                throw MathError("NotContained", "sub is not a sublattice of sup");
            X.at(i, j) = s.particular[i];
        }
    }
    Rat d = det(X);
    if (d == 0) throw MathError("RankMismatch", "sub vectors are dependent");
    Int idx = abs(d.get_num());
    return idx;
}

SaturationResult saturate(const LatticeBasis& sub) {
    int n = sub.ambient_rank, k = sub.rank();
    if (k == 0) return {LatticeBasis{n, {}}, Int(1)};
    SnfResult s = smith_normal_form(basis_matrix(sub)); // U B V = S (n x k)
    Int index = 1;
    for (int i = 0; i < k; ++i) {
        if (s.S.at(i, i) == 0)
            throw MathError("RankMismatch", "basis vectors are dependent");
        index *= s.S.at(i, i);
    }
    // saturation basis: Uinv * e_i for i < k
    RMat uinv = inverse(to_rat(s.U));
    LatticeBasis sat{n, {}};
    for (int j = 0; j < k; ++j) {
        IVec v(n);
        for (int i = 0; i < n; ++i) v[i] = uinv.at(i, j).get_num();
        sat.vectors.push_back(std::move(v));
    }
    return {sat, index};
}

RVec QuotientChart::project(const RVec& x) const {
    RVec y(quotient_rank, Rat(0));
    for (int i = 0; i < quotient_rank; ++i)
        for (int j = 0; j < ambient_rank; ++j) y[i] += Rat(projection.at(i, j)) * x[j];
    return y;
}

QuotientChart quotient_coordinates(int ambient_rank, const LatticeBasis& sub,
                                   bool saturate_first) {
    LatticeBasis basis = sub;
    if (basis.ambient_rank != ambient_rank)
        throw MathError("RankMismatch", "sublattice has wrong ambient rank");
    SaturationResult sat = saturate(basis);
    if (sat.index != 1) {
        if (!saturate_first)
            throw MathError("NotSaturated", "sublattice is not saturated");
        basis = sat.basis;
    }
    int n = ambient_rank, k = basis.rank();
    QuotientChart chart;
    chart.ambient_rank = n;
    chart.quotient_rank = n - k;
    if (k == 0) {
        chart.projection = IMat::identity(n);
        chart.section = IMat::identity(n);
        return chart;
    }
    SnfResult s = smith_normal_form(basis_matrix(basis));
    // U B V = diag(1,...,1); projection = last n-k rows of U
    chart.projection = IMat(n - k, n);
    for (int i = 0; i < n - k; ++i)
        for (int j = 0; j < n; ++j) chart.projection.at(i, j) = s.U.at(k + i, j);
    RMat uinv = inverse(to_rat(s.U));
    chart.section = IMat(n, n - k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n - k; ++j) chart.section.at(i, j) = uinv.at(i, k + j).get_num();
    return chart;
}

} // namespace toric

#include "toric/complements.hpp"

#include <algorithm>

namespace toric {

namespace {

RMat cols_of(const std::vector<IVec>& a, const std::vector<RVec>& b, int n) {
    RMat m(n, static_cast<int>(a.size() + b.size()));
    for (size_t j = 0; j < a.size(); ++j)
        for (int i = 0; i < n; ++i) m.at(i, static_cast<int>(j)) = Rat(a[j][i]);
    for (size_t j = 0; j < b.size(); ++j)
        for (int i = 0; i < n; ++i) m.at(i, static_cast<int>(a.size() + j)) = b[j][i];
    return m;
}

} // namespace

ComplementChoice ComplementChoice::finish(const Fan& fan, ComplementKind kind,
                                          std::vector<std::vector<RVec>> psi) {
    int n = fan.rank();
    ComplementChoice out;
    out.kind_ = kind;
    out.fan_ = &fan;
    out.rank_ = n;
    out.psi_ = std::move(psi);
    for (ConeId c = 0; c < fan.num_cones(); ++c) {
        const std::vector<IVec>& mperp = fan.geometry(c).m_perp;
        const std::vector<RVec>& p = out.psi_[c];
        int k = fan.cone(c).dim;
        if (static_cast<int>(p.size()) != k)
            throw MathError("ComplementarityFailed", "complement has wrong dimension");
        RMat A = cols_of(mperp, p, n);
        RMat Ainv;
        try {
            Ainv = inverse(A);
        } catch (const MathError&) {
            throw MathError("ComplementarityFailed",
                            "subspace does not complement the face's perp space");
        }
        // pi_sigma = (columns mperp) * (first n-k rows of A^-1)
        RMat P(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rat s = 0;
                for (int t = 0; t < n - k; ++t) s += Rat(mperp[t][i]) * Ainv.at(t, j);
                P.at(i, j) = s;
            }
        out.proj_.push_back(std::move(P));
    }
    return out;
}

ComplementChoice ComplementChoice::from_inner_product(const Fan& fan, const IMat& gram) {
    int n = fan.rank();
    if (gram.rows != n || gram.cols != n)
        throw InputError("inner product matrix has wrong size");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (gram.at(i, j) != gram.at(j, i))
                throw MathError("NotSymmetric", "inner product matrix is not symmetric");
    // positive definiteness: leading principal minors all positive
    for (int k = 1; k <= n; ++k) {
        IMat lead(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) lead.at(i, j) = gram.at(i, j);
        if (det(lead) <= 0)
            throw MathError("NotPositiveDefinite", "inner product matrix is not positive definite");
    }
    std::vector<std::vector<RVec>> psi;
    for (ConeId c = 0; c < fan.num_cones(); ++c) {
        // Psi(sigma) = { x : y^T G x = 0 for all y in M(sigma) }
        const std::vector<IVec>& mperp = fan.geometry(c).m_perp;
        RMat M(static_cast<int>(mperp.size()), n);
        for (size_t i = 0; i < mperp.size(); ++i) {
            IVec yg = mul(transpose(gram), mperp[i]); // gram is symmetric
            for (int j = 0; j < n; ++j) M.at(static_cast<int>(i), j) = Rat(yg[j]);
        }
        psi.push_back(rat_kernel(M));
    }
    ComplementChoice out = finish(fan, ComplementKind::InnerProduct, std::move(psi));
    out.gram_ = gram;
    return out;
}

ComplementChoice ComplementChoice::from_flag(const Fan& fan, const std::vector<IVec>& flag) {
    int n = fan.rank();
    if (static_cast<int>(flag.size()) != n) throw InputError("flag must list a full basis of M");
    RMat F(n, n);
    for (int j = 0; j < n; ++j) {
        if (static_cast<int>(flag[j].size()) != n) throw InputError("flag vector of wrong size");
        for (int i = 0; i < n; ++i) F.at(i, j) = Rat(flag[j][i]);
    }
    if (det(F) == 0) throw MathError("NotGeneric", "flag vectors are not a basis");
    std::vector<std::vector<RVec>> psi;
    for (ConeId c = 0; c < fan.num_cones(); ++c) {
        int k = fan.cone(c).dim;
        std::vector<RVec> p;
        for (int j = 0; j < k; ++j) p.push_back(to_rat(flag[j]));
        psi.push_back(std::move(p));
    }
    ComplementChoice out;
    try {
        out = finish(fan, ComplementKind::Flag, std::move(psi));
    } catch (const MathError&) {
        throw MathError("NotGeneric", "flag subspace meets the perp space of a cone");
    }
    out.flag_ = flag;
    return out;
}

ComplementChoice ComplementChoice::from_explicit(const Fan& fan,
                                                 const std::vector<std::vector<RVec>>& psi_bases) {
    if (static_cast<int>(psi_bases.size()) != fan.num_cones())
        throw InputError("explicit complement data must cover every cone");
    ComplementChoice out = finish(fan, ComplementKind::Explicit, psi_bases);
    // nestedness: tau a face of sigma implies Psi(tau) inside Psi(sigma)
    int n = fan.rank();
    for (ConeId t = 0; t < fan.num_cones(); ++t)
        for (ConeId s = 0; s < fan.num_cones(); ++s) {
            if (s == t || !fan.is_face(t, s)) continue;
            RMat big(n, static_cast<int>(out.psi_[s].size()));
            for (size_t j = 0; j < out.psi_[s].size(); ++j)
                for (int i = 0; i < n; ++i) big.at(i, static_cast<int>(j)) = out.psi_[s][j][i];
            for (const RVec& v : out.psi_[t])
                if (!solve_rational(big, v).consistent)
                    throw MathError("NestednessFailed",
                                    "complement of a face is not contained in the cone's");
        }
    return out;
}

RVec ComplementChoice::project_between(ConeId sigma, ConeId tau, const RVec& m) const {
    if (!fan_->is_face(sigma, tau))
        throw MathError("NotAFace", "first cone must be a face of the second");
    return project(sigma, m);
}

const IMat& ComplementChoice::gram() const {
    if (kind_ != ComplementKind::InnerProduct)
        throw MathError("WrongKind", "no inner product stored");
    return gram_;
}

const std::vector<IVec>& ComplementChoice::flag() const {
    if (kind_ != ComplementKind::Flag) throw MathError("WrongKind", "no flag stored");
    return flag_;
}

} // namespace toric

#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "vbmps/angular_momentum.hpp"
#include "vbmps/half_int.hpp"
#include "vbmps/linalg.hpp"

namespace vbmps {

// A rank-s spherical tensor family: 2s+1 operators A_m on the auxiliary
// space, m = s, s-1, ..., -s, transforming irreducibly under the adjoint
// action of the auxiliary su(2) generators:
//   [Lz, A_m] = m A_m,   [L±, A_m] = sqrt(s(s+1) - m(m±1)) A_{m±1}.
struct SphericalTensorFamily {
    HalfInt rank;
    RepSpec aux;
    std::map<HalfInt, CMatrix> components; // keyed by m, ascending

    const CMatrix& component(HalfInt m) const {
        auto it = components.find(m);
        if (it == components.end())
            throw std::out_of_range("SphericalTensorFamily: no component m = " + m.str());
        return it->second;
    }

    // Components in m-descending order (the physical-basis order used for
    // MPS configuration indexing).
    std::vector<CMatrix> components_descending() const {
        std::vector<CMatrix> out;
        out.reserve(components.size());
        for (auto it = components.rbegin(); it != components.rend(); ++it)
            out.push_back(it->second);
        return out;
    }

    long long physical_dimension() const { return rank.multiplicity(); }
    long long aux_dimension() const { return aux.dimension(); }
};

// The canonical rank-s family on the auxiliary space s ⊕ 0:
//   A_m = |s,m><0~| + (-1)^(s-m) |0~><s,-m|.
inline SphericalTensorFamily canonical_tensor(HalfInt s) {
    if (s.twice() < 1)
        throw std::invalid_argument("canonical_tensor: rank must be at least 1/2");
    SphericalTensorFamily fam;
    fam.rank = s;
    fam.aux = RepSpec{{s, HalfInt::from_int(0)}};
    long long d = fam.aux.dimension(); // 2s+2
    long long tilde = fam.aux.state_index(1, HalfInt::from_int(0));
    for (long long tm = -s.twice(); tm <= s.twice(); tm += 2) {
        HalfInt m = HalfInt::from_twice(tm);
        CMatrix a = CMatrix::Zero(d, d);
        a(fam.aux.state_index(0, m), tilde) = 1.0;
        a(tilde, fam.aux.state_index(0, -m)) = parity_sign(s - m);
        fam.components.emplace(m, a);
    }
    return fam;
}

// The two-dimensional rank-1 family generating the spin-1 AKLT chain:
//   A_1 = -sqrt(2) sigma_+,  A_0 = sigma_z,  A_-1 = sqrt(2) sigma_-.
// Its auxiliary space is the irreducible spin-1/2 representation.
inline SphericalTensorFamily aklt_rank1_tensor() {
    SphericalTensorFamily fam;
    fam.rank = HalfInt::from_int(1);
    fam.aux = RepSpec{{HalfInt::from_twice(1)}};
    const double r2 = std::sqrt(2.0);
    CMatrix a1 = CMatrix::Zero(2, 2), a0 = CMatrix::Zero(2, 2), am1 = CMatrix::Zero(2, 2);
    a1(0, 1) = -r2;
    a0(0, 0) = 1.0;
    a0(1, 1) = -1.0;
    am1(1, 0) = r2;
    fam.components.emplace(HalfInt::from_int(1), a1);
    fam.components.emplace(HalfInt::from_int(0), a0);
    fam.components.emplace(HalfInt::from_int(-1), am1);
    return fam;
}

struct SphericalCheckReport {
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Verify the defining commutation relations of a rank-s family against a
// generator triple on the same space.  Checks all three relations for
// every m, including the vanishing of [L+, A_s] and [L-, A_-s].
inline SphericalCheckReport verify_spherical(const SphericalTensorFamily& fam,
                                             const GeneratorTriple& g, double tol = 1e-9) {
    if (g.dimension() != fam.aux_dimension())
        throw std::invalid_argument("verify_spherical: generator/family dimension mismatch");
    if (static_cast<long long>(fam.components.size()) != fam.rank.multiplicity())
        throw std::invalid_argument("verify_spherical: wrong number of components");
    HalfInt s = fam.rank;
    double dev = 0.0;
    for (const auto& [m, a] : fam.components) {
        dev = std::max(dev, (comm(g.lz, a) - m.value() * a).norm());

        CMatrix up = comm(g.lplus, a);
        if (m.twice() < s.twice()) up -= raising_coefficient(s, m) * fam.component(m + HalfInt::from_int(1));
        dev = std::max(dev, up.norm());

        CMatrix down = comm(g.lminus, a);
        if (m.twice() > -s.twice()) down -= lowering_coefficient(s, m) * fam.component(m - HalfInt::from_int(1));
        dev = std::max(dev, down.norm());
    }
    return {dev, tol, dev <= tol};
}

// Rank s+s' family on the auxiliary space s ⊕ s', built by lowering the
// highest-weight component
//   V_{s+s', s+s'} = |s,s><s',-s'| + |s',s'><s,-s|
// through V_{j,m-1} = [L-, V_{j,m}] / sqrt(j(j+1) - m(m-1)).  The exact
// ladder coefficient at each step reproduces printed matrix entries
// without any post-hoc normalization.
inline SphericalTensorFamily vbs_tensor(HalfInt s, HalfInt s2) {
    if (s.twice() < 1 || s2.twice() < 1)
        throw std::invalid_argument("vbs_tensor: both spins must be at least 1/2");
    SphericalTensorFamily fam;
    fam.rank = s + s2;
    fam.aux = RepSpec{{s, s2}};
    long long d = fam.aux.dimension();
    HalfInt j = fam.rank;

    CMatrix top = CMatrix::Zero(d, d);
    top(fam.aux.state_index(0, s), fam.aux.state_index(1, -s2)) = 1.0;
    top(fam.aux.state_index(1, s2), fam.aux.state_index(0, -s)) = 1.0;

    GeneratorTriple g = direct_sum_generators(fam.aux);
    fam.components.emplace(j, top);
    HalfInt m = j;
    while (m.twice() > -j.twice()) {
        const CMatrix& cur = fam.component(m);
        CMatrix next = comm(g.lminus, cur) / lowering_coefficient(j, m);
        m = m - HalfInt::from_int(1);
        fam.components.emplace(m, next);
    }
    return fam;
}

struct FusionSpectrum {
    // multiplicity c_j of the spin-j channel in span{A_m A_m'}; channels
    // run over integer j from 0 to 2*rank.  c_j = 0 means absent.
    std::map<long long, long long> channels;

    bool present(long long j) const {
        auto it = channels.find(j);
        return it != channels.end() && it->second > 0;
    }
};

// Decompose the operator span of pairwise products under the adjoint su(2)
// action: for each j, count independent X in span{A_m A_m'} with
// [Lz, X] = j X and [L+, X] = 0.  The span is orthonormalized first so the
// count is a genuine multiplicity, then each top-weight space is the kernel
// of the stacked constraint matrix.
inline FusionSpectrum fusion_spectrum(const SphericalTensorFamily& fam,
                                      const ToleranceConfig& tol = {}) {
    long long d = fam.aux_dimension();
    std::vector<CMatrix> products;
    for (const auto& [m1, a1] : fam.components)
        for (const auto& [m2, a2] : fam.components) products.push_back(a1 * a2);

    CMatrix p(d * d, static_cast<Eigen::Index>(products.size()));
    for (std::size_t c = 0; c < products.size(); ++c)
        p.col(static_cast<Eigen::Index>(c)) = vec(products[c]);

    Eigen::JacobiSVD<CMatrix> svd(p, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    double cut = tol.rank_tol * std::max(sv.size() > 0 ? sv(0) : 0.0, 1.0);
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > cut) ++r;
    CMatrix q = svd.matrixU().leftCols(r);

    GeneratorTriple g = direct_sum_generators(fam.aux);
    CMatrix ad_lz = adjoint_action_matrix(g.lz);
    CMatrix ad_lp = adjoint_action_matrix(g.lplus);

    FusionSpectrum out;
    long long jmax = fam.rank.twice(); // 2 * rank, always an integer spin value
    for (long long j = 0; j <= jmax; ++j) {
        CMatrix constraint(2 * d * d, r);
        constraint.topRows(d * d) = ad_lz * q - static_cast<double>(j) * q;
        constraint.bottomRows(d * d) = ad_lp * q;
        out.channels[j] = r == 0 ? 0
                                 : static_cast<long long>(kernel_basis(constraint, tol).size());
    }
    return out;
}

} // namespace vbmps

#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "vbmps/half_int.hpp"
#include "vbmps/linalg.hpp"

namespace vbmps {

// Ordered direct sum of spin irreps describing an auxiliary space.  A
// summand of 0 is the one-dimensional singlet slot |0~>.  Basis order is
// part of the contract: summands appear in listed order and each block is
// enumerated |s,s>, |s,s-1>, ..., |s,-s>.
struct RepSpec {
    std::vector<HalfInt> summands;

    long long dimension() const {
        long long d = 0;
        for (HalfInt s : summands) d += s.multiplicity();
        return d;
    }

    long long block_offset(std::size_t i) const {
        if (i >= summands.size()) throw std::out_of_range("RepSpec::block_offset");
        long long off = 0;
        for (std::size_t k = 0; k < i; ++k) off += summands[k].multiplicity();
        return off;
    }

    // Index of |s_i, m> within the concatenated basis.
    long long state_index(std::size_t i, HalfInt m) const {
        HalfInt s = summands.at(i);
        if (m.twice() > s.twice() || m.twice() < -s.twice() || !(s - m).is_integer())
            throw std::invalid_argument("RepSpec::state_index: m out of range for spin " + s.str());
        return block_offset(i) + (s - m).twice() / 2;
    }
};

struct GeneratorTriple {
    CMatrix lz, lplus, lminus;

    Eigen::Index dimension() const { return lz.rows(); }

    // Largest violation of [Lz,L±] = ±L±, [L+,L-] = 2Lz, L- = L+†.
    double algebra_deviation() const {
        double d = (comm(lz, lplus) - lplus).norm();
        d = std::max(d, (comm(lz, lminus) + lminus).norm());
        d = std::max(d, (comm(lplus, lminus) - 2.0 * lz).norm());
        d = std::max(d, (lminus - lplus.adjoint()).norm());
        return d;
    }
};

// sqrt(j(j+1) - m(m-1)): coefficient in L-|j,m> = c |j,m-1>.
inline double lowering_coefficient(HalfInt j, HalfInt m) {
    double jj = j.value(), mm = m.value();
    return std::sqrt(jj * (jj + 1.0) - mm * (mm - 1.0));
}

// sqrt(j(j+1) - m(m+1)): coefficient in L+|j,m> = c |j,m+1>.
inline double raising_coefficient(HalfInt j, HalfInt m) {
    double jj = j.value(), mm = m.value();
    return std::sqrt(jj * (jj + 1.0) - mm * (mm + 1.0));
}

// Spin-s generators in the basis |s,s>, ..., |s,-s>.
inline GeneratorTriple irrep_generators(HalfInt s) {
    if (s.twice() < 0) throw std::invalid_argument("irrep_generators: negative spin");
    long long d = s.multiplicity();
    GeneratorTriple g;
    g.lz = CMatrix::Zero(d, d);
    g.lplus = CMatrix::Zero(d, d);
    for (long long k = 0; k < d; ++k) {
        HalfInt m = s - HalfInt::from_int(k);
        g.lz(k, k) = m.value();
        if (k > 0) g.lplus(k - 1, k) = raising_coefficient(s, m);
    }
    g.lminus = g.lplus.adjoint();
    return g;
}

inline GeneratorTriple direct_sum_generators(const RepSpec& spec) {
    long long d = spec.dimension();
    GeneratorTriple g;
    g.lz = CMatrix::Zero(d, d);
    g.lplus = CMatrix::Zero(d, d);
    g.lminus = CMatrix::Zero(d, d);
    for (std::size_t i = 0; i < spec.summands.size(); ++i) {
        GeneratorTriple block = irrep_generators(spec.summands[i]);
        long long off = spec.block_offset(i);
        long long bd = spec.summands[i].multiplicity();
        g.lz.block(off, off, bd, bd) = block.lz;
        g.lplus.block(off, off, bd, bd) = block.lplus;
        g.lminus.block(off, off, bd, bd) = block.lminus;
    }
    return g;
}

// A row of physical sites, spin s_i each; total space is the tensor product.
struct SiteSystem {
    std::vector<HalfInt> site_spins;

    long long k() const { return static_cast<long long>(site_spins.size()); }

    std::vector<long long> dims() const {
        std::vector<long long> d;
        d.reserve(site_spins.size());
        for (HalfInt s : site_spins) d.push_back(s.multiplicity());
        return d;
    }

    long long dimension() const { return product_dimension(dims()); }
};

inline SiteSystem uniform_sites(HalfInt s, long long k) {
    if (k < 1) throw std::invalid_argument("uniform_sites: need at least one site");
    return SiteSystem{std::vector<HalfInt>(static_cast<std::size_t>(k), s)};
}

struct TotalSpin {
    GeneratorTriple triple;
    CMatrix casimir; // S·S = Lz² + (L+L- + L-L+)/2
};

inline CMatrix embed_single_site(const CMatrix& op, std::size_t site,
                                 const std::vector<long long>& dims) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i == site)
            out = kron(out, op);
        else
            out = kron(out, CMatrix::Identity(dims[i], dims[i]));
    }
    return out;
}

inline TotalSpin total_spin_operators(const SiteSystem& sys) {
    if (sys.k() < 1) throw std::invalid_argument("total_spin_operators: empty system");
    auto dims = sys.dims();
    long long total = product_dimension(dims);
    check_dimension_cap(total);
    TotalSpin out;
    out.triple.lz = CMatrix::Zero(total, total);
    out.triple.lplus = CMatrix::Zero(total, total);
    for (std::size_t i = 0; i < sys.site_spins.size(); ++i) {
        GeneratorTriple g = irrep_generators(sys.site_spins[i]);
        out.triple.lz += embed_single_site(g.lz, i, dims);
        out.triple.lplus += embed_single_site(g.lplus, i, dims);
    }
    out.triple.lminus = out.triple.lplus.adjoint();
    out.casimir = out.triple.lz * out.triple.lz +
                  (out.triple.lplus * out.triple.lminus +
                   out.triple.lminus * out.triple.lplus) / 2.0;
    return out;
}

// j such that j(j+1) = eigenvalue, rounded onto the half-integer grid.
inline HalfInt spin_from_casimir_eigenvalue(double lambda, double tol = 1e-6) {
    double j = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * std::max(lambda, 0.0)));
    long long twice = std::llround(2.0 * j);
    double recon = 0.5 * twice * (0.5 * twice + 1.0);
    if (std::abs(recon - lambda) > tol * std::max(1.0, std::abs(lambda)))
        throw std::domain_error("spin_from_casimir_eigenvalue: eigenvalue " +
                                std::to_string(lambda) + " is not of the form j(j+1)");
    return HalfInt::from_twice(twice);
}

// Projectors onto the full spin-j eigenspaces (all multiplicity copies) of
// the total-spin Casimir.  Only spins present in the decomposition appear
// as keys; query an absent j through casimir_projector to get zero.
inline std::map<HalfInt, CMatrix> casimir_projectors(const SiteSystem& sys,
                                                     double assert_tol = 1e-9) {
    TotalSpin ts = total_spin_operators(sys);
    HermitianEig eig = eig_hermitian(ts.casimir, assert_tol);
    std::map<HalfInt, CMatrix> projectors;
    long long n = eig.eigenvalues.size();
    for (long long i = 0; i < n; ++i) {
        HalfInt j = spin_from_casimir_eigenvalue(eig.eigenvalues(i));
        CVector v = eig.eigenvectors.col(i);
        auto it = projectors.find(j);
        if (it == projectors.end())
            projectors.emplace(j, v * v.adjoint());
        else
            it->second += v * v.adjoint();
    }
    return projectors;
}

inline CMatrix casimir_projector(const SiteSystem& sys, HalfInt j,
                                 double assert_tol = 1e-9) {
    auto all = casimir_projectors(sys, assert_tol);
    auto it = all.find(j);
    if (it != all.end()) return it->second;
    long long d = sys.dimension();
    return CMatrix::Zero(d, d);
}

// Generate the full multiplet |j,j>, ..., |j,-j> by repeated lowering from
// a highest-weight vector.  The top must satisfy Lz top = j top and
// L+ top = 0; each lowering step divides by the exact ladder coefficient,
// which keeps every member unit-normalized.
inline std::vector<CVector> multiplet_from_top(const CVector& top, const GeneratorTriple& g,
                                               double assert_tol = 1e-9) {
    double nrm = top.norm();
    if (nrm == 0.0) throw std::invalid_argument("multiplet_from_top: zero vector");
    CVector t = top / nrm;
    double jval = (t.adjoint() * g.lz * t)(0).real();
    long long twice_j = std::llround(2.0 * jval);
    if (twice_j < 0)
        throw std::invalid_argument("multiplet_from_top: negative Lz expectation");
    HalfInt j = HalfInt::from_twice(twice_j);
    if ((g.lz * t - jval * t).norm() > assert_tol)
        throw std::invalid_argument("multiplet_from_top: top is not an Lz eigenvector");
    if ((g.lz * t - j.value() * t).norm() > assert_tol)
        throw std::invalid_argument("multiplet_from_top: Lz eigenvalue is not half-integer");
    if ((g.lplus * t).norm() > assert_tol)
        throw std::invalid_argument("multiplet_from_top: top is not annihilated by L+");

    std::vector<CVector> members;
    members.push_back(t);
    HalfInt m = j;
    while (m.twice() > -j.twice()) {
        double c = lowering_coefficient(j, m);
        members.push_back((g.lminus * members.back()) / c);
        m = m - HalfInt::from_int(1);
    }
    if ((g.lminus * members.back()).norm() > assert_tol * 10)
        throw std::runtime_error("multiplet_from_top: lowest member not annihilated by L-");
    return members;
}

} // namespace vbmps

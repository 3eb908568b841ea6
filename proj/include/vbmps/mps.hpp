#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "vbmps/config.hpp"
#include "vbmps/half_int.hpp"
#include "vbmps/linalg.hpp"
#include "vbmps/spherical_tensors.hpp"

namespace vbmps {

// Matrices assigned to one chain site, keyed by the physical m value.  Not
// required to form a spherical family: symmetry-breaking sites use the
// non-covariant C_m matrices.
struct SiteTensor {
    HalfInt spin; // physical spin s; dimension 2s+1
    std::map<HalfInt, CMatrix> matrices;

    static SiteTensor from_family(const SphericalTensorFamily& fam) {
        return SiteTensor{fam.rank, fam.components};
    }

    const CMatrix& matrix(HalfInt m) const {
        auto it = matrices.find(m);
        if (it == matrices.end())
            throw std::out_of_range("SiteTensor: no matrix for m = " + m.str());
        return it->second;
    }

    // Physical index k = s - m, i.e. m descending.
    const CMatrix& matrix_by_index(long long k) const {
        return matrix(spin - HalfInt::from_int(k));
    }

    long long physical_dimension() const { return spin.multiplicity(); }
    Eigen::Index aux_dimension() const {
        return matrices.empty() ? 0 : matrices.begin()->second.rows();
    }

    void validate() const {
        if (static_cast<long long>(matrices.size()) != spin.multiplicity())
            throw std::invalid_argument("SiteTensor: need exactly 2s+1 matrices");
        Eigen::Index d = aux_dimension();
        for (const auto& [m, a] : matrices) {
            if (a.rows() != d || a.cols() != d)
                throw std::invalid_argument("SiteTensor: matrices must be square and equal-sized");
            if (m.twice() > spin.twice() || m.twice() < -spin.twice() || !(spin - m).is_integer())
                throw std::invalid_argument("SiteTensor: m = " + m.str() + " invalid for spin " + spin.str());
        }
    }
};

// Periodic matrix-product state: site i carries pattern[i mod period].
// All auxiliary dimensions must agree so the ring trace is defined.
struct MpsChain {
    long long n_sites = 0;
    std::vector<SiteTensor> pattern;

    void validate() const {
        if (n_sites < 1) throw std::invalid_argument("MpsChain: need at least one site");
        if (pattern.empty()) throw std::invalid_argument("MpsChain: empty pattern");
        if (n_sites % static_cast<long long>(pattern.size()) != 0)
            throw std::invalid_argument("MpsChain: n_sites must be a multiple of the pattern period");
        Eigen::Index d = pattern.front().aux_dimension();
        for (const auto& t : pattern) {
            t.validate();
            if (t.aux_dimension() != d)
                throw std::invalid_argument("MpsChain: auxiliary dimensions differ around the ring");
        }
    }

    const SiteTensor& site(long long i) const {
        return pattern[static_cast<std::size_t>(i % static_cast<long long>(pattern.size()))];
    }

    std::vector<long long> physical_dims() const {
        std::vector<long long> dims(static_cast<std::size_t>(n_sites));
        for (long long i = 0; i < n_sites; ++i)
            dims[static_cast<std::size_t>(i)] = site(i).physical_dimension();
        return dims;
    }

    Eigen::Index aux_dimension() const { return pattern.front().aux_dimension(); }
};

inline MpsChain uniform_chain(const SphericalTensorFamily& fam, long long n_sites) {
    MpsChain chain{n_sites, {SiteTensor::from_family(fam)}};
    chain.validate();
    return chain;
}

// tr(A_{m1} ... A_{mN}) for one configuration of physical m values.
inline Complex amplitude(const MpsChain& chain, const std::vector<HalfInt>& config) {
    if (static_cast<long long>(config.size()) != chain.n_sites)
        throw std::invalid_argument("amplitude: config length must equal n_sites");
    CMatrix prod = CMatrix::Identity(chain.aux_dimension(), chain.aux_dimension());
    for (long long i = 0; i < chain.n_sites; ++i)
        prod = prod * chain.site(i).matrix(config[static_cast<std::size_t>(i)]);
    return prod.trace();
}

// All amplitudes in lexicographic configuration order, site 0 most
// significant, m descending within each site.  Unnormalized: no 1/sqrt(Z).
inline CVector expand_state(const MpsChain& chain) {
    chain.validate();
    auto dims = chain.physical_dims();
    long long total = product_dimension(dims);
    check_dimension_cap(total);

    // Partial products left of each site make the full sweep O(total * N)
    // matrix multiplies instead of re-multiplying from scratch per config.
    CVector psi(total);
    std::vector<long long> idx(dims.size(), 0);
    std::vector<CMatrix> prefix(dims.size() + 1);
    Eigen::Index d = chain.aux_dimension();
    prefix[0] = CMatrix::Identity(d, d);
    for (std::size_t i = 0; i < dims.size(); ++i)
        prefix[i + 1] = prefix[i] * chain.site(static_cast<long long>(i)).matrix_by_index(0);

    for (long long flat = 0;; ++flat) {
        psi(flat) = prefix.back().trace();
        // advance the mixed-radix counter, rebuilding prefixes right of the
        // first site whose digit changed
        std::size_t pos = dims.size();
        while (pos > 0) {
            --pos;
            if (++idx[pos] < dims[static_cast<std::size_t>(pos)]) break;
            idx[pos] = 0;
            if (pos == 0) return psi;
        }
        for (std::size_t i = pos; i < dims.size(); ++i)
            prefix[i + 1] = prefix[i] * chain.site(static_cast<long long>(i)).matrix_by_index(idx[i]);
    }
}

// E = sum_m A_m* ⊗ A_m for one site.
inline CMatrix transfer_matrix(const SiteTensor& t) {
    Eigen::Index d = t.aux_dimension();
    CMatrix e = CMatrix::Zero(d * d, d * d);
    for (const auto& [m, a] : t.matrices) e += kron(a.conjugate(), a);
    return e;
}

// Z = tr(E_1 E_2 ... E_N); equals <psi|psi> of the unnormalized expansion.
inline double transfer_normalization(const MpsChain& chain) {
    chain.validate();
    Eigen::Index d2 = chain.aux_dimension() * chain.aux_dimension();
    CMatrix prod = CMatrix::Identity(d2, d2);
    for (long long i = 0; i < chain.n_sites; ++i) prod = prod * transfer_matrix(chain.site(i));
    return prod.trace().real();
}

// Unit-trace reduced density matrix of k consecutive sites starting at
// `start` (wrapping around the ring), computed by partial trace of the
// dense expansion.
inline CMatrix reduced_density_matrix(const MpsChain& chain, long long start, long long k) {
    chain.validate();
    if (k < 1 || k > chain.n_sites)
        throw std::invalid_argument("reduced_density_matrix: bad window size");
    CVector psi = expand_state(chain);
    auto dims = chain.physical_dims();
    long long n = chain.n_sites;

    std::vector<long long> window_sites(static_cast<std::size_t>(k));
    std::vector<long long> window_dims(static_cast<std::size_t>(k));
    long long wdim = 1;
    for (long long j = 0; j < k; ++j) {
        window_sites[j] = (start + j) % n;
        window_dims[j] = dims[window_sites[j]];
        wdim *= window_dims[j];
    }
    std::vector<long long> rest_sites, rest_dims;
    std::vector<char> in_window(static_cast<std::size_t>(n), 0);
    for (long long s : window_sites) in_window[s] = 1;
    for (long long s = 0; s < n; ++s)
        if (!in_window[s]) {
            rest_sites.push_back(s);
            rest_dims.push_back(dims[s]);
        }
    long long rdim = product_dimension(rest_dims.empty() ? std::vector<long long>{1} : rest_dims);

    CMatrix rho = CMatrix::Zero(wdim, wdim);
    std::vector<long long> full(static_cast<std::size_t>(n));
    for (long long r = 0; r < rdim; ++r) {
        auto ri = rest_dims.empty() ? std::vector<long long>{} : unflatten_index(r, rest_dims);
        for (std::size_t j = 0; j < rest_sites.size(); ++j) full[rest_sites[j]] = ri[j];
        for (long long a = 0; a < wdim; ++a) {
            auto ai = unflatten_index(a, window_dims);
            for (long long j = 0; j < k; ++j) full[window_sites[j]] = ai[j];
            Complex pa = psi(flatten_index(full, dims));
            if (pa == Complex(0, 0)) continue;
            for (long long b = 0; b < wdim; ++b) {
                auto bi = unflatten_index(b, window_dims);
                for (long long j = 0; j < k; ++j) full[window_sites[j]] = bi[j];
                rho(a, b) += pa * std::conj(psi(flatten_index(full, dims)));
            }
        }
    }
    Complex tr = rho.trace();
    if (std::abs(tr) == 0.0)
        throw std::runtime_error("reduced_density_matrix: zero state");
    return rho / tr;
}

// Transfer-matrix evaluation of the same window density matrix:
//   rho(a, b) = tr[ (P_b)* ⊗ (P_a) · E_rest ] / Z
// with P the window matrix products and E_rest the transfer product over
// the remaining ring sites.  Serves as an independent cross-check of the
// partial-trace path.
inline CMatrix reduced_density_matrix_transfer(const MpsChain& chain, long long start, long long k) {
    chain.validate();
    if (k < 1 || k >= chain.n_sites)
        throw std::invalid_argument("reduced_density_matrix_transfer: window must be a proper subset");
    long long n = chain.n_sites;
    Eigen::Index ad = chain.aux_dimension();

    std::vector<long long> window_dims(static_cast<std::size_t>(k));
    for (long long j = 0; j < k; ++j) window_dims[j] = chain.site((start + j) % n).physical_dimension();
    long long wdim = product_dimension(window_dims);

    CMatrix e_rest = CMatrix::Identity(ad * ad, ad * ad);
    for (long long i = start + k; i < start + n; ++i) e_rest = e_rest * transfer_matrix(chain.site(i % n));

    std::vector<CMatrix> window_products(static_cast<std::size_t>(wdim));
    for (long long a = 0; a < wdim; ++a) {
        auto ai = unflatten_index(a, window_dims);
        CMatrix prod = CMatrix::Identity(ad, ad);
        for (long long j = 0; j < k; ++j)
            prod = prod * chain.site((start + j) % n).matrix_by_index(ai[j]);
        window_products[static_cast<std::size_t>(a)] = prod;
    }

    CMatrix rho(wdim, wdim);
    for (long long a = 0; a < wdim; ++a)
        for (long long b = 0; b < wdim; ++b)
            rho(a, b) = (kron(window_products[static_cast<std::size_t>(b)].conjugate(),
                              window_products[static_cast<std::size_t>(a)]) *
                         e_rest)
                            .trace();
    Complex tr = rho.trace();
    if (std::abs(tr) == 0.0)
        throw std::runtime_error("reduced_density_matrix_transfer: zero state");
    return rho / tr;
}

// tr(rho_window · op) for a Hermitian window operator.
inline double window_expectation(const MpsChain& chain, const CMatrix& op, long long start,
                                 long long k, double assert_tol = 1e-9) {
    if (!is_hermitian(op, assert_tol))
        throw std::invalid_argument("window_expectation: operator must be Hermitian");
    CMatrix rho = reduced_density_matrix(chain, start, k);
    if (rho.rows() != op.rows())
        throw std::invalid_argument("window_expectation: operator/window dimension mismatch");
    Complex val = (rho * op).trace();
    if (std::abs(val.imag()) > assert_tol)
        throw std::runtime_error("window_expectation: expectation has non-real part " +
                                 std::to_string(val.imag()));
    return val.real();
}

// Gauge-equivalent chain: every matrix A ↦ mu · U A U^{-1}.  Leaves the
// normalized physical state invariant up to a global phase.
inline MpsChain gauge_transform(const MpsChain& chain, const CMatrix& u, Complex mu) {
    if (u.rows() != chain.aux_dimension() || u.cols() != chain.aux_dimension())
        throw std::invalid_argument("gauge_transform: unitary dimension mismatch");
    if (mu == Complex(0, 0)) throw std::invalid_argument("gauge_transform: mu must be nonzero");
    CMatrix uinv = u.inverse();
    MpsChain out = chain;
    for (auto& t : out.pattern)
        for (auto& [m, a] : t.matrices) a = mu * (u * a * uinv);
    return out;
}

} // namespace vbmps

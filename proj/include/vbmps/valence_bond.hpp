#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "vbmps/angular_momentum.hpp"
#include "vbmps/config.hpp"
#include "vbmps/half_int.hpp"
#include "vbmps/linalg.hpp"
#include "vbmps/mps.hpp"
#include "vbmps/spherical_tensors.hpp"

namespace vbmps {

// epsilon = (-1)^(2s): +1 for integer spin, -1 for half-integer spin.
inline int epsilon_sign(HalfInt s) { return s.twice() % 2 == 0 ? 1 : -1; }

// Two-site spin-s singlet  |S> = (2s+1)^(-1/2) sum_m (-1)^(s+m) |m, -m>,
// unit-normalized and annihilated by the total-spin generators.
inline CVector singlet(HalfInt s) {
    if (s.twice() < 1) throw std::invalid_argument("singlet: spin must be at least 1/2");
    long long d = s.multiplicity();
    CVector v = CVector::Zero(d * d);
    for (long long k = 0; k < d; ++k) {
        HalfInt m = s - HalfInt::from_int(k);
        long long idx_minus_m = (s - (-m)).twice() / 2;
        v(k * d + idx_minus_m) = static_cast<double>(parity_sign(s + m));
    }
    return v / std::sqrt(static_cast<double>(d));
}

// Perfect matching of a 2N-site ring by singlets.  offset 0 pairs
// (1,2)(3,4)...; offset 1 pairs (2,3)(4,5)...(2N,1).  (1-based site labels;
// storage is 0-based.)
struct DimerCovering {
    HalfInt s;
    long long n_sites = 0;
    int offset = 0;

    void validate() const {
        if (n_sites < 2 || n_sites % 2 != 0)
            throw std::invalid_argument("DimerCovering: n_sites must be even and positive");
        if (offset != 0 && offset != 1)
            throw std::invalid_argument("DimerCovering: offset must be 0 or 1");
    }

    std::vector<std::pair<long long, long long>> pairs() const {
        std::vector<std::pair<long long, long long>> out;
        for (long long p = 0; p < n_sites / 2; ++p)
            out.emplace_back((2 * p + offset) % n_sites, (2 * p + 1 + offset) % n_sites);
        return out;
    }
};

// Tensor product of singlets over the covering, as a dense vector in the
// usual lexicographic (m-descending) basis.
inline CVector dimer_state(const DimerCovering& cov) {
    cov.validate();
    long long d = cov.s.multiplicity();
    long long total = 1;
    for (long long i = 0; i < cov.n_sites; ++i) total *= d;
    check_dimension_cap(total);

    CVector s2 = singlet(cov.s); // on d*d
    auto pairs = cov.pairs();
    std::vector<long long> dims(static_cast<std::size_t>(cov.n_sites), d);
    CVector psi(total);
    for (long long flat = 0; flat < total; ++flat) {
        auto idx = unflatten_index(flat, dims);
        Complex amp(1.0, 0.0);
        for (auto [a, b] : pairs) {
            amp *= s2(idx[static_cast<std::size_t>(a)] * d + idx[static_cast<std::size_t>(b)]);
            if (amp == Complex(0, 0)) break;
        }
        psi(flat) = amp;
    }
    return psi;
}

// |phi_1> ± |phi_2>: superposition of the two dimer coverings of a
// 2*n_pairs ring.
inline CVector mg_state(HalfInt s, long long n_pairs, int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("mg_state: sign must be ±1");
    DimerCovering c1{s, 2 * n_pairs, 0};
    DimerCovering c2{s, 2 * n_pairs, 1};
    return dimer_state(c1) + static_cast<double>(sign) * dimer_state(c2);
}

// |S>_12 |S'>_34 |S>_56 ... : alternating spin-s and spin-s2 singlets,
// n_periods repetitions of the 4-site block (s, s, s2, s2).
inline CVector alternating_dimer_state(HalfInt s, HalfInt s2, long long n_periods) {
    if (n_periods < 1) throw std::invalid_argument("alternating_dimer_state: need n_periods >= 1");
    CVector block = kron(singlet(s), singlet(s2));
    CVector psi = block;
    for (long long p = 1; p < n_periods; ++p) {
        check_dimension_cap(psi.size() * block.size());
        psi = kron(psi, block).eval();
    }
    return psi;
}

// MPS chain generating the same alternating state: canonical spin-s and
// spin-s2 tensors embedded in the common auxiliary space s ⊕ s2 ⊕ 0, pattern
// A A B B around the ring.
inline MpsChain alternating_chain(HalfInt s, HalfInt s2, long long n_periods) {
    RepSpec aux{{s, s2, HalfInt::from_int(0)}};
    long long d = aux.dimension();
    long long tilde = aux.state_index(2, HalfInt::from_int(0));

    auto embedded = [&](std::size_t block, HalfInt spin) {
        SiteTensor t;
        t.spin = spin;
        for (long long tm = -spin.twice(); tm <= spin.twice(); tm += 2) {
            HalfInt m = HalfInt::from_twice(tm);
            CMatrix a = CMatrix::Zero(d, d);
            a(aux.state_index(block, m), tilde) = 1.0;
            a(tilde, aux.state_index(block, -m)) = parity_sign(spin - m);
            t.matrices.emplace(m, a);
        }
        return t;
    };

    SiteTensor ta = embedded(0, s);
    SiteTensor tb = embedded(1, s2);
    MpsChain chain{4 * n_periods, {ta, ta, tb, tb}};
    chain.validate();
    return chain;
}

// alpha_m amplitudes of the on-site state |alpha> = sum_m alpha_m |s,m>.
struct SymmetryBreakingSpec {
    HalfInt s;
    std::map<HalfInt, Complex> alpha;

    void validate() const {
        bool any = false;
        for (const auto& [m, a] : alpha) {
            if (m.twice() > s.twice() || m.twice() < -s.twice() || !(s - m).is_integer())
                throw std::invalid_argument("SymmetryBreakingSpec: m = " + m.str() +
                                            " invalid for spin " + s.str());
            any = any || a != Complex(0, 0);
        }
        if (!any) throw std::invalid_argument("SymmetryBreakingSpec: alpha must not be all zero");
    }

    CVector alpha_vector() const {
        long long d = s.multiplicity();
        CVector v = CVector::Zero(d);
        for (const auto& [m, a] : alpha) v((s - m).twice() / 2) = a;
        return v;
    }
};

// |S>_12 |alpha>_3 |S>_45 |alpha>_6 ... : three sites per period.
inline CVector symmetry_breaking_state(const SymmetryBreakingSpec& spec, long long n_periods) {
    spec.validate();
    if (n_periods < 1) throw std::invalid_argument("symmetry_breaking_state: need n_periods >= 1");
    CVector block = kron(singlet(spec.s), spec.alpha_vector());
    CVector psi = block;
    for (long long p = 1; p < n_periods; ++p) {
        check_dimension_cap(psi.size() * block.size());
        psi = kron(psi, block).eval();
    }
    return psi;
}

// MPS generating the same state: canonical tensors on two sites followed by
// the symmetry-breaking site C_m = alpha_m |0~><0~|.
inline MpsChain symmetry_breaking_chain(const SymmetryBreakingSpec& spec, long long n_periods) {
    spec.validate();
    SphericalTensorFamily fam = canonical_tensor(spec.s);
    SiteTensor ta = SiteTensor::from_family(fam);
    long long tilde = fam.aux.state_index(1, HalfInt::from_int(0));
    long long d = fam.aux.dimension();

    SiteTensor tc;
    tc.spin = spec.s;
    for (long long tm = -spec.s.twice(); tm <= spec.s.twice(); tm += 2) {
        HalfInt m = HalfInt::from_twice(tm);
        CMatrix c = CMatrix::Zero(d, d);
        auto it = spec.alpha.find(m);
        if (it != spec.alpha.end()) c(tilde, tilde) = it->second;
        tc.matrices.emplace(m, c);
    }

    MpsChain chain{3 * n_periods, {ta, ta, tc}};
    chain.validate();
    return chain;
}

struct ContractionIdentityReport {
    Complex coefficient;   // measured <S|_23 (|S>_12 |S>_34) / |S>_14 ratio
    Complex expected;      // epsilon / (2s+1)
    double residual = 0.0; // norm of contracted vector minus expected multiple
    bool pass = false;
};

// Verify  <S|_23 (|S>_12 |S>_34) = (epsilon/(2s+1)) |S>_14  on the explicit
// four-site space.
inline ContractionIdentityReport contraction_identity_check(HalfInt s, double tol = 1e-9) {
    long long d = s.multiplicity();
    check_dimension_cap(d * d * d * d);
    CVector sv = singlet(s);
    CVector full = kron(sv, sv); // sites 1..4

    CVector contracted = CVector::Zero(d * d); // sites 1,4
    for (long long i1 = 0; i1 < d; ++i1)
        for (long long i4 = 0; i4 < d; ++i4) {
            Complex acc(0, 0);
            for (long long i2 = 0; i2 < d; ++i2)
                for (long long i3 = 0; i3 < d; ++i3)
                    acc += std::conj(sv(i2 * d + i3)) * full(((i1 * d + i2) * d + i3) * d + i4);
            contracted(i1 * d + i4) = acc;
        }

    ContractionIdentityReport rep;
    rep.expected = Complex(static_cast<double>(epsilon_sign(s)) / static_cast<double>(d), 0.0);
    rep.coefficient = sv.dot(contracted); // <S|contracted>, |S> unit norm
    rep.residual = (contracted - rep.coefficient * sv).norm();
    rep.pass = rep.residual <= tol && std::abs(rep.coefficient - rep.expected) <= tol;
    return rep;
}

struct DimerPredictions {
    double overlap;    // <phi_1|phi_2> = eps^N / (2s+1)^(N-1)
    double norm_plus;  // 2 (1 + overlap)
    double norm_minus; // 2 (1 - overlap)
    double corr_plus;  // <s_1·s_2> in |phi_1> + |phi_2>
    double corr_minus; // <s_1·s_2> in |phi_1> - |phi_2>
};

// Closed-form overlap, norms and nearest-neighbour correlations for the
// superpositions of the two dimer coverings on a 2N-site ring.
inline DimerPredictions analytic_predictions(HalfInt s, long long n_pairs) {
    if (n_pairs < 1) throw std::invalid_argument("analytic_predictions: need n_pairs >= 1");
    double d = static_cast<double>(s.multiplicity());
    double ss1 = s.value() * (s.value() + 1.0);
    double epsN = std::pow(static_cast<double>(epsilon_sign(s)), static_cast<double>(n_pairs));
    double dN1 = std::pow(d, static_cast<double>(n_pairs - 1));
    DimerPredictions out;
    out.overlap = epsN / dN1;
    out.norm_plus = 2.0 * (1.0 + out.overlap);
    out.norm_minus = 2.0 * (1.0 - out.overlap);
    out.corr_plus = -(ss1 / 2.0) * (dN1 + 2.0 * epsN) / (dN1 + epsN);
    out.corr_minus = -(ss1 / 2.0) * (dN1 - 2.0 * epsN) / (dN1 - epsN);
    return out;
}

// s_a · s_b between two sites of a multi-site system.
inline CMatrix spin_dot_spin(const SiteSystem& sys, std::size_t a, std::size_t b) {
    if (a >= sys.site_spins.size() || b >= sys.site_spins.size() || a == b)
        throw std::invalid_argument("spin_dot_spin: bad site indices");
    auto dims = sys.dims();
    check_dimension_cap(product_dimension(dims));
    GeneratorTriple ga = irrep_generators(sys.site_spins[a]);
    GeneratorTriple gb = irrep_generators(sys.site_spins[b]);
    CMatrix za = embed_single_site(ga.lz, a, dims), zb = embed_single_site(gb.lz, b, dims);
    CMatrix pa = embed_single_site(ga.lplus, a, dims), pb = embed_single_site(gb.lplus, b, dims);
    CMatrix ma = embed_single_site(ga.lminus, a, dims), mb = embed_single_site(gb.lminus, b, dims);
    return za * zb + (pa * mb + ma * pb) / 2.0;
}

// Normalized two-site correlation <psi| s_a·s_b |psi> / <psi|psi> on a
// uniform spin-s register, brute force.
inline double state_correlation(const CVector& psi, HalfInt s, long long n_sites,
                                std::size_t a, std::size_t b) {
    SiteSystem sys = uniform_sites(s, n_sites);
    if (psi.size() != sys.dimension())
        throw std::invalid_argument("state_correlation: state dimension mismatch");
    CMatrix op = spin_dot_spin(sys, a, b);
    Complex num = psi.dot(op * psi);
    double den = psi.squaredNorm();
    if (den == 0.0) throw std::invalid_argument("state_correlation: zero state");
    return num.real() / den;
}

} // namespace vbmps

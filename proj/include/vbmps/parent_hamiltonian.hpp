#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbmps/angular_momentum.hpp"
#include "vbmps/config.hpp"
#include "vbmps/half_int.hpp"
#include "vbmps/linalg.hpp"
#include "vbmps/spherical_tensors.hpp"
#include "vbmps/valence_bond.hpp"

namespace vbmps {

// One irreducible su(2) block inside a null space: a highest-weight vector
// and the 2j+1 members generated from it.  Degenerate copies of the same j
// are distinguished by primes on the label ("2", "2'", ...).
struct Multiplet {
    HalfInt j;
    std::string label;
    CVector top;
    std::vector<CVector> members;
};

struct NullSpaceResult {
    long long k = 0;                // window size
    std::vector<CVector> basis;     // orthonormal kernel of the product map
    std::vector<Multiplet> multiplets; // filled by classify_multiplets
};

// Kernel of the map c ↦ sum_config c_config A_{c1}...A_{ck}: the columns of
// the D² × d^k matrix are the vectorized k-fold products in lexicographic
// (m-descending) configuration order.
inline NullSpaceResult null_space(const SphericalTensorFamily& fam, long long k,
                                  const ToleranceConfig& tol = {}) {
    if (k < 1) throw std::invalid_argument("null_space: window size must be positive");
    long long d = fam.physical_dimension();
    long long aux = fam.aux_dimension();
    std::vector<long long> dims(static_cast<std::size_t>(k), d);
    long long total = product_dimension(dims);
    check_dimension_cap(total);

    std::vector<CMatrix> comps = fam.components_descending();
    CMatrix m(aux * aux, total);
    for (long long flat = 0; flat < total; ++flat) {
        auto idx = unflatten_index(flat, dims);
        CMatrix prod = comps[static_cast<std::size_t>(idx[0])];
        for (long long i = 1; i < k; ++i)
            prod = prod * comps[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        m.col(flat) = vec(prod);
    }

    NullSpaceResult out;
    out.k = k;
    out.basis = kernel_basis(m, tol);
    return out;
}

namespace detail {

// Deterministic orthonormal basis of the subspace spanned by the columns of
// t: Gram-Schmidt over the projections of the standard basis vectors taken
// in lexicographic order.  Independent of how t itself was produced.
inline std::vector<CVector> canonical_subspace_basis(const CMatrix& t, double keep_tol = 1e-8) {
    std::vector<CVector> out;
    if (t.cols() == 0) return out;
    Eigen::Index w = t.rows();
    CMatrix proj = t * t.adjoint();
    for (Eigen::Index i = 0; i < w && static_cast<Eigen::Index>(out.size()) < t.cols(); ++i) {
        CVector v = proj.col(i);
        for (const CVector& b : out) v -= b.dot(v) * b;
        if (v.norm() > keep_tol) out.push_back(phase_fix(v / v.norm()));
    }
    if (static_cast<Eigen::Index>(out.size()) != t.cols())
        throw std::runtime_error("canonical_subspace_basis: failed to span the subspace");
    return out;
}

} // namespace detail

// Classify a null space into su(2) multiplets.  The total-spin Casimir is
// restricted to the null span (an invariant subspace), eigenvalues are
// grouped by j(j+1), and for each j the highest-weight subspace is computed;
// every multiplet is then generated by lowering.  preferred_tops, when
// given, override the canonical top choice for their j-blocks after being
// validated (membership in the null span plus the highest-weight
// conditions); this is the hook for pinning a printed degenerate split.
inline NullSpaceResult classify_multiplets(NullSpaceResult ns, const SiteSystem& sys,
                                           const std::vector<CVector>& preferred_tops = {},
                                           const ToleranceConfig& tol = {}) {
    tol.validate();
    long long w = sys.dimension();
    if (!ns.basis.empty() && ns.basis.front().size() != w)
        throw std::invalid_argument("classify_multiplets: null basis does not live on the system");
    ns.multiplets.clear();
    if (ns.basis.empty()) return ns;

    Eigen::Index r = static_cast<Eigen::Index>(ns.basis.size());
    CMatrix q(w, r);
    for (Eigen::Index i = 0; i < r; ++i) q.col(i) = ns.basis[static_cast<std::size_t>(i)];

    TotalSpin ts = total_spin_operators(sys);
    CMatrix p_delta = q * q.adjoint();
    CMatrix id = CMatrix::Identity(w, w);
    for (const CMatrix* g : {&ts.triple.lz, &ts.triple.lplus, &ts.triple.lminus}) {
        double leak = ((id - p_delta) * (*g) * p_delta).norm();
        if (leak > tol.assert_tol)
            throw std::runtime_error("classify_multiplets: null span is not su(2)-invariant (leak " +
                                     std::to_string(leak) + ")");
    }

    // Group restricted-Casimir eigenvectors by the spin j they belong to.
    HermitianEig eig = eig_hermitian(q.adjoint() * ts.casimir * q, tol.assert_tol);
    std::map<HalfInt, std::vector<Eigen::Index>> groups;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
        groups[spin_from_casimir_eigenvalue(eig.eigenvalues(i))].push_back(i);

    // Sort and validate the preferred tops by their j.
    std::map<HalfInt, std::vector<CVector>> preferred;
    for (const CVector& t : preferred_tops) {
        if (t.size() != w)
            throw std::invalid_argument("classify_multiplets: preferred top has wrong dimension");
        CVector tn = t / t.norm();
        if (((id - p_delta) * tn).norm() > tol.assert_tol)
            throw std::invalid_argument("classify_multiplets: preferred top not in the null space");
        double jval = (tn.adjoint() * ts.triple.lz * tn)(0).real();
        HalfInt j = HalfInt::from_twice(std::llround(2.0 * jval));
        if ((ts.triple.lz * tn - j.value() * tn).norm() > tol.assert_tol ||
            (ts.triple.lplus * tn).norm() > tol.assert_tol)
            throw std::invalid_argument("classify_multiplets: preferred top is not highest weight");
        preferred[j].push_back(tn);
    }

    // Descending j, matching the order multiplet lists are printed in.
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        HalfInt j = it->first;
        const auto& idxs = it->second;
        long long block = static_cast<long long>(idxs.size());
        long long mult = j.multiplicity();
        if (block % mult != 0)
            throw std::runtime_error("classify_multiplets: spin-" + j.str() +
                                     " block size is not a multiple of 2j+1");
        long long copies = block / mult;

        CMatrix wj(w, block);
        for (long long c = 0; c < block; ++c)
            wj.col(c) = q * eig.eigenvectors.col(idxs[static_cast<std::size_t>(c)]);

        std::vector<CVector> tops;
        auto pit = preferred.find(j);
        if (pit != preferred.end()) {
            if (static_cast<long long>(pit->second.size()) != copies)
                throw std::invalid_argument("classify_multiplets: need exactly " +
                                            std::to_string(copies) + " preferred tops for j = " +
                                            j.str());
            // Orthonormalize in the given order so the printed split is kept.
            for (CVector t : pit->second) {
                for (const CVector& b : tops) t -= b.dot(t) * b;
                if (t.norm() < tol.assert_tol)
                    throw std::invalid_argument(
                        "classify_multiplets: preferred tops for j = " + j.str() +
                        " are linearly dependent");
                tops.push_back(t / t.norm());
            }
        } else {
            // Canonical deterministic choice: highest-weight subspace of the
            // j-block, then the lexicographic Gram-Schmidt basis.
            CMatrix constraint(2 * w, block);
            constraint.topRows(w) = ts.triple.lz * wj - j.value() * wj;
            constraint.bottomRows(w) = ts.triple.lplus * wj;
            std::vector<CVector> y = kernel_basis(constraint, tol);
            if (static_cast<long long>(y.size()) != copies)
                throw std::runtime_error("classify_multiplets: top-weight count mismatch for j = " +
                                         j.str());
            CMatrix tmat(w, copies);
            for (long long c = 0; c < copies; ++c) tmat.col(c) = wj * y[static_cast<std::size_t>(c)];
            for (CVector& t : detail::canonical_subspace_basis(tmat)) tops.push_back(t);
        }

        for (long long c = 0; c < copies; ++c) {
            Multiplet m;
            m.j = j;
            m.label = j.str() + std::string(static_cast<std::size_t>(c), '\'');
            m.top = tops[static_cast<std::size_t>(c)];
            m.members = multiplet_from_top(m.top, ts.triple, tol.assert_tol);
            ns.multiplets.push_back(std::move(m));
        }
    }
    return ns;
}

// Positive couplings keyed by multiplet label.
struct CouplingSpec {
    std::map<std::string, double> lambda;

    double at(const std::string& label) const {
        auto it = lambda.find(label);
        if (it == lambda.end())
            throw std::invalid_argument("CouplingSpec: missing coupling for multiplet '" + label + "'");
        if (it->second <= 0.0)
            throw std::invalid_argument("CouplingSpec: coupling for '" + label + "' must be positive");
        return it->second;
    }
};

struct LocalHamiltonian {
    long long k = 0;        // window size
    long long site_dim = 0; // physical dimension of each window site
    CMatrix h;
};

// h = sum_mu lambda_mu sum_beta |e^mu_beta><e^mu_beta| over the classified
// multiplets.  Uniform couplings within each multiplet make h an su(2)
// scalar on the window.
inline LocalHamiltonian local_hamiltonian(const NullSpaceResult& ns, const SiteSystem& sys,
                                          const CouplingSpec& coup) {
    if (ns.multiplets.empty())
        throw std::invalid_argument("local_hamiltonian: classify_multiplets must run first");
    long long w = sys.dimension();
    LocalHamiltonian out;
    out.k = ns.k;
    out.site_dim = sys.site_spins.front().multiplicity();
    out.h = CMatrix::Zero(w, w);
    for (const Multiplet& m : ns.multiplets) {
        double lam = coup.at(m.label);
        for (const CVector& e : m.members) out.h += lam * (e * e.adjoint());
    }
    return out;
}

// H = sum over ring positions of the embedded window term.
inline CMatrix assemble_hamiltonian(const LocalHamiltonian& local, long long n_sites,
                                    bool periodic = true) {
    if (n_sites < local.k)
        throw std::invalid_argument("assemble_hamiltonian: chain shorter than the window");
    std::vector<long long> dims(static_cast<std::size_t>(n_sites), local.site_dim);
    check_dimension_cap(product_dimension(dims));
    long long total = product_dimension(dims);
    CMatrix h = CMatrix::Zero(total, total);
    long long last = periodic ? n_sites - 1 : n_sites - local.k;
    for (long long start = 0; start <= last; ++start)
        h += embed_window_operator(local.h, start, local.k, dims);
    return h;
}

struct GroundStateReport {
    std::vector<double> residuals; // ||H psi_hat|| per supplied state
    double min_eigenvalue = 0.0;
    long long ground_space_dim = 0; // eigenvalues <= psd_tol
    bool pass = false;              // all residuals <= tol and H >= -psd_tol
};

inline GroundStateReport verify_ground_state(const CMatrix& h, const std::vector<CVector>& states,
                                             const ToleranceConfig& tol = {}) {
    tol.validate();
    GroundStateReport rep;
    for (const CVector& psi : states) {
        if (psi.size() != h.rows())
            throw std::invalid_argument("verify_ground_state: state dimension mismatch");
        double n = psi.norm();
        if (n == 0.0) throw std::invalid_argument("verify_ground_state: zero state");
        rep.residuals.push_back((h * psi).norm() / n);
    }
    HermitianEig eig = eig_hermitian(h, tol.assert_tol);
    rep.min_eigenvalue = eig.eigenvalues(0);
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
        if (eig.eigenvalues(i) <= tol.psd_tol) ++rep.ground_space_dim;
    rep.pass = rep.min_eigenvalue >= -tol.psd_tol;
    for (double r : rep.residuals) rep.pass = rep.pass && r <= tol.assert_tol * 10;
    return rep;
}

// Coefficients of a local operator in a named basis.
struct OperatorExpansion {
    std::vector<std::string> labels;
    RVector coefficients;
    double residual = 0.0;
};

// --- the spin-1, window-3 coupling table --------------------------------

// The five highest-weight states of the spin-1 three-site null space, in
// the order (3, 2, 2', 1, 0).  Components are specified by m-value triples
// in the standard lexicographic basis.
inline std::vector<CVector> spin1_preferred_tops() {
    std::vector<long long> dims{3, 3, 3};
    auto ket = [&](long long m1, long long m2, long long m3) {
        CVector v = CVector::Zero(27);
        v(flatten_index({1 - m1, 1 - m2, 1 - m3}, dims)) = 1.0;
        return v;
    };
    std::vector<CVector> tops;
    tops.push_back(ket(1, 1, 1));
    tops.push_back(ket(1, 1, 0) - ket(0, 1, 1));
    tops.push_back(ket(1, 1, 0) - 2.0 * ket(1, 0, 1) + ket(0, 1, 1));
    tops.push_back(ket(1, 0, 0) + ket(0, 0, 1) + 3.0 * ket(-1, 1, 1) + 3.0 * ket(1, 1, -1) -
                   2.0 * ket(1, -1, 1) - 4.0 * ket(0, 1, 0));
    tops.push_back(ket(1, -1, 0) - ket(-1, 1, 0) - ket(1, 0, -1) + ket(-1, 0, 1) +
                   ket(0, 1, -1) - ket(0, -1, 1));
    return tops;
}

inline const std::vector<std::string>& spin1_operator_labels() {
    static const std::vector<std::string> labels{
        "I",
        "(s12+s23)/2",
        "s13",
        "(s12^2+s23^2)/2",
        "s13^2",
        "{s12,s23}",
        "{s13,{s12,s23}}",
        "s12*s13*s23+s23*s13*s12",
    };
    return labels;
}

// The eight-operator basis on three spin-1 sites.  The nearest-neighbour
// channels are symmetrized over the window's two bonds because the chain
// Hamiltonian is a translation-invariant ring sum: only the reflection-
// symmetric combination of s12 and s23 has a well-defined coefficient.
inline std::vector<CMatrix> spin1_operator_basis() {
    SiteSystem sys = uniform_sites(HalfInt::from_int(1), 3);
    CMatrix s12 = spin_dot_spin(sys, 0, 1);
    CMatrix s13 = spin_dot_spin(sys, 0, 2);
    CMatrix s23 = spin_dot_spin(sys, 1, 2);
    std::vector<CMatrix> basis;
    basis.push_back(CMatrix::Identity(27, 27));
    basis.push_back((s12 + s23) / 2.0);
    basis.push_back(s13);
    basis.push_back((s12 * s12 + s23 * s23) / 2.0);
    basis.push_back(s13 * s13);
    basis.push_back(anticomm(s12, s23));
    basis.push_back(anticomm(s13, anticomm(s12, s23)));
    basis.push_back(s12 * s13 * s23 + s23 * s13 * s12);
    return basis;
}

struct Spin1Couplings {
    double l0 = 0, l1 = 0, l2 = 0, l2p = 0, l3 = 0;
};

// The printed J0..J7 as closed-form functions of the lambdas.
inline RVector spin1_printed_couplings(const Spin1Couplings& lam) {
    RVector j(8);
    j(0) = -2 * lam.l0 + 3.0 / 5.0 * lam.l1 + (lam.l2 + lam.l2p) / 3.0 + lam.l3 / 15.0;
    j(1) = 2 * lam.l0 - 2.0 / 5.0 * lam.l1 - (lam.l2 + lam.l2p) / 3.0 + 11.0 / 15.0 * lam.l3;
    j(2) = -3 * lam.l0 + lam.l1 / 20.0 + (lam.l2 + lam.l2p) / 2.0 - 3.0 / 10.0 * lam.l3;
    j(3) = 2 * lam.l0 - 13.0 / 20.0 * lam.l1 - (lam.l2 - lam.l2p) / 6.0 + lam.l3 / 15.0;
    j(4) = lam.l0 + lam.l1 / 20.0 + (lam.l2 - lam.l2p) / 6.0 + lam.l3 / 30.0;
    j(5) = lam.l0 - (lam.l2 + lam.l2p) / 6.0 + lam.l3 / 6.0;
    j(6) = -lam.l0 + lam.l1 / 10.0 + lam.l2p / 6.0 - lam.l3 / 10.0;
    j(7) = lam.l0 - lam.l1 / 40.0 - (lam.l2 + 5.0 * lam.l2p) / 12.0 + 7.0 / 30.0 * lam.l3;
    return j;
}

// The classified three-site spin-1 null space with the printed split of the
// two spin-2 copies.  Build once and reuse: classification is deterministic.
inline NullSpaceResult spin1_null_multiplets(const ToleranceConfig& tol = {}) {
    SiteSystem sys = uniform_sites(HalfInt::from_int(1), 3);
    NullSpaceResult ns = null_space(canonical_tensor(HalfInt::from_int(1)), 3, tol);
    return classify_multiplets(std::move(ns), sys, spin1_preferred_tops(), tol);
}

// The local three-site Hamiltonian whose expansion reproduces the printed
// table.  Relative to the multiplet labels (3, 2, 2', 1, 0) fixed by the
// preferred tops, the printed table couples lambda2 to the SECOND spin-2
// copy and lambda2' to the first, and its lambda0 channel carries the
// squared norm 6 of the unnormalized spin-0 top:
//   h = 6 l0 P_0 + l1 P_1 + l2 P_2' + l2' P_2 + l3 P_3.
// This association is pinned numerically: it reproduces the printed
// formulas to ~1e-13 over random draws, and no other assignment does.
// Zero couplings are allowed here (single-column table evaluations); the
// positivity requirement applies to ground-state Hamiltonians, not to the
// expansion bookkeeping.
inline LocalHamiltonian spin1_local_hamiltonian(const Spin1Couplings& lam,
                                                const NullSpaceResult& classified) {
    std::map<std::string, double> weight{
        {"3", lam.l3}, {"2", lam.l2p}, {"2'", lam.l2}, {"1", lam.l1}, {"0", 6.0 * lam.l0}};
    LocalHamiltonian out;
    out.k = 3;
    out.site_dim = 3;
    out.h = CMatrix::Zero(27, 27);
    for (const Multiplet& m : classified.multiplets) {
        auto it = weight.find(m.label);
        if (it == weight.end())
            throw std::invalid_argument("spin1_local_hamiltonian: unexpected multiplet label '" +
                                        m.label + "'");
        for (const CVector& e : m.members) out.h += it->second * (e * e.adjoint());
    }
    return out;
}

inline LocalHamiltonian spin1_local_hamiltonian(const Spin1Couplings& lam,
                                                const ToleranceConfig& tol = {}) {
    return spin1_local_hamiltonian(lam, spin1_null_multiplets(tol));
}

struct Spin1CouplingReport {
    std::vector<std::string> labels;
    RVector fitted;  // least-squares J from the operator fit
    RVector printed; // closed-form J
    double fit_residual = 0.0;
    double max_mismatch = 0.0;
    bool pass = false;
};

// Build h(lambda), expand it over the eight-operator basis, and compare the
// fitted couplings against the printed formulas.  Pass a precomputed
// classification (and basis) when evaluating many draws.
inline Spin1CouplingReport spin1_coupling_table(const Spin1Couplings& lam,
                                                const NullSpaceResult& classified,
                                                const std::vector<CMatrix>& basis,
                                                const ToleranceConfig& tol = {}) {
    LocalHamiltonian local = spin1_local_hamiltonian(lam, classified);
    FitResult fit = fit_operator_expansion(local.h, basis, tol.assert_tol);
    Spin1CouplingReport rep;
    rep.labels = spin1_operator_labels();
    rep.fitted = fit.coefficients.real();
    rep.printed = spin1_printed_couplings(lam);
    rep.fit_residual = fit.residual;
    rep.max_mismatch = (rep.fitted - rep.printed).cwiseAbs().maxCoeff();
    rep.pass = rep.fit_residual <= tol.assert_tol && rep.max_mismatch <= tol.assert_tol;
    return rep;
}

inline Spin1CouplingReport spin1_coupling_table(const Spin1Couplings& lam,
                                                const ToleranceConfig& tol = {}) {
    return spin1_coupling_table(lam, spin1_null_multiplets(tol), spin1_operator_basis(), tol);
}

// The one-parameter family lambda1 = 8 + 2*lambda2/3, lambda2' = 12 +
// 2*lambda2, lambda3 = 18 + 4*lambda2 (lambda0 = 1) along which the J3, J4,
// J6, J7 couplings vanish identically.
inline Spin1Couplings spin1_parametric_family(double lambda2) {
    Spin1Couplings lam;
    lam.l0 = 1.0;
    lam.l1 = 8.0 + 2.0 * lambda2 / 3.0;
    lam.l2 = lambda2;
    lam.l2p = 12.0 + 2.0 * lambda2;
    lam.l3 = 18.0 + 4.0 * lambda2;
    return lam;
}

// --- VBS parent Hamiltonians ---------------------------------------------

// h = sum of lambda_j P_j over the fusion-forbidden channels
// max(2s,2s') < j <= 2s+2s', acting on two spin-(s+s') sites.  The ranges
// of those projectors are checked to lie inside the null space of the V
// tensor at window 2, which is what makes h a parent Hamiltonian.
inline LocalHamiltonian vbs_parent(HalfInt s, HalfInt s2, const std::map<HalfInt, double>& coup,
                                   bool cross_validate = true, const ToleranceConfig& tol = {}) {
    HalfInt rank = s + s2;
    HalfInt jmin = std::max(HalfInt::from_twice(2 * s.twice()), HalfInt::from_twice(2 * s2.twice()));
    HalfInt jmax = HalfInt::from_twice(2 * rank.twice());

    SiteSystem sys = uniform_sites(rank, 2);
    auto projectors = casimir_projectors(sys, tol.assert_tol);

    LocalHamiltonian out;
    out.k = 2;
    out.site_dim = rank.multiplicity();
    long long w = sys.dimension();
    out.h = CMatrix::Zero(w, w);

    CMatrix null_proj;
    if (cross_validate) {
        NullSpaceResult ns = null_space(vbs_tensor(s, s2), 2, tol);
        CMatrix q(w, static_cast<Eigen::Index>(ns.basis.size()));
        for (std::size_t i = 0; i < ns.basis.size(); ++i)
            q.col(static_cast<Eigen::Index>(i)) = ns.basis[i];
        null_proj = q * q.adjoint();
    }

    for (HalfInt j = jmin + HalfInt::from_int(1); j <= jmax; j = j + HalfInt::from_int(1)) {
        auto it = coup.find(j);
        if (it == coup.end())
            throw std::invalid_argument("vbs_parent: missing coupling for j = " + j.str());
        if (it->second <= 0.0)
            throw std::invalid_argument("vbs_parent: coupling for j = " + j.str() +
                                        " must be positive");
        auto pj = projectors.find(j);
        if (pj == projectors.end())
            throw std::runtime_error("vbs_parent: spin-" + j.str() +
                                     " absent from the two-site decomposition");
        if (cross_validate) {
            double leak = ((CMatrix::Identity(w, w) - null_proj) * pj->second).norm();
            if (leak > tol.assert_tol)
                throw std::runtime_error("vbs_parent: projector range for j = " + j.str() +
                                         " is not inside the V-tensor null space (leak " +
                                         std::to_string(leak) + ")");
        }
        out.h += it->second * pj->second;
    }
    return out;
}

// Expansion of the two-site spin-1 projector P_2 in {I, S1·S2, (S1·S2)^2}:
// coefficients (1/3, 1/2, 1/6), the AKLT interaction up to scale and shift.
inline OperatorExpansion aklt_spin1_parent(const ToleranceConfig& tol = {}) {
    SiteSystem sys = uniform_sites(HalfInt::from_int(1), 2);
    CMatrix p2 = casimir_projector(sys, HalfInt::from_int(2), tol.assert_tol);
    CMatrix x = spin_dot_spin(sys, 0, 1);
    std::vector<CMatrix> basis{CMatrix::Identity(9, 9), x, x * x};
    FitResult fit = fit_operator_expansion(p2, basis, tol.assert_tol);
    OperatorExpansion out;
    out.labels = {"I", "S1.S2", "(S1.S2)^2"};
    out.coefficients = fit.coefficients.real();
    out.residual = fit.residual;
    return out;
}

} // namespace vbmps

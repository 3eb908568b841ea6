#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "vbmps/config.hpp"

namespace vbmps {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline CMatrix dagger(const CMatrix& m) { return m.adjoint(); }

inline CMatrix comm(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

inline CMatrix anticomm(const CMatrix& a, const CMatrix& b) { return a * b + b * a; }

inline double max_abs(const CMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const CMatrix& m, double tol) {
    return m.rows() == m.cols() && (m - m.adjoint()).norm() <= tol;
}

// Kronecker product, row/col blocks ordered so that
// (a ⊗ b)(i1*rb+i2, j1*cb+j2) = a(i1,j1) b(i2,j2).
inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Column-major vectorization; with this convention vec(AXB) = (Bᵀ ⊗ A) vec(X),
// so the adjoint action X ↦ [A, X] has matrix I ⊗ A − Aᵀ ⊗ I.
inline CVector vec(const CMatrix& m) {
    return Eigen::Map<const CVector>(m.data(), m.size());
}

inline CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols)
        throw std::invalid_argument("unvec: size mismatch");
    return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

inline CMatrix adjoint_action_matrix(const CMatrix& a) {
    Eigen::Index n = a.rows();
    CMatrix id = CMatrix::Identity(n, n);
    return kron(id, a) - kron(a.transpose(), id);
}

// Multiply v by a unit phase so its first component of non-negligible
// magnitude becomes real and positive.  Makes SVD-derived bases reproducible.
inline CVector phase_fix(const CVector& v, double threshold = 1e-12) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > threshold) {
            Complex phase = v(i) / std::abs(v(i));
            return v / phase;
        }
    }
    return v;
}

// Orthonormal basis of {x : Mx = 0}.  Kernel directions are the right
// singular vectors whose singular value falls below rank_tol times the
// largest one; they are returned in descending-singular-value order with
// the phase convention of phase_fix.
inline std::vector<CVector> kernel_basis(const CMatrix& m, const ToleranceConfig& tol = {}) {
    tol.validate();
    if (m.size() == 0) throw std::invalid_argument("kernel_basis: empty matrix");
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() > 0 ? sv(0) : 0.0;
    double cut = tol.rank_tol * std::max(smax, 1.0);
    std::vector<CVector> basis;
    // Singular values come out descending, so kernel columns are the tail.
    Eigen::Index n = m.cols();
    for (Eigen::Index i = 0; i < n; ++i) {
        double s = i < sv.size() ? sv(i) : 0.0;
        if (s <= cut) basis.push_back(phase_fix(svd.matrixV().col(i)));
    }
    return basis;
}

inline Eigen::Index numerical_rank(const CMatrix& m, const ToleranceConfig& tol = {}) {
    return m.cols() - static_cast<Eigen::Index>(kernel_basis(m, tol).size());
}

struct HermitianEig {
    RVector eigenvalues;   // ascending
    CMatrix eigenvectors;  // columns, orthonormal
};

inline HermitianEig eig_hermitian(const CMatrix& m, double assert_tol = 1e-9) {
    if (!is_hermitian(m, assert_tol))
        throw std::invalid_argument("eig_hermitian: matrix is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver((m + m.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: eigensolver failed to converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

struct FitResult {
    CVector coefficients;  // exactly real when target and basis are all Hermitian
    double residual = 0.0; // Frobenius norm of target − Σ cₐ basisₐ
};

// Least-squares expansion of target over a list of basis matrices.  When
// every input is Hermitian the problem is solved in the real vector space
// of Hermitian matrices, which forces the coefficients to come out real.
inline FitResult fit_operator_expansion(const CMatrix& target,
                                        const std::vector<CMatrix>& basis,
                                        double assert_tol = 1e-9) {
    if (basis.empty()) throw std::invalid_argument("fit_operator_expansion: empty basis");
    Eigen::Index n = target.rows();
    if (target.cols() != n)
        throw std::invalid_argument("fit_operator_expansion: target must be square");
    for (const auto& b : basis)
        if (b.rows() != n || b.cols() != n)
            throw std::invalid_argument("fit_operator_expansion: basis dimension mismatch");

    bool all_hermitian = is_hermitian(target, assert_tol);
    for (const auto& b : basis)
        all_hermitian = all_hermitian && is_hermitian(b, assert_tol);

    FitResult out;
    if (all_hermitian) {
        // Stack real and imaginary parts: Hermitian matrices form a real
        // inner-product space, so real least squares is exact here.
        Eigen::MatrixXd A(2 * n * n, static_cast<Eigen::Index>(basis.size()));
        Eigen::VectorXd rhs(2 * n * n);
        CVector tv = vec(target);
        rhs << tv.real(), tv.imag();
        for (std::size_t a = 0; a < basis.size(); ++a) {
            CVector bv = vec(basis[a]);
            A.col(static_cast<Eigen::Index>(a)) << bv.real(), bv.imag();
        }
        Eigen::VectorXd c = A.colPivHouseholderQr().solve(rhs);
        out.coefficients = c.cast<Complex>();
        out.residual = (A * c - rhs).norm();
    } else {
        CMatrix A(n * n, static_cast<Eigen::Index>(basis.size()));
        for (std::size_t a = 0; a < basis.size(); ++a)
            A.col(static_cast<Eigen::Index>(a)) = vec(basis[a]);
        CVector c = A.colPivHouseholderQr().solve(vec(target));
        out.coefficients = c;
        out.residual = (A * c - vec(target)).norm();
    }
    return out;
}

// Haar-distributed random unitary: QR of a complex Ginibre matrix with the
// R diagonal phases absorbed into Q.
inline CMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        Complex d = r(i, i);
        q.col(i) *= (std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0));
    }
    return q;
}

// --- multi-index plumbing over product spaces ---------------------------

// Site 0 is the most significant digit; within each site the states are
// enumerated with m descending, matching the basis contract used everywhere.
inline long long flatten_index(const std::vector<long long>& idx,
                               const std::vector<long long>& dims) {
    long long flat = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) flat = flat * dims[i] + idx[i];
    return flat;
}

inline std::vector<long long> unflatten_index(long long flat,
                                              const std::vector<long long>& dims) {
    std::vector<long long> idx(dims.size());
    for (std::size_t i = dims.size(); i-- > 0;) {
        idx[i] = flat % dims[i];
        flat /= dims[i];
    }
    return idx;
}

inline long long product_dimension(const std::vector<long long>& dims) {
    long long total = 1;
    for (long long d : dims) {
        if (d <= 0) throw std::invalid_argument("product_dimension: nonpositive dimension");
        total *= d;
    }
    return total;
}

// Embed an operator acting on k consecutive ring sites (wrapping past the
// last site) into the full product space, identity elsewhere.
inline CMatrix embed_window_operator(const CMatrix& op, long long start, long long k,
                                     const std::vector<long long>& dims) {
    long long n = static_cast<long long>(dims.size());
    if (k < 1 || k > n) throw std::invalid_argument("embed_window_operator: bad window size");
    std::vector<long long> window_sites(static_cast<std::size_t>(k));
    std::vector<long long> window_dims(static_cast<std::size_t>(k));
    long long wdim = 1;
    for (long long j = 0; j < k; ++j) {
        window_sites[j] = (start + j) % n;
        window_dims[j] = dims[window_sites[j]];
        wdim *= window_dims[j];
    }
    if (op.rows() != wdim || op.cols() != wdim)
        throw std::invalid_argument("embed_window_operator: operator/window dimension mismatch");

    std::vector<long long> rest_sites;
    std::vector<long long> rest_dims;
    std::vector<char> in_window(static_cast<std::size_t>(n), 0);
    for (long long s : window_sites) in_window[s] = 1;
    for (long long s = 0; s < n; ++s)
        if (!in_window[s]) {
            rest_sites.push_back(s);
            rest_dims.push_back(dims[s]);
        }
    long long total = product_dimension(dims);
    long long rdim = total / wdim;
    check_dimension_cap(total);

    CMatrix out = CMatrix::Zero(total, total);
    std::vector<long long> row_idx(static_cast<std::size_t>(n)), col_idx(static_cast<std::size_t>(n));
    for (long long a = 0; a < wdim; ++a) {
        auto ai = unflatten_index(a, window_dims);
        for (long long b = 0; b < wdim; ++b) {
            if (op(a, b) == Complex(0, 0)) continue;
            auto bi = unflatten_index(b, window_dims);
            for (long long r = 0; r < rdim; ++r) {
                auto ri = unflatten_index(r, rest_dims);
                for (long long j = 0; j < k; ++j) {
                    row_idx[window_sites[j]] = ai[j];
                    col_idx[window_sites[j]] = bi[j];
                }
                for (std::size_t j = 0; j < rest_sites.size(); ++j) {
                    row_idx[rest_sites[j]] = ri[j];
                    col_idx[rest_sites[j]] = ri[j];
                }
                out(flatten_index(row_idx, dims), flatten_index(col_idx, dims)) += op(a, b);
            }
        }
    }
    return out;
}

} // namespace vbmps

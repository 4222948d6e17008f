#pragma once

// Cyclic Jacobi eigensolver for Hermitian matrices.
//
// Each rotation absorbs the phase of the pivot entry (so the 2x2 block is
// real symmetric) and annihilates it with the classical small-angle root
// t of t^2 - 2*tau*t - 1 = 0, tau = (a_qq - a_pp) / (2 |a_pq|). Sweeps run
// until the Frobenius mass of the off-diagonal part falls below tolerance.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

#include "charsense/errors.hpp"

namespace charsense {

struct JacobiOptions {
    double off_tolerance = 1e-10;  // Frobenius norm of the off-diagonal part
    int max_sweeps = 100;
};

namespace detail {

inline double off_diagonal_mass(const Eigen::MatrixXcd& a) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (i != j) sum += std::norm(a(i, j));
    return std::sqrt(sum);
}

}  // namespace detail

/// Eigenvalues of a Hermitian matrix, ascending. Throws ConvergenceError
/// if the sweep budget is exhausted.
template <typename Derived>
Eigen::VectorXd hermitian_eigenvalues_jacobi(const Eigen::MatrixBase<Derived>& matrix,
                                             const JacobiOptions& options = {}) {
    Eigen::MatrixXcd a = matrix.template cast<std::complex<double>>();
    if (a.rows() != a.cols())
        throw ValidationError("hermitian_eigenvalues_jacobi: matrix must be square");
    const Eigen::Index n = a.rows();
    if (n == 0) return Eigen::VectorXd();

    bool converged = detail::off_diagonal_mass(a) <= options.off_tolerance;
    for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const std::complex<double> apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                const std::complex<double> phase = apq / r;  // e^{i phi}

                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                const double t = tau >= 0.0 ? tau - std::sqrt(tau * tau + 1.0)
                                            : tau + std::sqrt(tau * tau + 1.0);
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // Columns: J(:,p) = (c, s e^{-i phi}), J(:,q) = (-s, c e^{-i phi}).
                for (Eigen::Index k = 0; k < n; ++k) {
                    const std::complex<double> akp = a(k, p);
                    const std::complex<double> akq = a(k, q);
                    a(k, p) = c * akp + s * std::conj(phase) * akq;
                    a(k, q) = -s * akp + c * std::conj(phase) * akq;
                }
                // Rows: premultiply by J^H.
                for (Eigen::Index k = 0; k < n; ++k) {
                    const std::complex<double> apk = a(p, k);
                    const std::complex<double> aqk = a(q, k);
                    a(p, k) = c * apk + s * phase * aqk;
                    a(q, k) = -s * apk + c * phase * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
        converged = detail::off_diagonal_mass(a) <= options.off_tolerance;
    }
    if (!converged)
        throw ConvergenceError("Jacobi eigensolver did not reach tolerance within " +
                               std::to_string(options.max_sweeps) + " sweeps");

    Eigen::VectorXd eigenvalues = a.diagonal().real();
    std::sort(eigenvalues.begin(), eigenvalues.end());
    return eigenvalues;
}

}  // namespace charsense

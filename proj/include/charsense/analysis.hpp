#pragma once

// Geometric and spectral diagnostics of measurement matrices: exhaustive
// coherence scan, Welch bound, sparsity guarantee, tight-frame deviation,
// and Monte-Carlo condition-number statistics of random column submatrices.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "charsense/hermitian_eigen.hpp"
#include "charsense/sensing.hpp"

namespace charsense {

struct CoherenceReport {
    double mu = 0.0;
    std::pair<std::int64_t, std::int64_t> argmax_pair{0, 0};
    double welch = 0.0;            // NaN when N <= K
    double weil_prediction = 0.0;  // (d-1)/sqrt(K); NaN for non-character kinds
};

struct FrameReport {
    double max_deviation = 0.0;     // max |(A A^H)_ij - (N/K) delta_ij|
    double max_off_diagonal = 0.0;  // row-orthogonality residue
    double redundancy = 0.0;        // N/K target
};

struct SparsityBound {
    double bound = 0.0;            // (sqrt(K)/(d-1) + 1) / 2
    std::int64_t guaranteed = 0;   // largest s satisfying the strict inequality
};

struct SpectralStats {
    std::int64_t s = 0;
    std::int64_t trials = 0;
    double cond_mean = 0.0;
    double cond_std = 0.0;
    double lambda_min_mean = 0.0;
    double lambda_max_mean = 0.0;
    double delta_hat = 0.0;  // max over trials of max(l_max - 1, 1 - l_min)
    std::int64_t singular_trials = 0;
};

/// Exhaustive scan over all N(N-1)/2 column pairs, blocked into Gram
/// panels. The argmax pair is the lexicographically smallest maximizer,
/// independent of the worker count.
CoherenceReport coherence(const SensingMatrix& matrix, unsigned workers = 0);

/// sqrt((N-K)/(K(N-1))); requires N > K.
double welch_bound(std::int64_t K, std::int64_t N);

/// Recovery guarantee threshold from the coherence bound (d-1)/sqrt(K).
SparsityBound sparsity_bound(const ConstructionSpec& spec);

/// Deviation of A A^H from (N/K) I.
FrameReport frame_test(const SensingMatrix& matrix);

/// Eigenvalues of the s x s Gram A_s^H A_s of a K x s submatrix, ascending.
Eigen::VectorXd gram_eigenvalues(const Eigen::MatrixXcd& submatrix,
                                 const JacobiOptions& options = {});

/// sqrt(l_max / l_min); +infinity when l_min <= 1e-14 (singular flag).
double condition_number(const Eigen::MatrixXcd& submatrix,
                        const JacobiOptions& options = {});

/// Condition numbers of `trials` random s-column submatrices. Per-trial RNG
/// streams derive from (seed, s, trial), so results do not depend on the
/// worker count.
SpectralStats condition_stats(const SensingMatrix& matrix, std::int64_t s,
                              std::int64_t trials, std::uint64_t seed,
                              unsigned workers = 0);

/// Same statistics for fresh K x s Gaussian matrices (one per trial).
SpectralStats compare_with_gaussian(std::int64_t K, std::int64_t s, std::int64_t trials,
                                    std::uint64_t seed, unsigned workers = 0);

/// Exact inner product of columns n1, n2 through the additive character
/// sum; the algebraic counterpart to the numeric scan.
std::complex<double> column_inner_product_exact(const ConstructionSpec& spec,
                                                const FieldContext& ctx,
                                                std::int64_t n1, std::int64_t n2);

}  // namespace charsense

#pragma once

// Sparse signal and noise models, matching pursuit, and the Monte-Carlo
// recovery experiments (noiseless and noisy) with per-trial RNG streams.

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "charsense/rng.hpp"
#include "charsense/sensing.hpp"

namespace charsense {

/// Real s-sparse signal: support indices ascending, one amplitude each.
struct SparseSignal {
    Eigen::Index dimension = 0;
    std::vector<std::int64_t> support;
    std::vector<double> values;

    Eigen::VectorXcd to_complex() const;
    double squared_norm() const;
};

struct MpConfig {
    int max_iterations = 100;
    double residual_floor = 1e-12;     // early exit on ||r||
    double success_threshold = 1e-4;   // squared-error bound (1e-2 for noisy runs)
    bool record_steps = false;
};

struct MpStep {
    Eigen::Index index = 0;
    std::complex<double> gain;
    double residual_norm = 0.0;  // after the update
};

struct MpResult {
    Eigen::VectorXcd estimate;
    int iterations = 0;
    std::vector<MpStep> steps;  // populated when record_steps is set
};

struct TrialResult {
    std::int64_t s = 0;
    std::optional<double> snr_db;
    double squared_error = 0.0;
    int iterations_used = 0;
    bool success = false;
};

/// One (s[, snr]) condition of an experiment.
struct ConditionResult {
    std::string family;
    std::int64_t s = 0;
    std::optional<double> snr_db;
    std::int64_t trials = 0;
    std::int64_t successes = 0;
    double success_rate = 0.0;
};

struct ExperimentReport {
    std::string matrix_descriptor;
    std::uint64_t seed = 0;
    std::vector<ConditionResult> conditions;
};

/// Support uniform without replacement (stored ascending), amplitudes
/// i.i.d. standard normal; exact zeros are resampled.
SparseSignal random_sparse_signal(Eigen::Index N, Eigen::Index s, Rng& rng);

/// y = A x.
Eigen::VectorXcd measure(const SensingMatrix& matrix, const SparseSignal& x);

/// y = A x + z with i.i.d. circular complex Gaussian noise calibrated to
/// the realized signal power: sigma_z^2 = ||Ax||^2 / (K * 10^(snr/10)).
Eigen::VectorXcd measure_noisy(const SensingMatrix& matrix, const SparseSignal& x,
                               double snr_db, Rng& rng);

/// Classical matching pursuit: pick the column most correlated with the
/// residual (ties to the smallest index), accumulate its coefficient,
/// deflate the residual; stop at max_iterations or ||r|| < residual_floor.
MpResult matching_pursuit(const SensingMatrix& matrix, const Eigen::VectorXcd& y,
                          const MpConfig& config = {});

/// Squared error sum |x_n - xhat_n|^2 with x treated as complex; success
/// iff the error is strictly below the threshold.
TrialResult evaluate_success(const SparseSignal& x, const Eigen::VectorXcd& estimate,
                             double threshold, int iterations_used = 0,
                             std::optional<double> snr_db = std::nullopt);

enum class MatrixFamily { AdditiveCharacter, PartialFourier };

std::string to_string(MatrixFamily family);

/// Matrix supply for one experiment: a fixed matrix, or a fresh
/// partial-Fourier draw per trial.
struct MatrixSource {
    MatrixFamily family = MatrixFamily::AdditiveCharacter;
    const SensingMatrix* fixed = nullptr;  // required for AdditiveCharacter
    Eigen::Index K = 0;                    // required for PartialFourier
    Eigen::Index N = 0;

    static MatrixSource fixed_matrix(const SensingMatrix& m, MatrixFamily family);
    static MatrixSource fresh_partial_fourier(Eigen::Index K, Eigen::Index N);
};

/// Success rates over s. Signal streams derive from (seed, s, trial) only,
/// so noisy runs at high SNR are trial-for-trial comparable. s = 0 runs the
/// zero signal (trivially successful).
ExperimentReport run_noiseless_experiment(const MatrixSource& source,
                                          std::span<const std::int64_t> s_values,
                                          std::int64_t trials, const MpConfig& config,
                                          std::uint64_t seed, unsigned workers = 0);

/// Success-rate surface over (s, snr_db); requires s >= 1 (a zero signal
/// has no finite SNR).
ExperimentReport run_noisy_experiment(const MatrixSource& source,
                                      std::span<const std::int64_t> s_values,
                                      std::span<const double> snr_grid_db,
                                      std::int64_t trials, const MpConfig& config,
                                      std::uint64_t seed, unsigned workers = 0);

}  // namespace charsense

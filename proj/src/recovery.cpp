#include "charsense/recovery.hpp"

#include <algorithm>
#include <cmath>

#include "charsense/parallel.hpp"

namespace charsense {

namespace {

// RNG stream domain tags (see rng.hpp): signal streams are keyed by
// (s, trial) only so that noiseless and noisy runs share signals; noise and
// per-trial matrices get their own tags. SNR enters the noise key in
// centi-dB to keep the id integral.
constexpr std::uint64_t kStreamSignal = 0x7369676e;  // "sign"
constexpr std::uint64_t kStreamNoise = 0x6e6f6973;   // "nois"
constexpr std::uint64_t kStreamMatrix = 0x6d617472;  // "matr"

std::uint64_t snr_key(double snr_db) {
    return static_cast<std::uint64_t>(std::llround(snr_db * 100.0));
}

TrialResult run_one_trial(const MatrixSource& source, std::int64_t s,
                          std::optional<double> snr_db, const MpConfig& config,
                          std::uint64_t seed, std::uint64_t trial) {
    const auto su = static_cast<std::uint64_t>(s);
    Rng signal_rng = Rng::stream(seed, {kStreamSignal, su, trial});

    const SensingMatrix* matrix = source.fixed;
    std::optional<SensingMatrix> fresh;
    if (source.family == MatrixFamily::PartialFourier) {
        Rng matrix_rng = Rng::stream(seed, {kStreamMatrix, su, trial});
        fresh.emplace(partial_fourier(source.K, source.N, matrix_rng));
        matrix = &*fresh;
    }

    const SparseSignal x = s == 0 ? SparseSignal{matrix->cols(), {}, {}}
                                  : random_sparse_signal(matrix->cols(), s, signal_rng);
    Eigen::VectorXcd y;
    if (snr_db) {
        Rng noise_rng = Rng::stream(seed, {kStreamNoise, su, trial, snr_key(*snr_db)});
        y = measure_noisy(*matrix, x, *snr_db, noise_rng);
    } else {
        y = measure(*matrix, x);
    }
    const MpResult mp = matching_pursuit(*matrix, y, config);
    return evaluate_success(x, mp.estimate, config.success_threshold, mp.iterations,
                            snr_db);
}

ConditionResult run_condition(const MatrixSource& source, std::int64_t s,
                              std::optional<double> snr_db, std::int64_t trials,
                              const MpConfig& config, std::uint64_t seed,
                              unsigned workers) {
    std::vector<std::uint8_t> success(static_cast<std::size_t>(trials), 0);
    parallel_trials(static_cast<std::size_t>(trials), workers, [&](std::size_t t) {
        success[t] = run_one_trial(source, s, snr_db, config, seed,
                                   static_cast<std::uint64_t>(t))
                         .success
                         ? 1
                         : 0;
    });
    ConditionResult row;
    row.family = to_string(source.family);
    row.s = s;
    row.snr_db = snr_db;
    row.trials = trials;
    for (auto v : success) row.successes += v;
    row.success_rate = static_cast<double>(row.successes) / static_cast<double>(trials);
    return row;
}

std::string source_descriptor(const MatrixSource& source) {
    if (source.family == MatrixFamily::PartialFourier)
        return "partial-fourier K=" + std::to_string(source.K) +
               " N=" + std::to_string(source.N) + " (fresh draw per trial)";
    return source.fixed->descriptor();
}

}  // namespace

Eigen::VectorXcd SparseSignal::to_complex() const {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dimension);
    for (std::size_t i = 0; i < support.size(); ++i)
        out(support[i]) = std::complex<double>(values[i], 0.0);
    return out;
}

double SparseSignal::squared_norm() const {
    double sum = 0.0;
    for (double v : values) sum += v * v;
    return sum;
}

SparseSignal random_sparse_signal(Eigen::Index N, Eigen::Index s, Rng& rng) {
    if (s < 1 || s > N)
        throw RangeError("random_sparse_signal: need 1 <= s <= N");
    SparseSignal x;
    x.dimension = N;
    x.support = sample_without_replacement(N, s, rng);
    std::sort(x.support.begin(), x.support.end());
    x.values.resize(static_cast<std::size_t>(s));
    for (auto& v : x.values) {
        do {
            v = rng.normal();
        } while (v == 0.0);
    }
    return x;
}

Eigen::VectorXcd measure(const SensingMatrix& matrix, const SparseSignal& x) {
    if (x.dimension != matrix.cols())
        throw RangeError("measure: signal dimension does not match the matrix");
    return matrix.combine(x.support, x.values);
}

Eigen::VectorXcd measure_noisy(const SensingMatrix& matrix, const SparseSignal& x,
                               double snr_db, Rng& rng) {
    Eigen::VectorXcd y = measure(matrix, x);
    const double signal_power = y.squaredNorm();
    if (signal_power == 0.0)
        throw ValidationError("measure_noisy: zero signal has no finite SNR");
    const double snr_linear = std::pow(10.0, snr_db / 10.0);
    const double sigma_sq =
        signal_power / (static_cast<double>(matrix.rows()) * snr_linear);
    const double component_sigma = std::sqrt(sigma_sq / 2.0);
    for (Eigen::Index k = 0; k < y.size(); ++k)
        y(k) += std::complex<double>(component_sigma * rng.normal(),
                                     component_sigma * rng.normal());
    return y;
}

MpResult matching_pursuit(const SensingMatrix& matrix, const Eigen::VectorXcd& y,
                          const MpConfig& config) {
    if (y.size() != matrix.rows())
        throw RangeError("matching_pursuit: measurement length does not match K");
    if (config.max_iterations < 1)
        throw ValidationError("matching_pursuit: max_iterations must be >= 1");

    MpResult result;
    result.estimate = Eigen::VectorXcd::Zero(matrix.cols());
    Eigen::VectorXcd residual = y;

    for (int it = 0; it < config.max_iterations; ++it) {
        if (residual.norm() < config.residual_floor) break;
        const Eigen::VectorXcd g = matrix.adjoint_apply(residual);

        Eigen::Index pick = 0;
        double best = -1.0;
        for (Eigen::Index n = 0; n < g.size(); ++n) {
            const double v = std::norm(g(n));
            if (v > best) {  // strict: ties resolve to the smallest index
                best = v;
                pick = n;
            }
        }
        const std::complex<double> gain = g(pick);
        result.estimate(pick) += gain;
        residual -= gain * matrix.column(pick);
        ++result.iterations;
        if (config.record_steps)
            result.steps.push_back({pick, gain, residual.norm()});
    }
    return result;
}

TrialResult evaluate_success(const SparseSignal& x, const Eigen::VectorXcd& estimate,
                             double threshold, int iterations_used,
                             std::optional<double> snr_db) {
    if (estimate.size() != x.dimension)
        throw RangeError("evaluate_success: estimate dimension mismatch");
    Eigen::VectorXcd diff = estimate;
    for (std::size_t i = 0; i < x.support.size(); ++i)
        diff(x.support[i]) -= std::complex<double>(x.values[i], 0.0);
    TrialResult result;
    result.s = static_cast<std::int64_t>(x.support.size());
    result.snr_db = snr_db;
    result.squared_error = diff.squaredNorm();
    result.iterations_used = iterations_used;
    result.success = result.squared_error < threshold;
    return result;
}

std::string to_string(MatrixFamily family) {
    return family == MatrixFamily::AdditiveCharacter ? "additive-character"
                                                     : "partial-fourier";
}

MatrixSource MatrixSource::fixed_matrix(const SensingMatrix& m, MatrixFamily family) {
    MatrixSource source;
    source.family = family;
    source.fixed = &m;
    source.K = m.rows();
    source.N = m.cols();
    return source;
}

MatrixSource MatrixSource::fresh_partial_fourier(Eigen::Index K, Eigen::Index N) {
    MatrixSource source;
    source.family = MatrixFamily::PartialFourier;
    source.K = K;
    source.N = N;
    return source;
}

ExperimentReport run_noiseless_experiment(const MatrixSource& source,
                                          std::span<const std::int64_t> s_values,
                                          std::int64_t trials, const MpConfig& config,
                                          std::uint64_t seed, unsigned workers) {
    if (trials < 1) throw ValidationError("run_noiseless_experiment: trials >= 1");
    ExperimentReport report;
    report.matrix_descriptor = source_descriptor(source);
    report.seed = seed;
    for (std::int64_t s : s_values)
        report.conditions.push_back(
            run_condition(source, s, std::nullopt, trials, config, seed, workers));
    return report;
}

ExperimentReport run_noisy_experiment(const MatrixSource& source,
                                      std::span<const std::int64_t> s_values,
                                      std::span<const double> snr_grid_db,
                                      std::int64_t trials, const MpConfig& config,
                                      std::uint64_t seed, unsigned workers) {
    if (trials < 1) throw ValidationError("run_noisy_experiment: trials >= 1");
    for (std::int64_t s : s_values)
        if (s < 1)
            throw ValidationError("run_noisy_experiment: s must be >= 1 under noise");
    ExperimentReport report;
    report.matrix_descriptor = source_descriptor(source);
    report.seed = seed;
    for (std::int64_t s : s_values)
        for (double snr : snr_grid_db)
            report.conditions.push_back(
                run_condition(source, s, snr, trials, config, seed, workers));
    return report;
}

}  // namespace charsense

#include <doctest.h>

#include <cmath>
#include <set>

#include "charsense/recovery.hpp"

using namespace charsense;

TEST_SUITE("recovery") {

TEST_CASE("random sparse signal: support, amplitudes, determinism") {
    Rng rng(1);
    const SparseSignal x = random_sparse_signal(81, 5, rng);
    CHECK(x.support.size() == 5);
    CHECK(x.values.size() == 5);
    std::set<std::int64_t> uniq(x.support.begin(), x.support.end());
    CHECK(uniq.size() == 5);
    CHECK(std::is_sorted(x.support.begin(), x.support.end()));
    for (double v : x.values) CHECK(v != 0.0);

    Rng r1(9), r2(9);
    const SparseSignal a = random_sparse_signal(100, 10, r1);
    const SparseSignal b = random_sparse_signal(100, 10, r2);
    CHECK(a.support == b.support);
    CHECK(a.values == b.values);

    Rng r3(2);
    const SparseSignal dense = random_sparse_signal(20, 20, r3);
    CHECK(dense.support.size() == 20);
    CHECK_THROWS_AS(random_sparse_signal(10, 11, r3), RangeError);
    CHECK_THROWS_AS(random_sparse_signal(10, 0, r3), RangeError);
}

TEST_CASE("amplitude variance is 1 within 5% over 1e5 draws") {
    Rng rng(123);
    double sumsq = 0.0;
    std::int64_t count = 0;
    while (count < 100000) {
        const SparseSignal x = random_sparse_signal(64, 50, rng);
        for (double v : x.values) sumsq += v * v;
        count += static_cast<std::int64_t>(x.values.size());
    }
    CHECK(std::abs(sumsq / static_cast<double>(count) - 1.0) < 0.05);
}

TEST_CASE("measure: zero signal, sparse combination") {
    const SensingMatrix m = build_construction_1a(3, 2);
    const SparseSignal zero{m.cols(), {}, {}};
    CHECK(measure(m, zero).norm() == 0.0);

    const SparseSignal wrong{m.cols() + 1, {0}, {1.0}};
    CHECK_THROWS_AS(measure(m, wrong), RangeError);
    SparseSignal sig{m.cols(), {1}, {1.0}};
    CHECK_THROWS_AS(evaluate_success(sig, Eigen::VectorXcd::Zero(3), 1e-4), RangeError);
    CHECK_THROWS_AS(matching_pursuit(m, Eigen::VectorXcd::Zero(4)), RangeError);

    SparseSignal x{m.cols(), {3, 10}, {2.0, -1.5}};
    const Eigen::VectorXcd y = measure(m, x);
    const Eigen::VectorXcd expect = 2.0 * m.column(3) - 1.5 * m.column(10);
    CHECK((y - expect).norm() < 1e-15);
}

TEST_CASE("noisy measurement: calibration, zero-signal error, high-SNR limit") {
    const SensingMatrix m = build_construction_1a(3, 2);
    SparseSignal x{m.cols(), {5}, {1.0}};
    const Eigen::VectorXcd clean = measure(m, x);

    Rng rng(55);
    const SparseSignal zero{m.cols(), {}, {}};
    CHECK_THROWS_AS(measure_noisy(m, zero, 20.0, rng), ValidationError);

    // Empirical noise power over many draws matches sigma_z^2 within 5%.
    const double snr_db = 10.0;
    const double sigma_sq = clean.squaredNorm() /
                            (static_cast<double>(m.rows()) * std::pow(10.0, snr_db / 10.0));
    double acc = 0.0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        Rng nrng = Rng::stream(99, {static_cast<std::uint64_t>(t)});
        const Eigen::VectorXcd noisy = measure_noisy(m, x, snr_db, nrng);
        acc += (noisy - clean).squaredNorm() / static_cast<double>(m.rows());
    }
    CHECK(std::abs(acc / trials - sigma_sq) < 0.05 * sigma_sq);

    Rng hrng(7);
    const Eigen::VectorXcd nearly = measure_noisy(m, x, 300.0, hrng);
    CHECK((nearly - clean).norm() < 1e-10);
}

TEST_CASE("matching pursuit recovers a single atom in one step (all columns, all families)") {
    const SensingMatrix ac = build_construction_1a(3, 2);
    Rng rng(31);
    const SensingMatrix pf = partial_fourier(9, 81, rng);
    const SensingMatrix gauss = gaussian_matrix(9, 40, rng);
    for (const SensingMatrix* m : {&ac, &pf, &gauss}) {
        for (std::int64_t n = 0; n < m->cols(); ++n) {
            const MpResult res = matching_pursuit(*m, m->column(n));
            CHECK(res.iterations == 1);
            CHECK(std::abs(res.estimate(n) - 1.0) < 1e-12);
            Eigen::VectorXcd rest = res.estimate;
            rest(n) = 0.0;
            CHECK(rest.norm() < 1e-12);
        }
    }
}

TEST_CASE("matching pursuit on zero input does nothing") {
    const SensingMatrix m = build_construction_1a(3, 2);
    const MpResult res = matching_pursuit(m, Eigen::VectorXcd::Zero(m.rows()));
    CHECK(res.iterations == 0);
    CHECK(res.estimate.norm() == 0.0);
}

TEST_CASE("residual is non-increasing and energy is conserved per step") {
    const SensingMatrix m = build_construction_1a(3, 2);
    Rng rng(77);
    const SparseSignal x = random_sparse_signal(m.cols(), 3, rng);
    const Eigen::VectorXcd y = measure(m, x);
    MpConfig config;
    config.record_steps = true;
    const MpResult res = matching_pursuit(m, y, config);
    double prev = y.norm();
    for (const MpStep& step : res.steps) {
        CHECK(step.residual_norm <= prev + 1e-12);
        // ||r_old||^2 = ||r_new||^2 + |gain|^2 for unit-norm atoms
        const double lhs = prev * prev;
        const double rhs = step.residual_norm * step.residual_norm + std::norm(step.gain);
        CHECK(std::abs(lhs - rhs) < 1e-10);
        prev = step.residual_norm;
    }
}

TEST_CASE("recovery inside the guarantee: s=2 on K=81 always succeeds") {
    const SensingMatrix m = build_construction_1a(3, 4);
    for (int t = 0; t < 25; ++t) {
        Rng rng = Rng::stream(1234, {static_cast<std::uint64_t>(t)});
        const SparseSignal x = random_sparse_signal(m.cols(), 2, rng);
        const Eigen::VectorXcd y = measure(m, x);
        const MpResult res = matching_pursuit(m, y);
        const TrialResult trial = evaluate_success(x, res.estimate, 1e-4, res.iterations);
        CHECK(trial.success);
        CHECK(trial.squared_error < 1e-4);
    }
}

TEST_CASE("evaluate_success: exact, zero estimate, threshold monotonicity") {
    SparseSignal x{10, {2, 7}, {0.6, -0.8}};
    Eigen::VectorXcd exact = x.to_complex();
    const TrialResult hit = evaluate_success(x, exact, 1e-4);
    CHECK(hit.success);
    CHECK(hit.squared_error == 0.0);

    const TrialResult miss = evaluate_success(x, Eigen::VectorXcd::Zero(10), 1e-4);
    CHECK_FALSE(miss.success);
    CHECK(miss.squared_error == doctest::Approx(1.0));  // ||x||^2 = 0.36 + 0.64
    CHECK_FALSE(evaluate_success(x, Eigen::VectorXcd::Zero(10), 1e-2).success);

    // success at 1e-4 implies success at 1e-2
    Eigen::VectorXcd close = exact;
    close(2) += 1e-3;
    const TrialResult fine = evaluate_success(x, close, 1e-4);
    const TrialResult coarse = evaluate_success(x, close, 1e-2);
    CHECK((!fine.success || coarse.success));
    CHECK(coarse.success);
}

TEST_CASE("noiseless experiment: s=0 trivially succeeds, rates populated") {
    const SensingMatrix m = build_construction_1a(3, 2);
    const auto source = MatrixSource::fixed_matrix(m, MatrixFamily::AdditiveCharacter);
    const std::vector<std::int64_t> s_values{0, 1};
    const ExperimentReport report =
        run_noiseless_experiment(source, s_values, 50, MpConfig{}, 5);
    REQUIRE(report.conditions.size() == 2);
    CHECK(report.conditions[0].s == 0);
    CHECK(report.conditions[0].success_rate == doctest::Approx(1.0));
    CHECK(report.conditions[1].trials == 50);
    CHECK(report.conditions[1].success_rate > 0.9);  // s=1 within the guarantee
}

TEST_CASE("noisy experiment rejects s=0 and matches noiseless at high SNR") {
    const SensingMatrix m = build_construction_1a(3, 2);
    const auto source = MatrixSource::fixed_matrix(m, MatrixFamily::AdditiveCharacter);
    const std::vector<std::int64_t> zero{0};
    const std::vector<double> snr{20.0};
    CHECK_THROWS_AS(run_noisy_experiment(source, zero, snr, 10, MpConfig{}, 5),
                    ValidationError);

    const std::vector<std::int64_t> s_values{1};
    const std::vector<double> high{80.0};
    MpConfig noisy_config;
    noisy_config.success_threshold = 1e-2;
    const ExperimentReport noisy =
        run_noisy_experiment(source, s_values, high, 100, noisy_config, 5);
    MpConfig clean_config;
    clean_config.success_threshold = 1e-2;
    const ExperimentReport clean =
        run_noiseless_experiment(source, s_values, 100, clean_config, 5);
    // Same signal streams, negligible noise: identical outcomes.
    CHECK(noisy.conditions[0].successes == clean.conditions[0].successes);
}

TEST_CASE("partial Fourier family draws a fresh matrix per trial deterministically") {
    const auto source = MatrixSource::fresh_partial_fourier(9, 81);
    const std::vector<std::int64_t> s_values{1};
    const ExperimentReport a =
        run_noiseless_experiment(source, s_values, 30, MpConfig{}, 11);
    const ExperimentReport b =
        run_noiseless_experiment(source, s_values, 30, MpConfig{}, 11);
    CHECK(a.conditions[0].successes == b.conditions[0].successes);
    CHECK(a.conditions[0].success_rate > 0.5);
}

TEST_CASE("reports are identical across worker counts") {
    const SensingMatrix m = build_construction_1a(3, 2);
    const auto source = MatrixSource::fixed_matrix(m, MatrixFamily::AdditiveCharacter);
    const std::vector<std::int64_t> s_values{1, 2};
    const ExperimentReport w1 =
        run_noiseless_experiment(source, s_values, 100, MpConfig{}, 21, 1);
    const ExperimentReport w8 =
        run_noiseless_experiment(source, s_values, 100, MpConfig{}, 21, 8);
    REQUIRE(w1.conditions.size() == w8.conditions.size());
    for (std::size_t i = 0; i < w1.conditions.size(); ++i) {
        CHECK(w1.conditions[i].successes == w8.conditions[i].successes);
        CHECK(w1.conditions[i].success_rate == w8.conditions[i].success_rate);
    }
}

}  // TEST_SUITE

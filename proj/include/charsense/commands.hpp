#pragma once

// Command implementations behind the CLI: build/verify/spectra/recover/
// recover-noisy. Each writes plot-ready CSVs plus a manifest.json capturing
// every parameter needed to reproduce the run byte for byte.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace charsense {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::int64_t p = 3;
    int m = 4;
    std::vector<std::int64_t> exponents = {1, 2};  // r_1..r_h (h and d implied)
    std::uint64_t seed = 1;
    std::int64_t trials = 2000;
    std::vector<std::int64_t> s_values;   // default depends on the command
    std::vector<double> snr_grid_db;      // default 0..40 dB step 5
    std::filesystem::path out_dir = ".";
    std::optional<std::string> poly;      // modulus override, "2,0,0,1,1" form
    std::optional<bool> lazy;             // storage override
    int max_iterations = 100;
    std::int64_t field_cap = 59049;
    unsigned workers = 0;                 // 0: CHARSENSE_WORKERS or hardware
};

/// Builds the matrix and writes matrix.txt plus manifest.json.
int cmd_build(const RunConfig& config);

/// Coherence scan + tight-frame check; writes coherence.csv. Throws
/// InvariantViolation (exit code 2) if a verified property fails.
int cmd_verify(const RunConfig& config);

/// Condition-number statistics, additive-character vs Gaussian; writes
/// condstats.csv.
int cmd_spectra(const RunConfig& config);

/// Noiseless recovery rates for both matrix families; writes
/// recovery_noiseless.csv.
int cmd_recover(const RunConfig& config);

/// Noisy recovery surface over (s, snr); writes recovery_noisy.csv.
int cmd_recover_noisy(const RunConfig& config);

}  // namespace charsense

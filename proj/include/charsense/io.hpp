#pragma once

// File formats: matrix export ("K N kind [p m h d r1..rh]" header, rows of
// re:im pairs at full double precision), plot-ready CSV reports, and JSON
// manifests. Writes go through a temp file and rename so failed runs leave
// no partial outputs.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "charsense/analysis.hpp"
#include "charsense/recovery.hpp"
#include "charsense/sensing.hpp"

namespace charsense {

/// %.17g, enough digits to round-trip a double exactly.
std::string format_full(double v);
/// %.10g, used in report CSVs.
std::string format_short(double v);

/// Writes content to path atomically (temp file + rename).
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

/// Removes every file it registered; used to drop partial outputs on failure.
class OutputTracker {
public:
    void add(const std::filesystem::path& path) { paths_.push_back(path); }
    void discard_all() noexcept;

private:
    std::vector<std::filesystem::path> paths_;
};

std::string matrix_to_text(const SensingMatrix& matrix, bool csv = false);
SensingMatrix matrix_from_text(const std::string& text);

std::string coherence_csv(const CoherenceReport& report, std::int64_t K, std::int64_t N,
                          std::int64_t d);
std::string condstats_csv(std::span<const std::pair<std::string, SpectralStats>> rows);
std::string recovery_noiseless_csv(const ExperimentReport& report);
std::string recovery_noisy_csv(const ExperimentReport& report);

}  // namespace charsense

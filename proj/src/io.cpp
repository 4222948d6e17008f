#include "charsense/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace charsense {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

}  // namespace

std::string format_full(double v) { return fmt("%.17g", v); }
std::string format_short(double v) { return fmt("%.10g", v); }

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("short write to " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("cannot rename " + tmp.string() + " to " + path.string());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void OutputTracker::discard_all() noexcept {
    for (const auto& p : paths_) {
        std::error_code ec;
        std::filesystem::remove(p, ec);
    }
    paths_.clear();
}

std::string matrix_to_text(const SensingMatrix& matrix, bool csv) {
    const char sep = csv ? ',' : ' ';
    std::string out;
    out += std::to_string(matrix.rows());
    out += sep;
    out += std::to_string(matrix.cols());
    out += sep;
    out += to_string(matrix.kind());
    if (const auto* spec = matrix.construction()) {
        for (std::int64_t v : {spec->p, std::int64_t(spec->m), std::int64_t(spec->h),
                               spec->d}) {
            out += sep;
            out += std::to_string(v);
        }
        for (std::int64_t r : spec->exponents) {
            out += sep;
            out += std::to_string(r);
        }
    }
    out += '\n';
    // Assemble row lines column by column so lazy matrices generate each
    // column exactly once.
    std::vector<std::string> lines(static_cast<std::size_t>(matrix.rows()));
    for (Eigen::Index n = 0; n < matrix.cols(); ++n) {
        const Eigen::VectorXcd col = matrix.column(n);
        for (Eigen::Index k = 0; k < matrix.rows(); ++k) {
            auto& line = lines[static_cast<std::size_t>(k)];
            if (n) line += sep;
            line += format_full(col(k).real());
            line += ':';
            line += format_full(col(k).imag());
        }
    }
    for (auto& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

SensingMatrix matrix_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    if (!std::getline(in, header)) throw IoError("matrix file: missing header");
    for (auto& ch : header)
        if (ch == ',') ch = ' ';
    std::istringstream hs(header);
    std::int64_t K = 0, N = 0;
    std::string kind_name;
    if (!(hs >> K >> N >> kind_name))
        throw IoError("matrix file: malformed header line");
    const MatrixKind kind = matrix_kind_from_string(kind_name);
    if (K < 1 || N < 1 || K > (std::int64_t(1) << 26) / N)
        throw IoError("matrix file: implausible dimensions in header");

    Eigen::MatrixXcd entries(K, N);
    std::string line;
    for (std::int64_t k = 0; k < K; ++k) {
        if (!std::getline(in, line)) throw IoError("matrix file: missing row data");
        for (auto& ch : line)
            if (ch == ',') ch = ' ';
        std::istringstream ls(line);
        std::string cell;
        for (std::int64_t n = 0; n < N; ++n) {
            if (!(ls >> cell)) throw IoError("matrix file: short row");
            const auto colon = cell.find(':');
            if (colon == std::string::npos)
                throw IoError("matrix file: cell is not re:im");
            entries(k, n) = std::complex<double>(std::stod(cell.substr(0, colon)),
                                                 std::stod(cell.substr(colon + 1)));
        }
    }
    return SensingMatrix::dense_matrix(kind, std::move(entries));
}

std::string coherence_csv(const CoherenceReport& report, std::int64_t K, std::int64_t N,
                          std::int64_t d) {
    std::string out = "K,N,d,mu,welch,ratio\n";
    out += std::to_string(K) + ',' + std::to_string(N) + ',' + std::to_string(d) + ',';
    out += format_full(report.mu) + ',' + format_full(report.welch) + ',' +
           format_full(report.mu / report.welch) + '\n';
    return out;
}

std::string condstats_csv(std::span<const std::pair<std::string, SpectralStats>> rows) {
    std::string out = "family,s,trials,cond_mean,cond_std,delta_hat\n";
    for (const auto& [family, stats] : rows) {
        out += family + ',' + std::to_string(stats.s) + ',' +
               std::to_string(stats.trials) + ',' + format_short(stats.cond_mean) + ',' +
               format_short(stats.cond_std) + ',' + format_short(stats.delta_hat) + '\n';
    }
    return out;
}

std::string recovery_noiseless_csv(const ExperimentReport& report) {
    std::string out = "family,s,trials,success_rate\n";
    for (const auto& row : report.conditions)
        out += row.family + ',' + std::to_string(row.s) + ',' +
               std::to_string(row.trials) + ',' + format_short(row.success_rate) + '\n';
    return out;
}

std::string recovery_noisy_csv(const ExperimentReport& report) {
    std::string out = "family,s,snr_db,trials,success_rate\n";
    for (const auto& row : report.conditions)
        out += row.family + ',' + std::to_string(row.s) + ',' +
               format_short(row.snr_db.value_or(0.0)) + ',' + std::to_string(row.trials) +
               ',' + format_short(row.success_rate) + '\n';
    return out;
}

}  // namespace charsense

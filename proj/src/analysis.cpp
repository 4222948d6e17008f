#include "charsense/analysis.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "charsense/parallel.hpp"

namespace charsense {

namespace {

constexpr std::int64_t kCoherenceBlock = 1024;

struct BlockBest {
    double value_sq = -1.0;
    std::int64_t n1 = 0;
    std::int64_t n2 = 0;
};

// RNG stream domain tags; distinct per sampling role.
constexpr std::uint64_t kStreamColumnSubset = 0x636f6c73;   // "cols"
constexpr std::uint64_t kStreamGaussianTrial = 0x67617573;  // "gaus"

Eigen::MatrixXcd block_of(const SensingMatrix& m, std::int64_t begin, std::int64_t end) {
    if (m.is_dense()) return m.dense().middleCols(begin, end - begin);
    Eigen::MatrixXcd out(m.rows(), end - begin);
    for (std::int64_t n = begin; n < end; ++n) out.col(n - begin) = m.column(n);
    return out;
}

SpectralStats reduce_spectral(std::int64_t s, std::int64_t trials,
                              const std::vector<double>& cond,
                              const std::vector<double>& lmin,
                              const std::vector<double>& lmax) {
    SpectralStats stats;
    stats.s = s;
    stats.trials = trials;
    const auto tcount = static_cast<double>(trials);
    stats.cond_mean = pairwise_sum(cond) / tcount;
    std::vector<double> sq(cond.size());
    for (std::size_t i = 0; i < cond.size(); ++i) {
        const double d = cond[i] - stats.cond_mean;
        sq[i] = d * d;
    }
    stats.cond_std = trials > 1 ? std::sqrt(pairwise_sum(sq) / (tcount - 1.0)) : 0.0;
    stats.lambda_min_mean = pairwise_sum(lmin) / tcount;
    stats.lambda_max_mean = pairwise_sum(lmax) / tcount;
    for (std::int64_t t = 0; t < trials; ++t) {
        const auto i = static_cast<std::size_t>(t);
        stats.delta_hat = std::max(stats.delta_hat,
                                   std::max(lmax[i] - 1.0, 1.0 - lmin[i]));
        if (!(lmin[i] > 1e-14)) ++stats.singular_trials;
    }
    return stats;
}

}  // namespace

CoherenceReport coherence(const SensingMatrix& matrix, unsigned workers) {
    const std::int64_t N = matrix.cols();
    const std::int64_t K = matrix.rows();
    if (N < 2) throw ValidationError("coherence: need at least two columns");

    const std::int64_t blocks = (N + kCoherenceBlock - 1) / kCoherenceBlock;
    std::vector<std::pair<std::int64_t, std::int64_t>> panels;
    for (std::int64_t bi = 0; bi < blocks; ++bi)
        for (std::int64_t bj = bi; bj < blocks; ++bj) panels.emplace_back(bi, bj);

    std::vector<BlockBest> best(panels.size());
    parallel_trials(panels.size(), workers, [&](std::size_t pi) {
        const auto [bi, bj] = panels[pi];
        const std::int64_t i0 = bi * kCoherenceBlock;
        const std::int64_t i1 = std::min(N, i0 + kCoherenceBlock);
        const std::int64_t j0 = bj * kCoherenceBlock;
        const std::int64_t j1 = std::min(N, j0 + kCoherenceBlock);
        const Eigen::MatrixXcd left = block_of(matrix, i0, i1);
        const Eigen::MatrixXcd right = bi == bj ? left : block_of(matrix, j0, j1);
        Eigen::MatrixXcd gram(left.cols(), right.cols());
        gram.noalias() = left.adjoint() * right;

        BlockBest b;
        for (Eigen::Index r = 0; r < gram.rows(); ++r) {
            const Eigen::Index cbegin = bi == bj ? r + 1 : 0;
            for (Eigen::Index c = cbegin; c < gram.cols(); ++c) {
                const double v = std::norm(gram(r, c));
                if (v > b.value_sq) {
                    b.value_sq = v;
                    b.n1 = i0 + r;
                    b.n2 = j0 + c;
                }
            }
        }
        best[pi] = b;
    });

    BlockBest overall;
    for (const auto& b : best) {
        if (b.value_sq < 0.0) continue;
        const bool better =
            b.value_sq > overall.value_sq ||
            (b.value_sq == overall.value_sq &&
             std::pair(b.n1, b.n2) < std::pair(overall.n1, overall.n2));
        if (better) overall = b;
    }

    CoherenceReport report;
    report.mu = std::sqrt(overall.value_sq);
    report.argmax_pair = {overall.n1, overall.n2};
    report.welch = N > K ? welch_bound(K, N) : std::numeric_limits<double>::quiet_NaN();
    if (const auto* spec = matrix.construction())
        report.weil_prediction = static_cast<double>(spec->d - 1) /
                                 std::sqrt(static_cast<double>(K));
    else
        report.weil_prediction = std::numeric_limits<double>::quiet_NaN();
    return report;
}

double welch_bound(std::int64_t K, std::int64_t N) {
    if (K < 1 || N <= K)
        throw ValidationError("welch_bound: defined for N > K >= 1");
    return std::sqrt(static_cast<double>(N - K) /
                     (static_cast<double>(K) * static_cast<double>(N - 1)));
}

SparsityBound sparsity_bound(const ConstructionSpec& spec) {
    SparsityBound out;
    const double sqrtK = std::sqrt(static_cast<double>(spec.field_size()));
    out.bound = 0.5 * (sqrtK / static_cast<double>(spec.d - 1) + 1.0);
    const double fl = std::floor(out.bound);
    // Strict inequality: integer boundary values are themselves excluded.
    out.guaranteed = static_cast<std::int64_t>(fl) - (fl == out.bound ? 1 : 0);
    return out;
}

FrameReport frame_test(const SensingMatrix& matrix) {
    const std::int64_t N = matrix.cols();
    const std::int64_t K = matrix.rows();
    Eigen::MatrixXcd rows_gram = Eigen::MatrixXcd::Zero(K, K);
    for (std::int64_t begin = 0; begin < N; begin += kCoherenceBlock) {
        const std::int64_t end = std::min(N, begin + kCoherenceBlock);
        const Eigen::MatrixXcd block = block_of(matrix, begin, end);
        rows_gram.noalias() += block * block.adjoint();
    }
    FrameReport report;
    report.redundancy = static_cast<double>(N) / static_cast<double>(K);
    for (Eigen::Index i = 0; i < K; ++i) {
        for (Eigen::Index j = 0; j < K; ++j) {
            const double target = i == j ? report.redundancy : 0.0;
            report.max_deviation =
                std::max(report.max_deviation, std::abs(rows_gram(i, j) - target));
            if (i != j)
                report.max_off_diagonal =
                    std::max(report.max_off_diagonal, std::abs(rows_gram(i, j)));
        }
    }
    return report;
}

Eigen::VectorXd gram_eigenvalues(const Eigen::MatrixXcd& submatrix,
                                 const JacobiOptions& options) {
    if (submatrix.cols() < 1)
        throw ValidationError("gram_eigenvalues: need at least one column");
    Eigen::MatrixXcd gram(submatrix.cols(), submatrix.cols());
    gram.noalias() = submatrix.adjoint() * submatrix;
    return hermitian_eigenvalues_jacobi(gram, options);
}

double condition_number(const Eigen::MatrixXcd& submatrix, const JacobiOptions& options) {
    const Eigen::VectorXd eig = gram_eigenvalues(submatrix, options);
    const double lmin = eig(0);
    const double lmax = eig(eig.size() - 1);
    if (lmin <= 1e-14) return std::numeric_limits<double>::infinity();
    return std::sqrt(lmax / lmin);
}

SpectralStats condition_stats(const SensingMatrix& matrix, std::int64_t s,
                              std::int64_t trials, std::uint64_t seed, unsigned workers) {
    if (s < 1 || s > matrix.rows())
        throw ValidationError("condition_stats: need 1 <= s <= K");
    if (trials < 1) throw ValidationError("condition_stats: need at least one trial");

    std::vector<double> cond(static_cast<std::size_t>(trials));
    std::vector<double> lmin(static_cast<std::size_t>(trials));
    std::vector<double> lmax(static_cast<std::size_t>(trials));
    parallel_trials(static_cast<std::size_t>(trials), workers, [&](std::size_t t) {
        Rng rng = Rng::stream(seed, {kStreamColumnSubset, static_cast<std::uint64_t>(s),
                                     static_cast<std::uint64_t>(t)});
        const auto idx = sample_without_replacement(matrix.cols(), s, rng);
        const Eigen::VectorXd eig = gram_eigenvalues(matrix.gather(idx));
        lmin[t] = eig(0);
        lmax[t] = eig(eig.size() - 1);
        cond[t] = eig(0) <= 1e-14 ? std::numeric_limits<double>::infinity()
                                  : std::sqrt(eig(eig.size() - 1) / eig(0));
    });
    return reduce_spectral(s, trials, cond, lmin, lmax);
}

SpectralStats compare_with_gaussian(std::int64_t K, std::int64_t s, std::int64_t trials,
                                    std::uint64_t seed, unsigned workers) {
    if (s < 1 || s > K) throw ValidationError("compare_with_gaussian: need 1 <= s <= K");
    if (trials < 1) throw ValidationError("compare_with_gaussian: need at least one trial");

    std::vector<double> cond(static_cast<std::size_t>(trials));
    std::vector<double> lmin(static_cast<std::size_t>(trials));
    std::vector<double> lmax(static_cast<std::size_t>(trials));
    parallel_trials(static_cast<std::size_t>(trials), workers, [&](std::size_t t) {
        Rng rng = Rng::stream(seed, {kStreamGaussianTrial, static_cast<std::uint64_t>(s),
                                     static_cast<std::uint64_t>(t)});
        const SensingMatrix g = gaussian_matrix(K, s, rng);
        const Eigen::VectorXd eig = gram_eigenvalues(g.dense());
        lmin[t] = eig(0);
        lmax[t] = eig(eig.size() - 1);
        cond[t] = eig(0) <= 1e-14 ? std::numeric_limits<double>::infinity()
                                  : std::sqrt(eig(eig.size() - 1) / eig(0));
    });
    return reduce_spectral(s, trials, cond, lmin, lmax);
}

std::complex<double> column_inner_product_exact(const ConstructionSpec& spec,
                                                const FieldContext& ctx, std::int64_t n1,
                                                std::int64_t n2) {
    const ColumnSpec c1 = column_spec(ctx, spec, n1);
    const ColumnSpec c2 = column_spec(ctx, spec, n2);
    SparsePoly f;
    for (std::size_t i = 0; i < c1.b.size(); ++i) {
        const FieldElement diff = ctx.sub(c2.b[i], c1.b[i]);
        if (!diff.is_zero()) f[spec.exponents[i]] = diff;
    }
    const std::complex<double> sum = f.empty()
                                         ? std::complex<double>(
                                               static_cast<double>(ctx.size()), 0.0)
                                         : character_sum(ctx, f);
    return sum / static_cast<double>(spec.field_size());
}

}  // namespace charsense

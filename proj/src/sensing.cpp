#include "charsense/sensing.hpp"

#include <cmath>
#include <numbers>

#include "charsense/lfsr.hpp"

namespace charsense {

std::int64_t ConstructionSpec::field_size() const {
    std::int64_t q = 1;
    for (int i = 0; i < m; ++i) q *= p;
    return q;
}

std::int64_t ConstructionSpec::column_count() const {
    const std::int64_t K = field_size();
    std::int64_t n = 1;
    for (int i = 0; i < h; ++i) {
        if (n > (std::int64_t(1) << 62) / K)
            throw SizeError("column count K^h overflows the supported range");
        n *= K;
    }
    return n;
}

ConstructionSpec ConstructionSpec::validated(std::int64_t p, int m,
                                             std::vector<std::int64_t> exponents,
                                             std::int64_t cap) {
    ConstructionSpec spec;
    spec.p = p;
    spec.m = m;
    spec.h = static_cast<int>(exponents.size());
    spec.exponents = std::move(exponents);

    if (spec.h <= 1) throw ValidationError("construction needs h > 1 exponents");
    if (spec.exponents.front() != 1)
        throw ValidationError("first exponent must be r_1 = 1");
    for (std::size_t i = 0; i + 1 < spec.exponents.size(); ++i)
        if (spec.exponents[i] >= spec.exponents[i + 1])
            throw ValidationError("exponents must be strictly increasing");
    spec.d = spec.exponents.back();
    if (spec.d < spec.h)
        throw ValidationError("largest exponent d must be at least h");
    for (std::int64_t r : spec.exponents)
        if (r % p == 0)
            throw ValidationError("exponent " + std::to_string(r) +
                                  " violates gcd(r_i, p^m) = 1");

    validate_field_parameters(p, m, cap);
    (void)spec.column_count();  // overflow check
    return spec;
}

ConstructionSpec construction_1a_spec(std::int64_t p, int m) {
    return ConstructionSpec::validated(p, m, {1, 2});
}

std::vector<std::int64_t> decompose_index(std::int64_t n, std::int64_t K, int h) {
    std::int64_t limit = 1;
    for (int i = 0; i < h; ++i) limit *= K;
    if (n < 0 || n >= limit)
        throw RangeError("decompose_index: column index out of range");
    std::vector<std::int64_t> u(static_cast<std::size_t>(h));
    for (int i = 0; i < h; ++i) {
        u[static_cast<std::size_t>(i)] = n % K;
        n /= K;
    }
    return u;
}

std::int64_t recompose_index(std::span<const std::int64_t> digits, std::int64_t K) {
    std::int64_t n = 0;
    for (std::size_t i = digits.size(); i-- > 0;) n = n * K + digits[i];
    return n;
}

std::vector<FieldElement> coefficients_from_index(const FieldContext& ctx,
                                                  std::span<const std::int64_t> u) {
    std::vector<FieldElement> b(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] < 0 || u[i] >= ctx.size())
            throw RangeError("coefficients_from_index: digit out of range");
        b[i] = u[i] == 0 ? FieldElement(0) : ctx.exp(u[i] - 1);
    }
    return b;
}

ColumnSpec column_spec(const FieldContext& ctx, const ConstructionSpec& spec,
                       std::int64_t n) {
    ColumnSpec cs;
    cs.n = n;
    cs.u = decompose_index(n, spec.field_size(), spec.h);
    cs.b = coefficients_from_index(ctx, cs.u);
    return cs;
}

namespace {

void column_into(const ConstructionSpec& spec, const FieldContext& ctx, std::int64_t n,
                 Eigen::Ref<Eigen::VectorXcd> dest) {
    const std::int64_t K = spec.field_size();
    const std::int64_t period = K - 1;
    const double scale = 1.0 / std::sqrt(static_cast<double>(K));
    const auto& roots = ctx.unit_roots();
    const ColumnSpec cs = column_spec(ctx, spec, n);

    dest(0) = std::complex<double>(scale, 0.0);
    // Per channel: exponent of alpha advances by r_i per row.
    std::vector<std::int64_t> step(cs.b.size()), pos(cs.b.size(), 0);
    for (std::size_t i = 0; i < cs.b.size(); ++i) step[i] = spec.exponents[i] % period;
    for (std::int64_t k = 1; k < K; ++k) {
        FieldElement acc(0);
        for (std::size_t i = 0; i < cs.b.size(); ++i) {
            if (!cs.b[i].is_zero()) acc = ctx.add(acc, ctx.mul(cs.b[i], ctx.exp(pos[i])));
            pos[i] += step[i];
            if (pos[i] >= period) pos[i] -= period;
        }
        dest(k) = scale * roots[static_cast<std::size_t>(ctx.trace(acc))];
    }
}

}  // namespace

Eigen::VectorXcd column(const ConstructionSpec& spec, const FieldContext& ctx,
                        std::int64_t n) {
    Eigen::VectorXcd out(spec.field_size());
    column_into(spec, ctx, n, out);
    return out;
}

Eigen::VectorXcd column_via_lfsr(const ConstructionSpec& spec, const FieldContext& ctx,
                                 std::int64_t n) {
    const std::int64_t K = spec.field_size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(K));
    const auto& roots = ctx.unit_roots();
    const ColumnSpec cs = column_spec(ctx, spec, n);
    const CombinedGenerator gen = combined_generator(ctx, spec.exponents, cs.b);
    const auto seq = generate(gen, K - 1);

    Eigen::VectorXcd out(K);
    out(0) = std::complex<double>(scale, 0.0);
    for (std::int64_t k = 1; k < K; ++k)
        out(k) = scale * roots[static_cast<std::size_t>(seq[static_cast<std::size_t>(k - 1)])];
    return out;
}

std::string to_string(MatrixKind kind) {
    switch (kind) {
        case MatrixKind::AdditiveCharacter: return "additive-character";
        case MatrixKind::Gaussian: return "gaussian";
        case MatrixKind::PartialFourier: return "partial-fourier";
    }
    return "unknown";
}

MatrixKind matrix_kind_from_string(std::string_view name) {
    if (name == "additive-character") return MatrixKind::AdditiveCharacter;
    if (name == "gaussian") return MatrixKind::Gaussian;
    if (name == "partial-fourier") return MatrixKind::PartialFourier;
    throw ValidationError("unknown matrix kind '" + std::string(name) + "'");
}

Eigen::VectorXcd SensingMatrix::column(Eigen::Index n) const {
    if (n < 0 || n >= N_) throw RangeError("SensingMatrix::column: index out of range");
    if (dense_) return dense_->col(n);
    return charsense::column(*spec_, *ctx_, n);
}

const Eigen::MatrixXcd& SensingMatrix::dense() const {
    if (!dense_)
        throw ValidationError("SensingMatrix: dense storage requested from a lazy matrix");
    return *dense_;
}

Eigen::MatrixXcd SensingMatrix::gather(std::span<const std::int64_t> indices) const {
    Eigen::MatrixXcd out(K_, static_cast<Eigen::Index>(indices.size()));
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (dense_)
            out.col(static_cast<Eigen::Index>(i)) = dense_->col(indices[i]);
        else
            out.col(static_cast<Eigen::Index>(i)) = column(indices[i]);
    }
    return out;
}

Eigen::VectorXcd SensingMatrix::adjoint_apply(const Eigen::VectorXcd& r) const {
    if (r.size() != K_)
        throw RangeError("SensingMatrix::adjoint_apply: vector length mismatch");
    if (dense_) {
        Eigen::VectorXcd g(N_);
        g.noalias() = dense_->adjoint() * r;
        return g;
    }
    Eigen::VectorXcd g(N_);
    for (Eigen::Index n = 0; n < N_; ++n) g(n) = column(n).dot(r);
    return g;
}

Eigen::VectorXcd SensingMatrix::combine(std::span<const std::int64_t> indices,
                                        std::span<const double> values) const {
    if (indices.size() != values.size())
        throw ValidationError("SensingMatrix::combine: index/value length mismatch");
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(K_);
    for (std::size_t i = 0; i < indices.size(); ++i) y += values[i] * column(indices[i]);
    return y;
}

std::string SensingMatrix::descriptor() const {
    std::string out = to_string(kind_) + " K=" + std::to_string(K_) +
                      " N=" + std::to_string(N_);
    if (spec_) {
        out += " p=" + std::to_string(spec_->p) + " m=" + std::to_string(spec_->m) +
               " h=" + std::to_string(spec_->h) + " d=" + std::to_string(spec_->d) + " r=";
        for (std::size_t i = 0; i < spec_->exponents.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(spec_->exponents[i]);
        }
    }
    return out;
}

SensingMatrix SensingMatrix::dense_matrix(MatrixKind kind, Eigen::MatrixXcd entries) {
    SensingMatrix m;
    m.kind_ = kind;
    m.K_ = entries.rows();
    m.N_ = entries.cols();
    m.dense_ = std::move(entries);
    return m;
}

SensingMatrix build_matrix(const ConstructionSpec& spec,
                           std::shared_ptr<const FieldContext> ctx, Storage storage) {
    if (!ctx) throw ValidationError("build_matrix: missing field context");
    if (ctx->p() != spec.p || ctx->m() != spec.m)
        throw ValidationError("build_matrix: field context does not match the spec");
    const std::int64_t K = spec.field_size();
    const std::int64_t N = spec.column_count();

    SensingMatrix m;
    m.kind_ = MatrixKind::AdditiveCharacter;
    m.K_ = K;
    m.N_ = N;
    m.spec_ = spec;
    m.ctx_ = std::move(ctx);

    const bool dense = storage == Storage::Dense ||
                       (storage == Storage::Auto && K <= kDenseEntryCap / N);
    if (dense) {
        Eigen::MatrixXcd entries(K, N);
        for (std::int64_t n = 0; n < N; ++n)
            column_into(spec, *m.ctx_, n, entries.col(n));
        for (std::int64_t n = 0; n < N; ++n) {
            if (std::abs(entries.col(n).norm() - 1.0) > 1e-12)
                throw InvariantViolation("column " + std::to_string(n) +
                                         " is not unit norm");
        }
        m.dense_ = std::move(entries);
    }
    return m;
}

SensingMatrix build_construction_1a(std::int64_t p, int m, Storage storage) {
    const ConstructionSpec spec = construction_1a_spec(p, m);
    auto ctx = std::make_shared<const FieldContext>(build_field(p, m));
    return build_matrix(spec, std::move(ctx), storage);
}

SensingMatrix gaussian_matrix(Eigen::Index K, Eigen::Index s, Rng& rng) {
    if (K < 1 || s < 1) throw ValidationError("gaussian_matrix: need K >= 1 and s >= 1");
    const double sigma = 1.0 / std::sqrt(static_cast<double>(K));
    Eigen::MatrixXcd entries(K, s);
    for (Eigen::Index j = 0; j < s; ++j)
        for (Eigen::Index i = 0; i < K; ++i)
            entries(i, j) = std::complex<double>(sigma * rng.normal(), 0.0);
    for (Eigen::Index j = 0; j < s; ++j) {
        const double norm = entries.col(j).norm();
        if (norm == 0.0) throw InvariantViolation("gaussian column with zero norm");
        entries.col(j) /= norm;
    }
    return SensingMatrix::dense_matrix(MatrixKind::Gaussian, std::move(entries));
}

SensingMatrix partial_fourier(Eigen::Index K, Eigen::Index N, Rng& rng) {
    if (K < 1 || K > N) throw ValidationError("partial_fourier: need 1 <= K <= N");
    const auto rows = sample_without_replacement(N, K, rng);
    const double scale = 1.0 / std::sqrt(static_cast<double>(K));
    std::vector<std::complex<double>> roots(static_cast<std::size_t>(N));
    for (Eigen::Index t = 0; t < N; ++t)
        roots[static_cast<std::size_t>(t)] = std::exp(std::complex<double>(
            0.0, 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(N)));
    Eigen::MatrixXcd entries(K, N);
    for (Eigen::Index k = 0; k < K; ++k) {
        const std::int64_t row = rows[static_cast<std::size_t>(k)];
        for (Eigen::Index n = 0; n < N; ++n)
            entries(k, n) = scale * roots[static_cast<std::size_t>((row * n) % N)];
    }
    return SensingMatrix::dense_matrix(MatrixKind::PartialFourier, std::move(entries));
}

}  // namespace charsense

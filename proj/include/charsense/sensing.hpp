#pragma once

// K x N measurement matrices: the additive-character construction
//
//   a_{0,n} = 1/sqrt(K),
//   a_{k,n} = (1/sqrt(K)) * w_p^{Tr(sum_i b_i alpha^{r_i (k-1)})},  1 <= k < K,
//
// where K = p^m, N = K^h, the base-K digits u_i of the column index n select
// the coefficients b_i (0 for digit 0, else alpha^{u_i - 1}); plus the
// Gaussian and partial-Fourier comparison families.

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "charsense/galois.hpp"
#include "charsense/rng.hpp"

namespace charsense {

/// Parameters of one additive-character construction. Valid specs have
/// h > 1, d >= h, exponents strictly increasing with r_1 = 1, r_h = d, and
/// gcd(r_i, p^m) = 1 for every i.
struct ConstructionSpec {
    std::int64_t p = 3;
    int m = 1;
    int h = 2;
    std::int64_t d = 2;
    std::vector<std::int64_t> exponents = {1, 2};

    std::int64_t field_size() const;    // K = p^m
    std::int64_t column_count() const;  // N = K^h

    /// Validates all invariants; throws ValidationError naming the violated
    /// constraint.
    static ConstructionSpec validated(std::int64_t p, int m,
                                      std::vector<std::int64_t> exponents,
                                      std::int64_t cap = kDefaultFieldCap);
};

/// Construction with h = d = 2 and exponents (1, 2), giving N = K^2.
ConstructionSpec construction_1a_spec(std::int64_t p, int m);

/// Base-K digits u_1..u_h of n (least significant first); recompose inverts.
std::vector<std::int64_t> decompose_index(std::int64_t n, std::int64_t K, int h);
std::int64_t recompose_index(std::span<const std::int64_t> digits, std::int64_t K);

/// Digit -> coefficient map: 0 -> 0, u -> alpha^{u-1}; a bijection from
/// [0, K) onto the field.
std::vector<FieldElement> coefficients_from_index(const FieldContext& ctx,
                                                  std::span<const std::int64_t> u);

/// Column index together with its digit and coefficient vectors.
struct ColumnSpec {
    std::int64_t n = 0;
    std::vector<std::int64_t> u;
    std::vector<FieldElement> b;
};
ColumnSpec column_spec(const FieldContext& ctx, const ConstructionSpec& spec,
                       std::int64_t n);

/// Column n by direct field arithmetic.
Eigen::VectorXcd column(const ConstructionSpec& spec, const FieldContext& ctx,
                        std::int64_t n);

/// Column n through the LFSR path; must agree with column() bit for bit.
Eigen::VectorXcd column_via_lfsr(const ConstructionSpec& spec, const FieldContext& ctx,
                                 std::int64_t n);

enum class MatrixKind { AdditiveCharacter, Gaussian, PartialFourier };
enum class Storage { Auto, Dense, Lazy };

std::string to_string(MatrixKind kind);
MatrixKind matrix_kind_from_string(std::string_view name);

/// Dense additive-character matrices beyond this many entries switch to
/// lazy column generation under Storage::Auto.
inline constexpr std::int64_t kDenseEntryCap = std::int64_t(1) << 24;

/// A K x N measurement matrix with unit-norm columns, stored dense or (for
/// the additive-character kind) regenerated column by column. Immutable;
/// column access is pure and thread-safe.
class SensingMatrix {
public:
    Eigen::Index rows() const { return K_; }
    Eigen::Index cols() const { return N_; }
    MatrixKind kind() const { return kind_; }
    bool is_dense() const { return dense_.has_value(); }

    Eigen::VectorXcd column(Eigen::Index n) const;

    /// Dense storage; throws ValidationError when built lazy.
    const Eigen::MatrixXcd& dense() const;

    /// Gathers the submatrix of the given column indices.
    Eigen::MatrixXcd gather(std::span<const std::int64_t> indices) const;

    /// A^H r, the correlation of every column with r.
    Eigen::VectorXcd adjoint_apply(const Eigen::VectorXcd& r) const;

    /// y = sum_i values[i] * column(indices[i]).
    Eigen::VectorXcd combine(std::span<const std::int64_t> indices,
                             std::span<const double> values) const;

    const ConstructionSpec* construction() const {
        return spec_ ? &*spec_ : nullptr;
    }
    const FieldContext* field() const { return ctx_.get(); }

    /// One-line parameter summary for manifests and CSV descriptors.
    std::string descriptor() const;

    static SensingMatrix dense_matrix(MatrixKind kind, Eigen::MatrixXcd entries);

private:
    friend SensingMatrix build_matrix(const ConstructionSpec&,
                                      std::shared_ptr<const FieldContext>, Storage);

    MatrixKind kind_ = MatrixKind::AdditiveCharacter;
    Eigen::Index K_ = 0;
    Eigen::Index N_ = 0;
    std::optional<Eigen::MatrixXcd> dense_;
    std::optional<ConstructionSpec> spec_;
    std::shared_ptr<const FieldContext> ctx_;
};

/// Builds the additive-character matrix for a validated spec. The context
/// must match (p, m). Dense unless the entry count exceeds kDenseEntryCap
/// or Storage::Lazy is requested.
SensingMatrix build_matrix(const ConstructionSpec& spec,
                           std::shared_ptr<const FieldContext> ctx,
                           Storage storage = Storage::Auto);

/// Convenience wrapper: builds GF(p^m) and the h = d = 2 matrix (N = K^2).
SensingMatrix build_construction_1a(std::int64_t p, int m, Storage storage = Storage::Auto);

/// K x s matrix of i.i.d. N(0, 1/K) real entries (filled column-major),
/// each column then scaled to unit l2 norm.
SensingMatrix gaussian_matrix(Eigen::Index K, Eigen::Index s, Rng& rng);

/// K distinct rows of the N x N DFT matrix (entry e^{2 pi j k n / N}),
/// drawn without replacement, scaled by 1/sqrt(K).
SensingMatrix partial_fourier(Eigen::Index K, Eigen::Index N, Rng& rng);

}  // namespace charsense

#pragma once

// Exact arithmetic in GF(p) and GF(p^m) for odd prime p.
//
// Elements are encoded as integer indices in [0, p^m): the base-p digits of
// the index are the coefficients of the element as a polynomial in the
// residue class ring F_p[x]/(g), constant term first. Multiplication runs
// through exp/log tables of the primitive element alpha = x mod g, trace is
// table-backed, addition is digitwise mod p.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charsense/errors.hpp"

namespace charsense {

/// Size cap for table-backed fields (number of elements p^m).
inline constexpr std::int64_t kDefaultFieldCap = 59049;  // 3^10

/// Monic polynomial over F_p, coefficients constant-term first.
class PrimePoly {
public:
    PrimePoly(std::int64_t p, std::vector<std::int32_t> coeffs);

    /// Parses a comma-separated coefficient list, constant term first
    /// (so "2,0,0,1,1" is x^4 + x^3 + 2 over F_3).
    static PrimePoly parse(std::int64_t p, std::string_view text);
    std::string to_string() const;

    std::int64_t p() const { return p_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<std::int32_t>& coeffs() const { return coeffs_; }

    bool operator==(const PrimePoly&) const = default;

private:
    std::int64_t p_;
    std::vector<std::int32_t> coeffs_;
};

/// Element of GF(p^m), identified by its integer index. Index 0 is the zero
/// element; constants c in F_p have index c.
class FieldElement {
public:
    constexpr FieldElement() = default;
    constexpr explicit FieldElement(std::int64_t index) : index_(index) {}

    constexpr std::int64_t index() const { return index_; }
    constexpr bool is_zero() const { return index_ == 0; }

    friend constexpr bool operator==(FieldElement, FieldElement) = default;
    friend constexpr bool operator<(FieldElement a, FieldElement b) {
        return a.index_ < b.index_;
    }

private:
    std::int64_t index_ = 0;
};

/// A fully built GF(p^m): modulus, exp/log tables, trace table, and the
/// p-th roots of unity used by the additive character. Immutable after
/// construction; safe to share across threads.
class FieldContext {
public:
    std::int64_t p() const { return p_; }
    int m() const { return m_; }
    std::int64_t size() const { return q_; }          // p^m
    std::int64_t order() const { return q_ - 1; }     // |F_q^*|
    const PrimePoly& modulus() const { return modulus_; }

    /// The primitive element alpha (residue class of x).
    FieldElement alpha() const { return exp_[1]; }

    /// alpha^i for any integer i (exponent reduced mod p^m - 1).
    FieldElement exp(std::int64_t i) const {
        const std::int64_t n = order();
        std::int64_t r = i % n;
        if (r < 0) r += n;
        return exp_[static_cast<std::size_t>(r)];
    }

    /// Discrete log of a nonzero element: exp(log(a)) == a.
    std::int64_t log(FieldElement a) const {
        check(a);
        if (a.is_zero()) throw RangeError("FieldContext::log: zero has no logarithm");
        return log_[static_cast<std::size_t>(a.index())];
    }

    FieldElement element(std::int64_t index) const {
        if (index < 0 || index >= q_)
            throw RangeError("FieldContext::element: index out of range");
        return FieldElement(index);
    }

    /// Embeds a residue c in F_p as the constant element with index c.
    FieldElement from_constant(std::int64_t c) const {
        std::int64_t r = c % p_;
        if (r < 0) r += p_;
        return FieldElement(r);
    }

    FieldElement add(FieldElement a, FieldElement b) const;
    FieldElement neg(FieldElement a) const;
    FieldElement sub(FieldElement a, FieldElement b) const {
        return add(a, neg(b));
    }

    FieldElement mul(FieldElement a, FieldElement b) const {
        check(a);
        check(b);
        if (a.is_zero() || b.is_zero()) return FieldElement(0);
        const std::int64_t n = order();
        std::int64_t e = log_[a.index()] + log_[b.index()];
        if (e >= n) e -= n;
        return exp_[static_cast<std::size_t>(e)];
    }

    /// a^e with the exponent reduced mod p^m - 1 for nonzero a; 0^0 = 1.
    FieldElement pow(FieldElement a, std::int64_t e) const;

    /// Tr_1^m(x) = sum of the Frobenius conjugates x^{p^i}, a residue mod p.
    std::int32_t trace(FieldElement x) const {
        check(x);
        return trace_[static_cast<std::size_t>(x.index())];
    }

    /// exp(2*pi*j*t/p) for t in [0, p); shared by every character evaluation
    /// so equal phases are bit-identical.
    const std::vector<std::complex<double>>& unit_roots() const { return roots_; }

private:
    friend FieldContext build_field(std::int64_t, int, std::optional<PrimePoly>, std::int64_t);

    void check(FieldElement a) const {
        if (a.index() < 0 || a.index() >= q_)
            throw RangeError("FieldContext: element does not belong to this field");
    }

    std::int64_t p_ = 0;
    int m_ = 0;
    std::int64_t q_ = 0;
    PrimePoly modulus_{3, {1, 1}};
    std::vector<FieldElement> exp_;       // size q-1, exp_[i] = alpha^i
    std::vector<std::int64_t> log_;       // size q, log_[0] = -1 sentinel
    std::vector<std::int32_t> trace_;     // size q
    std::vector<std::complex<double>> roots_;
};

/// Checks that p is an odd prime, m >= 1, and p^m fits under the cap;
/// returns p^m.
std::int64_t validate_field_parameters(std::int64_t p, int m,
                                       std::int64_t cap = kDefaultFieldCap);

/// Lexicographically smallest monic primitive polynomial of degree m over
/// F_p, where candidates are ordered by their base-p integer encoding with
/// the constant term as the least significant digit. Deterministic.
PrimePoly find_primitive_polynomial(std::int64_t p, int m,
                                    std::int64_t cap = kDefaultFieldCap);

/// Builds GF(p^m). The modulus defaults to find_primitive_polynomial(p, m)
/// and is rejected (ValidationError) unless primitive: the order of
/// x mod g must be exactly p^m - 1.
FieldContext build_field(std::int64_t p, int m,
                         std::optional<PrimePoly> modulus = std::nullopt,
                         std::int64_t cap = kDefaultFieldCap);

/// Monic polynomial over F_p of least degree with x as a root, computed as
/// the product over the Frobenius conjugate set. Requires x != 0.
PrimePoly minimal_polynomial(const FieldContext& ctx, FieldElement x);

/// Sparse polynomial over GF(p^m): exponent -> coefficient.
using SparsePoly = std::map<std::int64_t, FieldElement>;

/// Additive character sum  sum_x exp(2*pi*j * Tr(f(x)) / p)  by direct
/// summation over all p^m field elements.
std::complex<double> character_sum(const FieldContext& ctx, const SparsePoly& f);

}  // namespace charsense

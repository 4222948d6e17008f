#pragma once

// Linear feedback shift registers over F_p generating the trace sequences
// Tr(b * alpha^{r k}), and their h-channel combination
//
//     c_{b_1..b_h}(k) = sum_i Tr(b_i * alpha^{r_i k})  (mod p).
//
// The feedback polynomial of a channel is the minimal polynomial of
// alpha^r: for monic g(x) = x^e + sum_i g_i x^i the recurrence is
// s_{k+e} = -sum_i g_i s_{k+i} mod p, i.e. taps[i] = (-g_i) mod p.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "charsense/galois.hpp"

namespace charsense {

struct LfsrSpec {
    std::int64_t p = 0;
    std::int64_t field_size = 0;  // p^m of the defining field
    std::int64_t exponent = 0;    // r
    std::vector<std::int32_t> taps;  // length = deg min-poly(alpha^r)
};

struct LfsrState {
    std::vector<std::int32_t> registers;  // registers[k] holds output step k
};

/// One LFSR channel per exponent r_i; all channels share p.
struct CombinedGenerator {
    std::int64_t p = 0;
    std::int64_t field_size = 0;
    std::vector<std::pair<LfsrSpec, LfsrState>> channels;
};

/// Feedback taps for the trace sequence of alpha^r. Requires gcd(r, p^m)=1,
/// i.e. p does not divide r.
LfsrSpec lfsr_from_exponent(const FieldContext& ctx, std::int64_t r);

/// Initial registers [Tr(b), Tr(b alpha^r), ..., Tr(b alpha^{r(e-1)})] so
/// the output stream equals the trace sequence from step 0.
LfsrState seed_for_coefficient(const FieldContext& ctx, std::int64_t r, FieldElement b);

/// Builds the h-channel generator for exponents r and coefficients b.
CombinedGenerator combined_generator(const FieldContext& ctx,
                                     std::span<const std::int64_t> exponents,
                                     std::span<const FieldElement> coefficients);

/// First `length` outputs of a single channel. Pure: the state argument is
/// not mutated and repeated calls return identical output.
std::vector<std::int32_t> generate(const LfsrSpec& spec, const LfsrState& state,
                                   std::int64_t length);

/// Termwise mod-p sum of all channel outputs. length must not exceed one
/// period (p^m - 1); periodic wrap is not implicit.
std::vector<std::int32_t> generate(const CombinedGenerator& gen, std::int64_t length);

/// Writes "# p m r b" then one residue per line; golden-vector dump format.
void dump_sequence(std::ostream& out, const FieldContext& ctx, std::int64_t r,
                   FieldElement b, std::span<const std::int32_t> seq);

}  // namespace charsense

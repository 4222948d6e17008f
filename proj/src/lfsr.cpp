#include "charsense/lfsr.hpp"

#include <ostream>

namespace charsense {

LfsrSpec lfsr_from_exponent(const FieldContext& ctx, std::int64_t r) {
    if (r <= 0 || r % ctx.p() == 0)
        throw ValidationError("lfsr_from_exponent: exponent " + std::to_string(r) +
                              " violates gcd(r, p^m) = 1");
    const PrimePoly g = minimal_polynomial(ctx, ctx.exp(r));
    LfsrSpec spec;
    spec.p = ctx.p();
    spec.field_size = ctx.size();
    spec.exponent = r;
    spec.taps.resize(static_cast<std::size_t>(g.degree()));
    for (int i = 0; i < g.degree(); ++i) {
        const std::int32_t gi = g.coeffs()[static_cast<std::size_t>(i)];
        spec.taps[static_cast<std::size_t>(i)] =
            static_cast<std::int32_t>(gi == 0 ? 0 : ctx.p() - gi);
    }
    return spec;
}

LfsrState seed_for_coefficient(const FieldContext& ctx, std::int64_t r, FieldElement b) {
    const LfsrSpec spec = lfsr_from_exponent(ctx, r);
    LfsrState state;
    state.registers.resize(spec.taps.size());
    for (std::size_t k = 0; k < spec.taps.size(); ++k)
        state.registers[k] =
            ctx.trace(ctx.mul(b, ctx.exp(r * static_cast<std::int64_t>(k))));
    return state;
}

CombinedGenerator combined_generator(const FieldContext& ctx,
                                     std::span<const std::int64_t> exponents,
                                     std::span<const FieldElement> coefficients) {
    if (exponents.size() != coefficients.size())
        throw ValidationError("combined_generator: one coefficient per exponent required");
    CombinedGenerator gen;
    gen.p = ctx.p();
    gen.field_size = ctx.size();
    gen.channels.reserve(exponents.size());
    for (std::size_t i = 0; i < exponents.size(); ++i)
        gen.channels.emplace_back(lfsr_from_exponent(ctx, exponents[i]),
                                  seed_for_coefficient(ctx, exponents[i], coefficients[i]));
    return gen;
}

std::vector<std::int32_t> generate(const LfsrSpec& spec, const LfsrState& state,
                                   std::int64_t length) {
    if (length < 0 || length > spec.field_size - 1)
        throw RangeError("generate: length exceeds one period (p^m - 1)");
    if (state.registers.size() != spec.taps.size())
        throw ValidationError("generate: state width does not match tap count");
    std::vector<std::int32_t> regs = state.registers;
    std::vector<std::int32_t> out(static_cast<std::size_t>(length));
    const std::size_t e = regs.size();
    for (std::int64_t k = 0; k < length; ++k) {
        out[static_cast<std::size_t>(k)] = regs[0];
        std::int64_t fb = 0;
        for (std::size_t i = 0; i < e; ++i) fb += std::int64_t(spec.taps[i]) * regs[i];
        fb %= spec.p;
        for (std::size_t i = 0; i + 1 < e; ++i) regs[i] = regs[i + 1];
        regs[e - 1] = static_cast<std::int32_t>(fb);
    }
    return out;
}

std::vector<std::int32_t> generate(const CombinedGenerator& gen, std::int64_t length) {
    if (length < 0 || length > gen.field_size - 1)
        throw RangeError("generate: length exceeds one period (p^m - 1)");
    std::vector<std::int32_t> out(static_cast<std::size_t>(length), 0);
    for (const auto& [spec, state] : gen.channels) {
        const auto channel = generate(spec, state, length);
        for (std::int64_t k = 0; k < length; ++k) {
            auto& v = out[static_cast<std::size_t>(k)];
            v = static_cast<std::int32_t>((v + channel[static_cast<std::size_t>(k)]) %
                                          gen.p);
        }
    }
    return out;
}

void dump_sequence(std::ostream& out, const FieldContext& ctx, std::int64_t r,
                   FieldElement b, std::span<const std::int32_t> seq) {
    out << "# " << ctx.p() << ' ' << ctx.m() << ' ' << r << ' ' << b.index() << '\n';
    for (auto v : seq) out << v << '\n';
}

}  // namespace charsense

#include "stability.hpp"

#include <cmath>

#include "error.hpp"

namespace scalekit {

namespace {

constexpr FloatFormatSpec kFp16{"fp16", 5, 10, 0x1p-24, 65504.0};
constexpr FloatFormatSpec kBf16{"bf16", 8, 7, 0x1p-133, 0x1.fep127};
constexpr FloatFormatSpec kFp32{"fp32", 8, 23, 0x1p-149, 0x1.fffffep127};

} // namespace

const FloatFormatSpec& format_fp16() { return kFp16; }
const FloatFormatSpec& format_bf16() { return kBf16; }
const FloatFormatSpec& format_fp32() { return kFp32; }

// Quantization walk-through for fp16 (bias 15, 10 mantissa bits):
//   normals:    quantum = 2^(e-10) for exponent e in [-14, 15]
//   subnormals: quantum = 2^(-14-10) = 2^-24 = min_subnormal
// A magnitude below half the smallest subnormal rounds to zero; an exact
// half rounds to zero too (ties-to-even, zero has the even significand).
double cast_to_format(double value, const FloatFormatSpec& f, bool ftz) {
    if (value == 0.0 || std::isnan(value) || std::isinf(value)) return value;

    const int bias = (1 << (f.exponent_bits - 1)) - 1;
    const int min_normal_exp = 1 - bias; // exponent of the smallest normal
    const double a = std::fabs(value);
    const double sign = std::signbit(value) ? -1.0 : 1.0;

    if (ftz && a < std::ldexp(1.0, min_normal_exp)) return sign * 0.0;

    int e = std::ilogb(a);
    if (e < min_normal_exp) e = min_normal_exp; // subnormal range
    const double quantum = std::ldexp(1.0, e - f.mantissa_bits);

    // a/quantum <= 2^(mantissa_bits+1) for in-range values, so the scaled
    // division and nearbyint are exact in double; rounding mode is RNE.
    double r = std::nearbyint(a / quantum) * quantum;
    if (r > f.max_finite) {
        // Values beyond the overflow threshold round to infinity.
        const double ulp = std::ldexp(1.0, std::ilogb(f.max_finite) - f.mantissa_bits);
        if (a >= f.max_finite + ulp / 2.0) return sign * HUGE_VAL;
        r = f.max_finite;
    }
    return sign * r;
}

double cast_fraction_zeroed(std::span<const double> values, const FloatFormatSpec& f,
                            bool ftz) {
    if (values.empty()) fail(ErrorCode::empty_input, "value list is empty");
    std::size_t nonzero = 0, zeroed = 0;
    for (double v : values) {
        if (v == 0.0) continue; // already zero, not newly zeroed
        ++nonzero;
        if (cast_to_format(v, f, ftz) == 0.0) ++zeroed;
    }
    if (nonzero == 0) return 0.0;
    return static_cast<double>(zeroed) / static_cast<double>(nonzero);
}

LossScaleState loss_scale_step(const LossScaleState& state, bool overflow_observed) {
    if (!(state.scale > 0.0)) fail(ErrorCode::invalid_argument, "scale must be positive");
    if (state.growth_interval <= 0)
        fail(ErrorCode::invalid_argument, "growth_interval must be positive");
    if (!(state.growth_factor > 1.0) || !(state.backoff_factor > 0.0) ||
        !(state.backoff_factor < 1.0))
        fail(ErrorCode::invalid_argument, "need growth_factor > 1 > backoff_factor > 0");

    LossScaleState next = state;
    if (overflow_observed) {
        next.scale = state.scale * state.backoff_factor;
        next.steps_since_overflow = 0;
        return next;
    }
    next.steps_since_overflow = state.steps_since_overflow + 1;
    if (next.steps_since_overflow >= state.growth_interval) {
        next.scale = state.scale * state.growth_factor;
        next.steps_since_overflow = 0;
    }
    return next;
}

AdamEpsilonCheck adam_epsilon_ok(double velocity_mean, double epsilon) {
    if (velocity_mean < 0.0)
        fail(ErrorCode::invalid_argument, "velocity mean must be non-negative");
    if (!(epsilon > 0.0)) fail(ErrorCode::invalid_argument, "epsilon must be positive");
    const double threshold = std::sqrt(velocity_mean) / 1000.0;
    return {epsilon < threshold, threshold};
}

} // namespace scalekit

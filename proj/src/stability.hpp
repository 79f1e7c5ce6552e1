#ifndef SCALEKIT_STABILITY_HPP_
#define SCALEKIT_STABILITY_HPP_

#include <cstdint>
#include <span>

namespace scalekit {

struct FloatFormatSpec {
    const char* name;
    int exponent_bits;
    int mantissa_bits;
    double min_subnormal;
    double max_finite;
};

const FloatFormatSpec& format_fp16();
const FloatFormatSpec& format_bf16();
const FloatFormatSpec& format_fp32();

// Round-to-nearest-even cast of a double into the format, with subnormal
// support. ftz flushes anything below the smallest normal to zero instead.
double cast_to_format(double value, const FloatFormatSpec& format, bool ftz = false);

// Fraction of the nonzero inputs that cast to exactly zero.
double cast_fraction_zeroed(std::span<const double> values, const FloatFormatSpec& format,
                            bool ftz = false);

struct LossScaleState {
    double scale = 32768.0; // 2^15
    std::int64_t steps_since_overflow = 0;
    std::int64_t growth_interval = 2000;
    double growth_factor = 2.0;
    double backoff_factor = 0.5;
};

LossScaleState loss_scale_step(const LossScaleState& state, bool overflow_observed);

struct AdamEpsilonCheck {
    bool ok = false;
    double threshold = 0.0;
};

// epsilon must stay below sqrt(mean velocity)/1000 or updates stagnate.
AdamEpsilonCheck adam_epsilon_ok(double velocity_mean, double epsilon);

} // namespace scalekit

#endif

#ifndef SCALEKIT_SCALING_HPP_
#define SCALEKIT_SCALING_HPP_

#include <cstdint>
#include <vector>

namespace scalekit {

// L(f) = (f/a)^b + c
struct PowerLawFit {
    double a = 0.0; // FLOPs scale
    double b = 0.0; // exponent, negative for decreasing loss
    double c = 0.0; // irreducible loss, nats/token
};

struct LossPoint {
    double flops = 0.0;
    double loss = 0.0;
};

// Published coefficients for the compute-optimal Pile frontier.
inline constexpr PowerLawFit kPileFrontierFit{5.984e22, -0.0737, 0.5066};

PowerLawFit fit_power_law(std::vector<LossPoint> points);

double predict_loss(const PowerLawFit& fit, double flops);

// Fractional loss penalty for training at tau tokens/parameter instead of 20.
double loss_degradation(double tau);

// Signed percent above (+) or below (-) the fitted frontier.
double relative_gap(const PowerLawFit& fit, const LossPoint& point);

// Rescale a cross-entropy measured with one tokenizer to the token count of a
// reference tokenizer, holding total nats over the corpus fixed.
double correct_vocab_xent(double xent, std::int64_t tokens_source_vocab,
                          std::int64_t tokens_reference_vocab);

} // namespace scalekit

#endif

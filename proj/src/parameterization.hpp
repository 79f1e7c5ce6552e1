#ifndef SCALEKIT_PARAMETERIZATION_HPP_
#define SCALEKIT_PARAMETERIZATION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "accounting.hpp"

namespace scalekit {

enum class Parameterization { sp, mup };

// Transferable base hyperparameters tuned on the proxy model.
struct MuPBase {
    std::int64_t d_model_base = 256;
    double eta_base = 6e-3;
    double sigma_base = 0.08;
    double m_emb = 10.0;
};

// Initializer std is the nominal (pre-truncation) sigma of a +/-2-sigma
// truncated normal; zero means the class is constant-initialized.
struct LayerRule {
    double init_std = 0.0;
    double lr = 0.0;
    double multiplier = 1.0;
};

struct LayerPlan {
    Parameterization parameterization = Parameterization::sp;
    LayerRule embedding;
    LayerRule layer_norm; // gain starts at 1, bias at 0, for SP and muP alike
    LayerRule bias;
    LayerRule qkv;
    LayerRule attn_output;
    LayerRule ffn1;
    LayerRule ffn2;
    LayerRule logits;
    double attention_logit_scale = 0.0;
    double m_width = 1.0;
    double layer_norm_gain_init = 1.0;
};

LayerPlan sp_plan(const ModelShape& shape, double lr);

LayerPlan mup_plan(const ModelShape& shape, const MuPBase& base);

std::vector<LayerPlan> mu_transfer(const MuPBase& base,
                                   const std::vector<ModelShape>& targets);

enum class DecayType { linear, cosine };

struct LRSchedule {
    double max_lr = 0.0;
    std::int64_t warmup_tokens = 375'000'000;
    std::int64_t total_tokens = 0;
    DecayType decay = DecayType::linear;
    double floor_fraction = 0.1;
};

double lr_at(const LRSchedule& schedule, std::int64_t tokens_seen);

double scale_lr_for_batch(double lr, std::int64_t batch_ref, std::int64_t batch_new);

struct ProbeRow {
    std::int64_t width = 0;
    double rms = 0.0;
};

// Output RMS of a freshly initialized hidden (ffn1-class) layer at each
// width, estimated from `samples` independent row/input draws.
std::vector<ProbeRow> activation_scale_probe(Parameterization parameterization,
                                             const MuPBase& base,
                                             const std::vector<std::int64_t>& widths,
                                             std::int64_t samples, std::uint64_t seed);

// Key-value text form consumed by external training code.
std::string format_layer_plan(const LayerPlan& plan, const ModelShape& shape);

} // namespace scalekit

#endif

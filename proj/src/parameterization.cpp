#include "parameterization.hpp"

#include <cmath>

#include "error.hpp"
#include "report.hpp"
#include "rng.hpp"

namespace scalekit {

LayerPlan sp_plan(const ModelShape& shape, double lr) {
    validate_shape(shape);
    if (shape.n_layers < 1) fail(ErrorCode::invalid_argument, "n_layers must be >= 1");
    if (!(lr > 0.0)) fail(ErrorCode::invalid_argument, "lr must be positive");

    const double sigma = 0.02;
    const double residual_sigma = sigma / std::sqrt(2.0 * static_cast<double>(shape.n_layers));

    LayerPlan p;
    p.parameterization = Parameterization::sp;
    p.embedding = {sigma, lr, 1.0};
    p.layer_norm = {0.0, lr, 1.0};
    p.bias = {0.0, lr, 1.0};
    p.qkv = {sigma, lr, 1.0};
    p.attn_output = {residual_sigma, lr, 1.0};
    p.ffn1 = {sigma, lr, 1.0};
    p.ffn2 = {residual_sigma, lr, 1.0};
    p.logits = {sigma, lr, 1.0};
    p.attention_logit_scale = 1.0 / std::sqrt(static_cast<double>(shape.d_head));
    p.m_width = 1.0;
    return p;
}

LayerPlan mup_plan(const ModelShape& shape, const MuPBase& base) {
    validate_shape(shape);
    if (shape.n_layers < 1) fail(ErrorCode::invalid_argument, "n_layers must be >= 1");
    if (base.d_model_base <= 0 || !(base.eta_base > 0.0) || !(base.sigma_base > 0.0) ||
        !(base.m_emb > 0.0))
        fail(ErrorCode::invalid_argument, "muP base values must be positive");

    const double m_width =
        static_cast<double>(shape.d_model) / static_cast<double>(base.d_model_base);
    const double eta = base.eta_base;
    const double eta_scaled = eta / m_width;
    const double var = base.sigma_base * base.sigma_base;
    const double hidden_sigma = std::sqrt(var / m_width);
    const double residual_sigma =
        std::sqrt(var / (2.0 * m_width * static_cast<double>(shape.n_layers)));

    LayerPlan p;
    p.parameterization = Parameterization::mup;
    p.embedding = {base.sigma_base, eta, base.m_emb};
    p.layer_norm = {0.0, eta, 1.0};
    p.bias = {0.0, eta, 1.0};
    p.qkv = {hidden_sigma, eta_scaled, 1.0};
    p.attn_output = {residual_sigma, eta_scaled, 1.0};
    p.ffn1 = {hidden_sigma, eta_scaled, 1.0};
    p.ffn2 = {residual_sigma, eta_scaled, 1.0};
    p.logits = {base.sigma_base, eta, 1.0 / m_width};
    p.attention_logit_scale = 1.0 / static_cast<double>(shape.d_head);
    p.m_width = m_width;
    return p;
}

std::vector<LayerPlan> mu_transfer(const MuPBase& base,
                                   const std::vector<ModelShape>& targets) {
    std::vector<LayerPlan> plans;
    plans.reserve(targets.size());
    for (const auto& shape : targets) plans.push_back(mup_plan(shape, base));
    return plans;
}

double lr_at(const LRSchedule& s, std::int64_t tokens_seen) {
    if (!(s.max_lr > 0.0)) fail(ErrorCode::invalid_argument, "max_lr must be positive");
    if (s.warmup_tokens < 0 || s.warmup_tokens >= s.total_tokens)
        fail(ErrorCode::invalid_argument, "warmup_tokens must be in [0, total_tokens)");
    if (!(s.floor_fraction > 0.0) || s.floor_fraction > 1.0)
        fail(ErrorCode::invalid_argument, "floor_fraction must be in (0, 1]");
    if (tokens_seen < 0 || tokens_seen > s.total_tokens)
        fail(ErrorCode::out_of_range, "tokens_seen outside [0, total_tokens]");

    if (tokens_seen < s.warmup_tokens) {
        return s.max_lr * (static_cast<double>(tokens_seen) /
                           static_cast<double>(s.warmup_tokens));
    }
    if (tokens_seen == s.warmup_tokens) return s.max_lr;
    if (tokens_seen == s.total_tokens) return s.floor_fraction * s.max_lr;

    const double t = static_cast<double>(tokens_seen - s.warmup_tokens) /
                     static_cast<double>(s.total_tokens - s.warmup_tokens);
    const double floor_lr = s.floor_fraction * s.max_lr;
    if (s.decay == DecayType::linear) return floor_lr + (s.max_lr - floor_lr) * (1.0 - t);
    return floor_lr + (s.max_lr - floor_lr) * (1.0 + std::cos(M_PI * t)) / 2.0;
}

double scale_lr_for_batch(double lr, std::int64_t batch_ref, std::int64_t batch_new) {
    if (batch_ref <= 0 || batch_new <= 0)
        fail(ErrorCode::zero_batch, "batch sizes must be positive");
    return lr * (static_cast<double>(batch_new) / static_cast<double>(batch_ref));
}

std::vector<ProbeRow> activation_scale_probe(Parameterization parameterization,
                                             const MuPBase& base,
                                             const std::vector<std::int64_t>& widths,
                                             std::int64_t samples, std::uint64_t seed) {
    if (widths.empty()) fail(ErrorCode::empty_input, "widths list is empty");
    if (samples < 1) fail(ErrorCode::invalid_argument, "samples must be >= 1");
    for (auto w : widths)
        if (w < 64) fail(ErrorCode::invalid_argument, "probe widths must be >= 64");

    std::vector<ProbeRow> rows;
    rows.reserve(widths.size());
    Rng rng(seed);
    for (auto w : widths) {
        double sigma;
        if (parameterization == Parameterization::sp) {
            sigma = 0.02;
        } else {
            const double m_width =
                static_cast<double>(w) / static_cast<double>(base.d_model_base);
            sigma = base.sigma_base / std::sqrt(m_width);
        }
        // Each sample is one output coordinate: a fresh initializer row
        // dotted with a fresh standard-normal input. E[y^2] = w * sigma'^2.
        double sum_sq = 0.0;
        for (std::int64_t s = 0; s < samples; ++s) {
            double y = 0.0;
            for (std::int64_t j = 0; j < w; ++j)
                y += rng.next_truncated_gaussian(sigma) * rng.next_gaussian();
            sum_sq += y * y;
        }
        rows.push_back({w, std::sqrt(sum_sq / static_cast<double>(samples))});
    }
    return rows;
}

std::string format_layer_plan(const LayerPlan& plan, const ModelShape& shape) {
    std::string out;
    out += "# scalekit layer plan v1\n";
    out += "parameterization: ";
    out += plan.parameterization == Parameterization::sp ? "sp" : "mup";
    out += "\n";
    out += "d_model: " + std::to_string(shape.d_model) + "\n";
    out += "n_layers: " + std::to_string(shape.n_layers) + "\n";
    out += "d_head: " + std::to_string(shape.d_head) + "\n";
    out += "d_ffn: " + std::to_string(shape.d_ffn) + "\n";
    out += "m_width: " + fmt_g6(plan.m_width) + "\n";
    out += "attention_logit_scale: " + fmt_g6(plan.attention_logit_scale) + "\n";
    out += "layer_norm_gain_init: " + fmt_g6(plan.layer_norm_gain_init) + "\n";
    const auto rule = [&out](const char* name, const LayerRule& r) {
        out += name;
        out += ": init_std=" + fmt_g6(r.init_std) + " lr=" + fmt_g6(r.lr) +
               " multiplier=" + fmt_g6(r.multiplier) + "\n";
    };
    rule("embedding", plan.embedding);
    rule("layer_norm", plan.layer_norm);
    rule("bias", plan.bias);
    rule("qkv", plan.qkv);
    rule("attn_output", plan.attn_output);
    rule("ffn1", plan.ffn1);
    rule("ffn2", plan.ffn2);
    rule("output_logits", plan.logits);
    return out;
}

} // namespace scalekit

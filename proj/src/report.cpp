#include "report.hpp"

#include <cstdio>

#include "parameterization.hpp"
#include "planner.hpp"
#include "records.hpp"
#include "stability.hpp"

namespace scalekit {

std::string fmt_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string report_params(const ModelShape& s) {
    const std::int64_t params = count_params(s);
    std::string out;
    out += "shape: d_model=" + std::to_string(s.d_model) +
           " n_layers=" + std::to_string(s.n_layers) + " d_head=" + std::to_string(s.d_head) +
           " d_ffn=" + std::to_string(s.d_ffn) + " vocab=" + std::to_string(s.vocab_size) +
           " seq=" + std::to_string(s.seq_len) + "\n";
    out += "params: " + std::to_string(params) + "\n";
    out += "tokens_at_20_per_param: " + std::to_string(chinchilla_tokens(params)) + "\n";
    return out;
}

std::string report_flops(const ModelShape& s, std::int64_t tokens, bool inference) {
    std::string out;
    out += "params: " + std::to_string(count_params(s)) + "\n";
    out += "flops_per_sequence_train: " + flops_per_sequence(s, FlopMode::train).to_string() +
           "\n";
    out += "flops_per_sequence_inference: " +
           flops_per_sequence(s, FlopMode::inference).to_string() + "\n";
    out += "inference_flops_per_token: " + inference_flops_per_token(s).to_string() + "\n";
    if (inference) {
        const WideCount total = inference_flops_per_token(s) *
                                WideCount(static_cast<std::uint64_t>(tokens));
        out += "inference_flops_for_tokens: " + total.to_string() + "\n";
    } else {
        out += "train_flops_total: " + train_flops_total(s, tokens).to_string() + "\n";
    }
    out += "tokens: " + std::to_string(tokens) + "\n";
    return out;
}

std::string report_fit(const std::vector<EvalRecord>& records, const PowerLawFit& fit) {
    std::string out;
    out += "fit: a=" + fmt_g6(fit.a) + " b=" + fmt_g6(fit.b) + " c=" + fmt_g6(fit.c) + "\n";
    out += "points: " + std::to_string(records.size()) + "\n";
    out += "family label flops loss predicted gap_percent\n";
    for (const auto& r : records) {
        const double predicted = predict_loss(fit, r.train_flops);
        const double gap = relative_gap(fit, {r.train_flops, *r.pile_xent});
        out += r.family + " " + r.label + " " + fmt_g6(r.train_flops) + " " +
               fmt_g6(*r.pile_xent) + " " + fmt_g6(predicted) + " " + fmt_g6(gap) + "\n";
    }
    return out;
}

std::string report_predict(const PowerLawFit& fit, double flops) {
    std::string out;
    out += "fit: a=" + fmt_g6(fit.a) + " b=" + fmt_g6(fit.b) + " c=" + fmt_g6(fit.c) + "\n";
    out += "flops: " + fmt_g6(flops) + "\n";
    out += "loss: " + fmt_g6(predict_loss(fit, flops)) + "\n";
    return out;
}

std::string report_degrade(double tau) {
    std::string out;
    out += "tokens_per_parameter: " + fmt_g6(tau) + "\n";
    out += "loss_degradation: " + fmt_g6(loss_degradation(tau)) + "\n";
    return out;
}

std::string report_plan(const TrainingPlan& p) {
    std::string out;
    out += "shape: d_model=" + std::to_string(p.shape.d_model) +
           " n_layers=" + std::to_string(p.shape.n_layers) +
           " d_head=" + std::to_string(p.shape.d_head) +
           " d_ffn=" + std::to_string(p.shape.d_ffn) + "\n";
    out += "params: " + std::to_string(p.params) + "\n";
    out += "tokens: " + std::to_string(p.tokens) + "\n";
    out += "train_flops: " + p.train_flops.to_string() + "\n";
    out += "batch_size_tokens: " + std::to_string(p.batch_size_tokens) + "\n";
    out += "base_lr: " + fmt_g6(p.base_lr) + "\n";
    out += std::string("decay: ") + (p.cosine_decay ? "cosine" : "linear") + "\n";
    if (p.batch_ramp_boundary_tokens > 0) {
        out += "batch_ramp: initial=" + std::to_string(p.batch_ramp_initial_tokens) +
               " until_tokens=" + std::to_string(p.batch_ramp_boundary_tokens) + "\n";
    }
    return out;
}

std::string report_frontier(const std::vector<EvalRecord>& considered,
                            const std::vector<std::size_t>& frontier_indices,
                            std::int64_t n_infer_tokens, std::size_t skipped_missing_loss) {
    std::string out;
    out += "n_infer_tokens: " + std::to_string(n_infer_tokens) + "\n";
    out += "records_considered: " + std::to_string(considered.size()) + "\n";
    if (skipped_missing_loss > 0)
        out += "records_skipped_missing_loss: " + std::to_string(skipped_missing_loss) + "\n";
    out += std::to_string(frontier_indices.size()) + " records on frontier\n";
    out += "family label total_flops pile_xent\n";
    for (std::size_t idx : frontier_indices) {
        const auto& r = considered[idx];
        const WideCount total = total_cost(record_cost_query(r, n_infer_tokens));
        out += r.family + " " + r.label + " " + fmt_g6(total.to_double()) + " " +
               fmt_g6(*r.pile_xent) + "\n";
    }
    return out;
}

std::string report_probe(const std::vector<ProbeRow>& rows) {
    std::string out = "width rms\n";
    for (const auto& row : rows)
        out += std::to_string(row.width) + " " + fmt_g6(row.rms) + "\n";
    return out;
}

std::string report_schedule(const LRSchedule& s, std::int64_t at, double lr) {
    std::string out;
    out += "max_lr: " + fmt_g6(s.max_lr) + "\n";
    out += "warmup_tokens: " + std::to_string(s.warmup_tokens) + "\n";
    out += "total_tokens: " + std::to_string(s.total_tokens) + "\n";
    out += std::string("decay: ") + (s.decay == DecayType::cosine ? "cosine" : "linear") + "\n";
    out += "tokens_seen: " + std::to_string(at) + "\n";
    out += "lr: " + fmt_g6(lr) + "\n";
    return out;
}

std::string report_cast(const FloatFormatSpec& format, std::size_t total,
                        std::size_t nonzero, std::size_t zeroed, double fraction) {
    std::string out;
    out += std::string("format: ") + format.name + "\n";
    out += "values: " + std::to_string(total) + "\n";
    out += "nonzero_values: " + std::to_string(nonzero) + "\n";
    out += "zeroed_by_cast: " + std::to_string(zeroed) + "\n";
    out += "fraction_zeroed: " + fmt_g6(fraction) + "\n";
    return out;
}

std::string report_adam(double mu_v, double eps, double threshold, bool ok) {
    std::string out;
    out += "velocity_mean: " + fmt_g6(mu_v) + "\n";
    out += "epsilon: " + fmt_g6(eps) + "\n";
    out += "threshold: " + fmt_g6(threshold) + "\n";
    out += std::string("ok: ") + (ok ? "yes" : "no") + "\n";
    return out;
}

} // namespace scalekit

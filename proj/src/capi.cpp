#include "scalekit/scalekit.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "accounting.hpp"
#include "error.hpp"
#include "parameterization.hpp"
#include "planner.hpp"
#include "records.hpp"
#include "report.hpp"
#include "scaling.hpp"
#include "stability.hpp"
#include "svg.hpp"
#include "wide_count.hpp"

namespace {

thread_local std::string g_last_error;

sk_status to_status(scalekit::ErrorCode code) { return static_cast<sk_status>(code); }

template <typename Fn>
sk_status guarded(Fn&& fn) {
    try {
        fn();
        return SK_OK;
    } catch (const scalekit::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return SK_ERR_IO;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SK_ERR_INVALID_ARGUMENT;
    }
}

scalekit::ModelShape to_cpp(const sk_shape& s) {
    return {s.d_model, s.n_layers, s.d_head, s.d_ffn, s.vocab_size, s.seq_len};
}

sk_shape to_c(const scalekit::ModelShape& s) {
    return {s.d_model, s.n_layers, s.d_head, s.d_ffn, s.vocab_size, s.seq_len};
}

scalekit::WideCount to_cpp(sk_u128 v) { return scalekit::WideCount::from_parts(v.hi, v.lo); }

sk_u128 to_c(const scalekit::WideCount& v) { return {v.hi(), v.lo()}; }

scalekit::PowerLawFit to_cpp(const sk_power_law& f) { return {f.a, f.b, f.c}; }

scalekit::MuPBase to_cpp(const sk_mup_base& b) {
    return {b.d_model_base, b.eta_base, b.sigma_base, b.m_emb};
}

scalekit::FloatFormatSpec to_cpp(const sk_float_format& f) {
    return {f.name, f.exponent_bits, f.mantissa_bits, f.min_subnormal, f.max_finite};
}

sk_layer_rule to_c(const scalekit::LayerRule& r) { return {r.init_std, r.lr, r.multiplier}; }

sk_layer_plan to_c(const scalekit::LayerPlan& p) {
    sk_layer_plan out;
    out.is_mup = p.parameterization == scalekit::Parameterization::mup ? 1 : 0;
    out.embedding = to_c(p.embedding);
    out.layer_norm = to_c(p.layer_norm);
    out.bias = to_c(p.bias);
    out.qkv = to_c(p.qkv);
    out.attn_output = to_c(p.attn_output);
    out.ffn1 = to_c(p.ffn1);
    out.ffn2 = to_c(p.ffn2);
    out.output_logits = to_c(p.logits);
    out.attention_logit_scale = p.attention_logit_scale;
    out.m_width = p.m_width;
    out.layer_norm_gain_init = p.layer_norm_gain_init;
    return out;
}

scalekit::LayerPlan to_cpp(const sk_layer_plan& p) {
    scalekit::LayerPlan out;
    out.parameterization =
        p.is_mup ? scalekit::Parameterization::mup : scalekit::Parameterization::sp;
    out.embedding = {p.embedding.init_std, p.embedding.lr, p.embedding.multiplier};
    out.layer_norm = {p.layer_norm.init_std, p.layer_norm.lr, p.layer_norm.multiplier};
    out.bias = {p.bias.init_std, p.bias.lr, p.bias.multiplier};
    out.qkv = {p.qkv.init_std, p.qkv.lr, p.qkv.multiplier};
    out.attn_output = {p.attn_output.init_std, p.attn_output.lr, p.attn_output.multiplier};
    out.ffn1 = {p.ffn1.init_std, p.ffn1.lr, p.ffn1.multiplier};
    out.ffn2 = {p.ffn2.init_std, p.ffn2.lr, p.ffn2.multiplier};
    out.logits = {p.output_logits.init_std, p.output_logits.lr, p.output_logits.multiplier};
    out.attention_logit_scale = p.attention_logit_scale;
    out.m_width = p.m_width;
    out.layer_norm_gain_init = p.layer_norm_gain_init;
    return out;
}

scalekit::LRSchedule to_cpp(const sk_lr_schedule& s) {
    return {s.max_lr, s.warmup_tokens, s.total_tokens,
            s.cosine_decay ? scalekit::DecayType::cosine : scalekit::DecayType::linear,
            s.floor_fraction};
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(::operator new(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void require(bool cond, const char* what) {
    if (!cond) scalekit::fail(scalekit::ErrorCode::invalid_argument, what);
}

// Records the CLI's fit/tradeoff commands operate on: family filter plus the
// loss requirement, keeping file order.
std::vector<scalekit::EvalRecord> select_with_loss(const std::vector<scalekit::EvalRecord>& rows,
                                                   const char* family,
                                                   std::size_t* skipped_missing_loss) {
    std::vector<scalekit::EvalRecord> out;
    std::size_t skipped = 0;
    for (const auto& r : rows) {
        if (family != nullptr && r.family != family) continue;
        if (!r.pile_xent) {
            ++skipped;
            continue;
        }
        out.push_back(r);
    }
    if (skipped_missing_loss != nullptr) *skipped_missing_loss = skipped;
    return out;
}

std::vector<scalekit::LossPoint> to_points(const std::vector<scalekit::EvalRecord>& rows) {
    std::vector<scalekit::LossPoint> pts;
    pts.reserve(rows.size());
    for (const auto& r : rows) pts.push_back({r.train_flops, *r.pile_xent});
    return pts;
}

} // namespace

struct sk_records {
    scalekit::RecordFile file;
};

extern "C" {

const char* sk_status_name(sk_status status) {
    switch (status) {
        case SK_OK: return "ok";
        case SK_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case SK_ERR_TOO_FEW_POINTS: return "too_few_points";
        case SK_ERR_DEGENERATE_DATA: return "degenerate_data";
        case SK_ERR_ZERO_TOKENS: return "zero_tokens";
        case SK_ERR_UNSATISFIABLE: return "unsatisfiable";
        case SK_ERR_BUDGET_TOO_SMALL: return "budget_too_small";
        case SK_ERR_OUT_OF_RANGE: return "out_of_range";
        case SK_ERR_ZERO_BATCH: return "zero_batch";
        case SK_ERR_EMPTY_INPUT: return "empty_input";
        case SK_ERR_MISSING_LOSS: return "missing_loss";
        case SK_ERR_SCHEMA_MISMATCH: return "schema_mismatch";
        case SK_ERR_DUPLICATE_LABEL: return "duplicate_label";
        case SK_ERR_MALFORMED_NUMBER: return "malformed_number";
        case SK_ERR_NONFINITE_COORDINATE: return "nonfinite_coordinate";
        case SK_ERR_OVERFLOW: return "overflow";
        case SK_ERR_IO: return "io";
    }
    return "unknown";
}

const char* sk_last_error(void) { return g_last_error.c_str(); }

void sk_string_free(char* s) { ::operator delete(s); }

/* ---- u128 ---- */

sk_u128 sk_u128_from_u64(uint64_t v) { return {0, v}; }

sk_status sk_u128_from_double(double v, sk_u128* out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = to_c(scalekit::WideCount::from_double(v));
    });
}

double sk_u128_to_double(sk_u128 v) { return to_cpp(v).to_double(); }

sk_status sk_u128_add(sk_u128 a, sk_u128 b, sk_u128* out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = to_c(to_cpp(a) + to_cpp(b));
    });
}

sk_status sk_u128_mul_u64(sk_u128 a, uint64_t b, sk_u128* out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = to_c(to_cpp(a) * scalekit::WideCount(b));
    });
}

int sk_u128_cmp(sk_u128 a, sk_u128 b) {
    const auto ca = to_cpp(a);
    const auto cb = to_cpp(b);
    if (ca < cb) return -1;
    if (cb < ca) return 1;
    return 0;
}

sk_status sk_u128_to_string(sk_u128 v, char* buf, size_t buflen) {
    return guarded([&] {
        require(buf != nullptr, "buf is null");
        const std::string s = to_cpp(v).to_string();
        require(buflen > s.size(), "buffer too small");
        std::memcpy(buf, s.c_str(), s.size() + 1);
    });
}

/* ---- accounting ---- */

sk_status sk_shape_validate(const sk_shape* shape) {
    return guarded([&] {
        require(shape != nullptr, "shape is null");
        scalekit::validate_shape(to_cpp(*shape));
    });
}

sk_status sk_count_params(const sk_shape* shape, int64_t* out) {
    return guarded([&] {
        require(shape != nullptr && out != nullptr, "null argument");
        *out = scalekit::count_params(to_cpp(*shape));
    });
}

sk_status sk_flops_per_sequence(const sk_shape* shape, int train_mode, sk_u128* out) {
    return guarded([&] {
        require(shape != nullptr && out != nullptr, "null argument");
        *out = to_c(scalekit::flops_per_sequence(
            to_cpp(*shape),
            train_mode ? scalekit::FlopMode::train : scalekit::FlopMode::inference));
    });
}

sk_status sk_train_flops_total(const sk_shape* shape, int64_t tokens, sk_u128* out) {
    return guarded([&] {
        require(shape != nullptr && out != nullptr, "null argument");
        *out = to_c(scalekit::train_flops_total(to_cpp(*shape), tokens));
    });
}

sk_status sk_inference_flops_per_token(const sk_shape* shape, sk_u128* out) {
    return guarded([&] {
        require(shape != nullptr && out != nullptr, "null argument");
        *out = to_c(scalekit::inference_flops_per_token(to_cpp(*shape)));
    });
}

sk_status sk_chinchilla_tokens(int64_t params, double ratio, int64_t* out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = scalekit::chinchilla_tokens(params, ratio);
    });
}

/* ---- scaling ---- */

sk_power_law sk_pile_frontier_fit(void) {
    return {scalekit::kPileFrontierFit.a, scalekit::kPileFrontierFit.b,
            scalekit::kPileFrontierFit.c};
}

sk_status sk_fit_power_law(const double* flops, const double* loss, size_t count,
                           sk_power_law* out) {
    return guarded([&] {
        require(flops != nullptr && loss != nullptr && out != nullptr, "null argument");
        std::vector<scalekit::LossPoint> pts(count);
        for (size_t i = 0; i < count; ++i) pts[i] = {flops[i], loss[i]};
        const auto fit = scalekit::fit_power_law(std::move(pts));
        *out = {fit.a, fit.b, fit.c};
    });
}

sk_status sk_predict_loss(const sk_power_law* fit, double flops, double* out) {
    return guarded([&] {
        require(fit != nullptr && out != nullptr, "null argument");
        *out = scalekit::predict_loss(to_cpp(*fit), flops);
    });
}

sk_status sk_loss_degradation(double tau, double* out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = scalekit::loss_degradation(tau);
    });
}

sk_status sk_relative_gap(const sk_power_law* fit, double flops, double loss, double* out) {
    return guarded([&] {
        require(fit != nullptr && out != nullptr, "null argument");
        *out = scalekit::relative_gap(to_cpp(*fit), {flops, loss});
    });
}

sk_status sk_correct_vocab_xent(double xent, int64_t tokens_source_vocab,
                                int64_t tokens_reference_vocab, double* out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = scalekit::correct_vocab_xent(xent, tokens_source_vocab, tokens_reference_vocab);
    });
}

/* ---- records ---- */

sk_status sk_records_parse(const char* text, sk_records** out) {
    return guarded([&] {
        require(text != nullptr && out != nullptr, "null argument");
        auto handle = std::make_unique<sk_records>();
        handle->file = scalekit::parse_records(text);
        *out = handle.release();
    });
}

sk_status sk_records_parse_file(const char* path, sk_records** out) {
    return guarded([&] {
        require(path != nullptr && out != nullptr, "null argument");
        auto handle = std::make_unique<sk_records>();
        handle->file = scalekit::parse_records_file(path);
        *out = handle.release();
    });
}

void sk_records_free(sk_records* records) { delete records; }

size_t sk_records_count(const sk_records* records) {
    return records == nullptr ? 0 : records->file.rows.size();
}

sk_status sk_records_get(const sk_records* records, size_t index, sk_record_view* out) {
    return guarded([&] {
        require(records != nullptr && out != nullptr, "null argument");
        require(index < records->file.rows.size(), "index out of range");
        const auto& r = records->file.rows[index];
        out->family = r.family.c_str();
        out->label = r.label.c_str();
        out->variant = r.variant.c_str();
        out->params = r.params;
        out->train_flops = r.train_flops;
        out->has_pile_xent = r.pile_xent.has_value();
        out->pile_xent = r.pile_xent.value_or(0.0);
        out->has_tokens = r.tokens.has_value();
        out->tokens = r.tokens.value_or(0);
        out->has_shape = r.shape.has_value();
        out->shape = r.shape ? to_c(*r.shape) : sk_shape{0, 0, 0, 0, 0, 0};
        for (size_t i = 0; i < scalekit::kDownstreamColumns.size(); ++i) {
            auto it = r.downstream.find(scalekit::kDownstreamColumns[i]);
            out->downstream[i] = it == r.downstream.end() ? -1.0 : it->second;
        }
    });
}

sk_status sk_records_merge(sk_records* dst, const sk_records* src) {
    return guarded([&] {
        require(dst != nullptr && src != nullptr, "null argument");
        scalekit::RecordFile merged = dst->file;
        for (const auto& r : src->file.rows) merged.rows.push_back(r);
        // re-parse through the emitter to re-check uniqueness invariants
        dst->file = scalekit::parse_records(scalekit::emit_records(merged));
    });
}

sk_status sk_records_emit(const sk_records* records, char** out) {
    return guarded([&] {
        require(records != nullptr && out != nullptr, "null argument");
        *out = dup_string(scalekit::emit_records(records->file));
    });
}

/* ---- planner ---- */

sk_status sk_suggest_shape(int64_t target_params, sk_shape* out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = to_c(scalekit::suggest_shape(target_params));
    });
}

sk_status sk_plan_from_budget(sk_u128 flop_budget, sk_training_plan* out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        const auto plan = scalekit::plan_from_budget(to_cpp(flop_budget));
        out->shape = to_c(plan.shape);
        out->params = plan.params;
        out->tokens = plan.tokens;
        out->train_flops = to_c(plan.train_flops);
        out->batch_size_tokens = plan.batch_size_tokens;
        out->base_lr = plan.base_lr;
        out->cosine_decay = plan.cosine_decay ? 1 : 0;
        out->batch_ramp_initial_tokens = plan.batch_ramp_initial_tokens;
        out->batch_ramp_boundary_tokens = plan.batch_ramp_boundary_tokens;
    });
}

sk_status sk_total_cost(const sk_cost_query* query, sk_u128* out) {
    return guarded([&] {
        require(query != nullptr && out != nullptr, "null argument");
        *out = to_c(scalekit::total_cost({to_cpp(query->train_flops),
                                          to_cpp(query->per_token_infer_flops),
                                          query->n_infer_tokens}));
    });
}

sk_status sk_record_cost_query(const sk_records* records, size_t index,
                               int64_t n_infer_tokens, sk_cost_query* out) {
    return guarded([&] {
        require(records != nullptr && out != nullptr, "null argument");
        require(index < records->file.rows.size(), "index out of range");
        const auto q =
            scalekit::record_cost_query(records->file.rows[index], n_infer_tokens);
        out->train_flops = to_c(q.train_flops);
        out->per_token_infer_flops = to_c(q.per_token_infer_flops);
        out->n_infer_tokens = q.n_infer_tokens;
    });
}

sk_status sk_crossover_tokens(const sk_cost_query* plan_small, const sk_cost_query* plan_large,
                              int* has_crossover, sk_u128* out) {
    return guarded([&] {
        require(plan_small != nullptr && plan_large != nullptr && has_crossover != nullptr &&
                    out != nullptr,
                "null argument");
        const auto result = scalekit::crossover_inference_tokens(
            {to_cpp(plan_small->train_flops), to_cpp(plan_small->per_token_infer_flops),
             plan_small->n_infer_tokens},
            {to_cpp(plan_large->train_flops), to_cpp(plan_large->per_token_infer_flops),
             plan_large->n_infer_tokens});
        *has_crossover = result.has_value() ? 1 : 0;
        *out = result ? to_c(*result) : sk_u128{0, 0};
    });
}

sk_status sk_pareto_frontier(const sk_records* records, int64_t n_infer_tokens,
                             size_t* out_indices, size_t* out_count) {
    return guarded([&] {
        require(records != nullptr && out_indices != nullptr && out_count != nullptr,
                "null argument");
        const auto frontier = scalekit::pareto_frontier(records->file.rows, n_infer_tokens);
        for (size_t i = 0; i < frontier.size(); ++i) out_indices[i] = frontier[i];
        *out_count = frontier.size();
    });
}

/* ---- parameterization ---- */

sk_mup_base sk_mup_base_default(void) { return {256, 6e-3, 0.08, 10.0}; }

sk_status sk_sp_plan(const sk_shape* shape, double lr, sk_layer_plan* out) {
    return guarded([&] {
        require(shape != nullptr && out != nullptr, "null argument");
        *out = to_c(scalekit::sp_plan(to_cpp(*shape), lr));
    });
}

sk_status sk_mup_plan(const sk_shape* shape, const sk_mup_base* base, sk_layer_plan* out) {
    return guarded([&] {
        require(shape != nullptr && base != nullptr && out != nullptr, "null argument");
        *out = to_c(scalekit::mup_plan(to_cpp(*shape), to_cpp(*base)));
    });
}

sk_status sk_layer_plan_format(const sk_layer_plan* plan, const sk_shape* shape, char** out) {
    return guarded([&] {
        require(plan != nullptr && shape != nullptr && out != nullptr, "null argument");
        *out = dup_string(scalekit::format_layer_plan(to_cpp(*plan), to_cpp(*shape)));
    });
}

sk_status sk_lr_at(const sk_lr_schedule* schedule, int64_t tokens_seen, double* out) {
    return guarded([&] {
        require(schedule != nullptr && out != nullptr, "null argument");
        *out = scalekit::lr_at(to_cpp(*schedule), tokens_seen);
    });
}

sk_status sk_scale_lr_for_batch(double lr, int64_t batch_ref, int64_t batch_new, double* out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = scalekit::scale_lr_for_batch(lr, batch_ref, batch_new);
    });
}

sk_status sk_activation_probe(int parameterization, const sk_mup_base* base,
                              const int64_t* widths, size_t width_count, int64_t samples,
                              uint64_t seed, double* out_rms) {
    return guarded([&] {
        require(base != nullptr && widths != nullptr && out_rms != nullptr, "null argument");
        const auto rows = scalekit::activation_scale_probe(
            parameterization ? scalekit::Parameterization::mup : scalekit::Parameterization::sp,
            to_cpp(*base), std::vector<int64_t>(widths, widths + width_count), samples, seed);
        for (size_t i = 0; i < rows.size(); ++i) out_rms[i] = rows[i].rms;
    });
}

/* ---- stability ---- */

sk_float_format sk_format_fp16(void) {
    const auto& f = scalekit::format_fp16();
    return {f.name, f.exponent_bits, f.mantissa_bits, f.min_subnormal, f.max_finite};
}

sk_float_format sk_format_bf16(void) {
    const auto& f = scalekit::format_bf16();
    return {f.name, f.exponent_bits, f.mantissa_bits, f.min_subnormal, f.max_finite};
}

sk_float_format sk_format_fp32(void) {
    const auto& f = scalekit::format_fp32();
    return {f.name, f.exponent_bits, f.mantissa_bits, f.min_subnormal, f.max_finite};
}

sk_status sk_cast_to_format(double value, const sk_float_format* format, int ftz,
                            double* out) {
    return guarded([&] {
        require(format != nullptr && out != nullptr, "null argument");
        *out = scalekit::cast_to_format(value, to_cpp(*format), ftz != 0);
    });
}

sk_status sk_cast_fraction_zeroed(const double* values, size_t count,
                                  const sk_float_format* format, int ftz, double* out) {
    return guarded([&] {
        require(values != nullptr && format != nullptr && out != nullptr, "null argument");
        *out = scalekit::cast_fraction_zeroed({values, count}, to_cpp(*format), ftz != 0);
    });
}

sk_loss_scale_state sk_loss_scale_default(void) { return {32768.0, 0, 2000, 2.0, 0.5}; }

sk_status sk_loss_scale_step(const sk_loss_scale_state* state, int overflow_observed,
                             sk_loss_scale_state* out) {
    return guarded([&] {
        require(state != nullptr && out != nullptr, "null argument");
        const scalekit::LossScaleState s{state->scale, state->steps_since_overflow,
                                         state->growth_interval, state->growth_factor,
                                         state->backoff_factor};
        const auto n = scalekit::loss_scale_step(s, overflow_observed != 0);
        *out = {n.scale, n.steps_since_overflow, n.growth_interval, n.growth_factor,
                n.backoff_factor};
    });
}

sk_status sk_adam_epsilon_ok(double velocity_mean, double epsilon, int* ok, double* threshold) {
    return guarded([&] {
        require(ok != nullptr && threshold != nullptr, "null argument");
        const auto check = scalekit::adam_epsilon_ok(velocity_mean, epsilon);
        *ok = check.ok ? 1 : 0;
        *threshold = check.threshold;
    });
}

/* ---- reports and plots ---- */

sk_status sk_report_params(const sk_shape* shape, char** out) {
    return guarded([&] {
        require(shape != nullptr && out != nullptr, "null argument");
        *out = dup_string(scalekit::report_params(to_cpp(*shape)));
    });
}

sk_status sk_report_flops(const sk_shape* shape, int64_t tokens, int inference_mode,
                          char** out) {
    return guarded([&] {
        require(shape != nullptr && out != nullptr, "null argument");
        *out = dup_string(scalekit::report_flops(to_cpp(*shape), tokens, inference_mode != 0));
    });
}

sk_status sk_fit_records(const sk_records* records, const char* family, sk_power_law* out) {
    return guarded([&] {
        require(records != nullptr && out != nullptr, "null argument");
        const auto rows = select_with_loss(records->file.rows, family, nullptr);
        const auto fit = scalekit::fit_power_law(to_points(rows));
        *out = {fit.a, fit.b, fit.c};
    });
}

sk_status sk_report_fit(const sk_records* records, const char* family, char** out) {
    return guarded([&] {
        require(records != nullptr && out != nullptr, "null argument");
        const auto rows = select_with_loss(records->file.rows, family, nullptr);
        const auto fit = scalekit::fit_power_law(to_points(rows));
        *out = dup_string(scalekit::report_fit(rows, fit));
    });
}

sk_status sk_report_predict(const sk_power_law* fit, double flops, char** out) {
    return guarded([&] {
        require(fit != nullptr && out != nullptr, "null argument");
        *out = dup_string(scalekit::report_predict(to_cpp(*fit), flops));
    });
}

sk_status sk_report_degrade(double tau, char** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = dup_string(scalekit::report_degrade(tau));
    });
}

sk_status sk_report_plan(const sk_training_plan* plan, char** out) {
    return guarded([&] {
        require(plan != nullptr && out != nullptr, "null argument");
        scalekit::TrainingPlan p;
        p.shape = to_cpp(plan->shape);
        p.params = plan->params;
        p.tokens = plan->tokens;
        p.train_flops = to_cpp(plan->train_flops);
        p.batch_size_tokens = plan->batch_size_tokens;
        p.base_lr = plan->base_lr;
        p.cosine_decay = plan->cosine_decay != 0;
        p.batch_ramp_initial_tokens = plan->batch_ramp_initial_tokens;
        p.batch_ramp_boundary_tokens = plan->batch_ramp_boundary_tokens;
        *out = dup_string(scalekit::report_plan(p));
    });
}

sk_status sk_report_frontier(const sk_records* records, int64_t n_infer_tokens, char** out) {
    return guarded([&] {
        require(records != nullptr && out != nullptr, "null argument");
        std::size_t skipped = 0;
        const auto rows = select_with_loss(records->file.rows, nullptr, &skipped);
        const auto frontier = scalekit::pareto_frontier(rows, n_infer_tokens);
        *out = dup_string(scalekit::report_frontier(rows, frontier, n_infer_tokens, skipped));
    });
}

sk_status sk_report_probe(int parameterization, const sk_mup_base* base, const int64_t* widths,
                          size_t width_count, int64_t samples, uint64_t seed, char** out) {
    return guarded([&] {
        require(base != nullptr && widths != nullptr && out != nullptr, "null argument");
        const auto rows = scalekit::activation_scale_probe(
            parameterization ? scalekit::Parameterization::mup : scalekit::Parameterization::sp,
            to_cpp(*base), std::vector<int64_t>(widths, widths + width_count), samples, seed);
        *out = dup_string(scalekit::report_probe(rows));
    });
}

sk_status sk_report_schedule(const sk_lr_schedule* schedule, int64_t tokens_seen, char** out) {
    return guarded([&] {
        require(schedule != nullptr && out != nullptr, "null argument");
        const auto s = to_cpp(*schedule);
        const double lr = scalekit::lr_at(s, tokens_seen);
        *out = dup_string(scalekit::report_schedule(s, tokens_seen, lr));
    });
}

sk_status sk_report_cast(const sk_float_format* format, const double* values, size_t count,
                         int ftz, char** out) {
    return guarded([&] {
        require(format != nullptr && values != nullptr && out != nullptr, "null argument");
        const auto f = to_cpp(*format);
        const double fraction = scalekit::cast_fraction_zeroed({values, count}, f, ftz != 0);
        std::size_t nonzero = 0, zeroed = 0;
        for (size_t i = 0; i < count; ++i) {
            if (values[i] == 0.0) continue;
            ++nonzero;
            if (scalekit::cast_to_format(values[i], f, ftz != 0) == 0.0) ++zeroed;
        }
        *out = dup_string(scalekit::report_cast(f, count, nonzero, zeroed, fraction));
    });
}

sk_status sk_report_adam(double velocity_mean, double epsilon, char** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        const auto check = scalekit::adam_epsilon_ok(velocity_mean, epsilon);
        *out = dup_string(
            scalekit::report_adam(velocity_mean, epsilon, check.threshold, check.ok));
    });
}

sk_status sk_svg_render(const sk_plot_series* series, size_t series_count, const char* x_label,
                        const char* y_label, char** out) {
    return guarded([&] {
        require(series != nullptr && out != nullptr, "null argument");
        std::vector<scalekit::PlotSeries> s(series_count);
        for (size_t i = 0; i < series_count; ++i) {
            const auto& in = series[i];
            require(in.xs != nullptr && in.ys != nullptr, "series has null coordinates");
            s[i].name = in.name != nullptr ? in.name : "";
            s[i].xs.assign(in.xs, in.xs + in.count);
            s[i].ys.assign(in.ys, in.ys + in.count);
            s[i].line = in.line != 0;
            s[i].log_x = in.log_x != 0;
            s[i].log_y = in.log_y != 0;
        }
        *out = dup_string(scalekit::render_svg(s, x_label != nullptr ? x_label : "",
                                               y_label != nullptr ? y_label : ""));
    });
}

sk_status sk_svg_fit_plot(const sk_records* records, const char* family,
                          const sk_power_law* fit, char** out) {
    return guarded([&] {
        require(records != nullptr && fit != nullptr && out != nullptr, "null argument");
        const auto rows = select_with_loss(records->file.rows, family, nullptr);
        require(!rows.empty(), "no records with a loss to plot");
        scalekit::PlotSeries scatter;
        scatter.name = family != nullptr ? family : "records";
        scatter.log_x = scatter.log_y = true;
        double min_f = rows.front().train_flops, max_f = min_f;
        for (const auto& r : rows) {
            scatter.xs.push_back(r.train_flops);
            scatter.ys.push_back(*r.pile_xent);
            min_f = std::min(min_f, r.train_flops);
            max_f = std::max(max_f, r.train_flops);
        }
        scalekit::PlotSeries curve;
        curve.name = "fit";
        curve.line = true;
        curve.log_x = curve.log_y = true;
        const auto f = to_cpp(*fit);
        for (int i = 0; i <= 64; ++i) {
            const double t = static_cast<double>(i) / 64.0;
            const double x = min_f * std::pow(max_f / min_f, t);
            curve.xs.push_back(x);
            curve.ys.push_back(scalekit::predict_loss(f, x));
        }
        *out = dup_string(scalekit::render_svg({scatter, curve}, "pre-training FLOPs",
                                               "Pile test loss (nats/token)"));
    });
}

sk_status sk_svg_tradeoff_plot(const sk_records* records, int64_t n_infer_tokens, char** out) {
    return guarded([&] {
        require(records != nullptr && out != nullptr, "null argument");
        std::size_t skipped = 0;
        const auto rows = select_with_loss(records->file.rows, nullptr, &skipped);
        require(!rows.empty(), "no records with a loss to plot");
        const auto frontier = scalekit::pareto_frontier(rows, n_infer_tokens);

        // one scatter series per family, in first-appearance order
        std::vector<scalekit::PlotSeries> series;
        for (const auto& r : rows) {
            const double total =
                scalekit::total_cost(scalekit::record_cost_query(r, n_infer_tokens))
                    .to_double();
            scalekit::PlotSeries* s = nullptr;
            for (auto& existing : series)
                if (existing.name == r.family) s = &existing;
            if (s == nullptr) {
                series.push_back({r.family, {}, {}, false, true, true});
                s = &series.back();
            }
            s->xs.push_back(total);
            s->ys.push_back(*r.pile_xent);
        }
        scalekit::PlotSeries line{"frontier", {}, {}, true, true, true};
        for (std::size_t idx : frontier) {
            line.xs.push_back(
                scalekit::total_cost(scalekit::record_cost_query(rows[idx], n_infer_tokens))
                    .to_double());
            line.ys.push_back(*rows[idx].pile_xent);
        }
        series.push_back(line);
        *out = dup_string(scalekit::render_svg(series, "pre-training + inference FLOPs",
                                               "Pile test loss (nats/token)"));
    });
}

} /* extern "C" */

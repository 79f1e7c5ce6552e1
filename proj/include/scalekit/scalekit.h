/*
 * scalekit: compute-optimal transformer scaling toolkit.
 *
 * C API for the shared library. All functions return sk_status; outputs go
 * through pointers. Strings returned via char** are heap-allocated and must
 * be released with sk_string_free. sk_records is an opaque handle owned by
 * the caller through sk_records_free. On any error, sk_last_error() returns
 * a thread-local description of what went wrong.
 */
#ifndef SCALEKIT_SCALEKIT_H_
#define SCALEKIT_SCALEKIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SK_API __declspec(dllexport)
#else
#define SK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sk_status {
    SK_OK = 0,
    SK_ERR_INVALID_ARGUMENT = 1,
    SK_ERR_TOO_FEW_POINTS = 2,
    SK_ERR_DEGENERATE_DATA = 3,
    SK_ERR_ZERO_TOKENS = 4,
    SK_ERR_UNSATISFIABLE = 5,
    SK_ERR_BUDGET_TOO_SMALL = 6,
    SK_ERR_OUT_OF_RANGE = 7,
    SK_ERR_ZERO_BATCH = 8,
    SK_ERR_EMPTY_INPUT = 9,
    SK_ERR_MISSING_LOSS = 10,
    SK_ERR_SCHEMA_MISMATCH = 11,
    SK_ERR_DUPLICATE_LABEL = 12,
    SK_ERR_MALFORMED_NUMBER = 13,
    SK_ERR_NONFINITE_COORDINATE = 14,
    SK_ERR_OVERFLOW = 15,
    SK_ERR_IO = 16,
} sk_status;

SK_API const char* sk_status_name(sk_status status);

/* Thread-local message describing the most recent failure. */
SK_API const char* sk_last_error(void);

SK_API void sk_string_free(char* s);

/* ---- exact 128-bit FLOP counts ------------------------------------- */

typedef struct sk_u128 {
    uint64_t hi;
    uint64_t lo;
} sk_u128;

SK_API sk_u128 sk_u128_from_u64(uint64_t v);
/* Exact conversion of a non-negative whole-number double (e.g. 2.3e22). */
SK_API sk_status sk_u128_from_double(double v, sk_u128* out);
SK_API double sk_u128_to_double(sk_u128 v);
SK_API sk_status sk_u128_add(sk_u128 a, sk_u128 b, sk_u128* out);
SK_API sk_status sk_u128_mul_u64(sk_u128 a, uint64_t b, sk_u128* out);
/* negative / zero / positive as a < b, a == b, a > b */
SK_API int sk_u128_cmp(sk_u128 a, sk_u128 b);
SK_API sk_status sk_u128_to_string(sk_u128 v, char* buf, size_t buflen);

/* ---- parameter and FLOP accounting ---------------------------------- */

typedef struct sk_shape {
    int64_t d_model;
    int64_t n_layers;
    int64_t d_head;
    int64_t d_ffn;
    int64_t vocab_size; /* 50257 for the bundled models */
    int64_t seq_len;    /* 2048 for the bundled models */
} sk_shape;

SK_API sk_status sk_shape_validate(const sk_shape* shape);
SK_API sk_status sk_count_params(const sk_shape* shape, int64_t* out);
SK_API sk_status sk_flops_per_sequence(const sk_shape* shape, int train_mode, sk_u128* out);
SK_API sk_status sk_train_flops_total(const sk_shape* shape, int64_t tokens, sk_u128* out);
SK_API sk_status sk_inference_flops_per_token(const sk_shape* shape, sk_u128* out);
SK_API sk_status sk_chinchilla_tokens(int64_t params, double ratio, int64_t* out);

/* ---- scaling laws ---------------------------------------------------- */

typedef struct sk_power_law {
    double a; /* FLOPs scale */
    double b; /* exponent */
    double c; /* irreducible loss, nats/token */
} sk_power_law;

/* The published compute-optimal Pile frontier coefficients. */
SK_API sk_power_law sk_pile_frontier_fit(void);

SK_API sk_status sk_fit_power_law(const double* flops, const double* loss, size_t count,
                                  sk_power_law* out);
SK_API sk_status sk_predict_loss(const sk_power_law* fit, double flops, double* out);
SK_API sk_status sk_loss_degradation(double tokens_per_parameter, double* out);
/* Signed percent above (+) or below (-) the fitted curve. */
SK_API sk_status sk_relative_gap(const sk_power_law* fit, double flops, double loss,
                                 double* out);
SK_API sk_status sk_correct_vocab_xent(double xent, int64_t tokens_source_vocab,
                                       int64_t tokens_reference_vocab, double* out);

/* ---- evaluation records ---------------------------------------------- */

typedef struct sk_records sk_records;

typedef struct sk_record_view {
    const char* family; /* owned by the sk_records handle */
    const char* label;
    const char* variant;
    int64_t params;
    double train_flops;
    int has_pile_xent;
    double pile_xent;
    int has_tokens;
    int64_t tokens;
    int has_shape;
    sk_shape shape;
    /* hellaswag, piqa, winogrande, lambada, arc_easy, arc_challenge,
       openbookqa, downstream_avg; entries < 0 are missing */
    double downstream[8];
} sk_record_view;

SK_API sk_status sk_records_parse(const char* text, sk_records** out);
SK_API sk_status sk_records_parse_file(const char* path, sk_records** out);
SK_API void sk_records_free(sk_records* records);
SK_API size_t sk_records_count(const sk_records* records);
SK_API sk_status sk_records_get(const sk_records* records, size_t index,
                                sk_record_view* out);
/* Appends a copy of every row in src; (family, label) pairs must stay unique. */
SK_API sk_status sk_records_merge(sk_records* dst, const sk_records* src);
SK_API sk_status sk_records_emit(const sk_records* records, char** out);

/* ---- planning and cost tradeoffs -------------------------------------- */

typedef struct sk_training_plan {
    sk_shape shape;
    int64_t params;
    int64_t tokens;
    sk_u128 train_flops;
    int64_t batch_size_tokens;
    double base_lr;
    int cosine_decay;
    int64_t batch_ramp_initial_tokens;  /* 0 when the recipe has no ramp */
    int64_t batch_ramp_boundary_tokens; /* 0 when the recipe has no ramp */
} sk_training_plan;

SK_API sk_status sk_suggest_shape(int64_t target_params, sk_shape* out);
SK_API sk_status sk_plan_from_budget(sk_u128 flop_budget, sk_training_plan* out);

typedef struct sk_cost_query {
    sk_u128 train_flops;
    sk_u128 per_token_infer_flops;
    int64_t n_infer_tokens;
} sk_cost_query;

SK_API sk_status sk_total_cost(const sk_cost_query* query, sk_u128* out);
/* Builds a cost query for one record: exact per-token FLOPs when the record
   carries a shape, 2*params per token otherwise. */
SK_API sk_status sk_record_cost_query(const sk_records* records, size_t index,
                                      int64_t n_infer_tokens, sk_cost_query* out);
/* Smallest n with total(small, n) >= total(large, n). *has_crossover is 0
   when the small plan stays cheaper at every n. */
SK_API sk_status sk_crossover_tokens(const sk_cost_query* plan_small,
                                     const sk_cost_query* plan_large, int* has_crossover,
                                     sk_u128* out);
/* Writes the indices of the non-dominated records, ascending by total cost.
   out_indices must hold sk_records_count entries. */
SK_API sk_status sk_pareto_frontier(const sk_records* records, int64_t n_infer_tokens,
                                    size_t* out_indices, size_t* out_count);

/* ---- SP / muP layer-wise hyperparameters ------------------------------ */

typedef struct sk_mup_base {
    int64_t d_model_base; /* 256 */
    double eta_base;      /* 6e-3 */
    double sigma_base;    /* 0.08 */
    double m_emb;         /* 10.0 */
} sk_mup_base;

SK_API sk_mup_base sk_mup_base_default(void);

typedef struct sk_layer_rule {
    double init_std; /* nominal sigma of the +/-2-sigma truncated normal */
    double lr;
    double multiplier;
} sk_layer_rule;

typedef struct sk_layer_plan {
    int is_mup;
    sk_layer_rule embedding;
    sk_layer_rule layer_norm;
    sk_layer_rule bias;
    sk_layer_rule qkv;
    sk_layer_rule attn_output;
    sk_layer_rule ffn1;
    sk_layer_rule ffn2;
    sk_layer_rule output_logits;
    double attention_logit_scale;
    double m_width;
    double layer_norm_gain_init;
} sk_layer_plan;

SK_API sk_status sk_sp_plan(const sk_shape* shape, double lr, sk_layer_plan* out);
SK_API sk_status sk_mup_plan(const sk_shape* shape, const sk_mup_base* base,
                             sk_layer_plan* out);
/* Key-value text form consumed by external training code. */
SK_API sk_status sk_layer_plan_format(const sk_layer_plan* plan, const sk_shape* shape,
                                      char** out);

typedef struct sk_lr_schedule {
    double max_lr;
    int64_t warmup_tokens;
    int64_t total_tokens;
    int cosine_decay;
    double floor_fraction; /* 0.1: decay ends at 10% of max */
} sk_lr_schedule;

SK_API sk_status sk_lr_at(const sk_lr_schedule* schedule, int64_t tokens_seen, double* out);
SK_API sk_status sk_scale_lr_for_batch(double lr, int64_t batch_ref, int64_t batch_new,
                                       double* out);

/* Output RMS of a freshly initialized hidden layer at each width; parameterization
   is 0 for SP, 1 for muP. out_rms must hold width_count entries. */
SK_API sk_status sk_activation_probe(int parameterization, const sk_mup_base* base,
                                     const int64_t* widths, size_t width_count,
                                     int64_t samples, uint64_t seed, double* out_rms);

/* ---- numerical stability ---------------------------------------------- */

typedef struct sk_float_format {
    const char* name;
    int exponent_bits;
    int mantissa_bits;
    double min_subnormal;
    double max_finite;
} sk_float_format;

SK_API sk_float_format sk_format_fp16(void);
SK_API sk_float_format sk_format_bf16(void);
SK_API sk_float_format sk_format_fp32(void);

/* Round-to-nearest-even cast into the format; ftz flushes subnormals. */
SK_API sk_status sk_cast_to_format(double value, const sk_float_format* format, int ftz,
                                   double* out);
/* Fraction of nonzero inputs that cast to exactly zero. */
SK_API sk_status sk_cast_fraction_zeroed(const double* values, size_t count,
                                         const sk_float_format* format, int ftz,
                                         double* out);

typedef struct sk_loss_scale_state {
    double scale; /* power of two */
    int64_t steps_since_overflow;
    int64_t growth_interval;
    double growth_factor;
    double backoff_factor;
} sk_loss_scale_state;

SK_API sk_loss_scale_state sk_loss_scale_default(void);
SK_API sk_status sk_loss_scale_step(const sk_loss_scale_state* state, int overflow_observed,
                                    sk_loss_scale_state* out);

/* ok = epsilon < sqrt(velocity_mean)/1000 */
SK_API sk_status sk_adam_epsilon_ok(double velocity_mean, double epsilon, int* ok,
                                    double* threshold);

/* ---- deterministic reports and plots ----------------------------------- */

SK_API sk_status sk_report_params(const sk_shape* shape, char** out);
SK_API sk_status sk_report_flops(const sk_shape* shape, int64_t tokens, int inference_mode,
                                 char** out);
/* Fits the records (optionally one family) and reports coefficients plus
   per-point gaps. family may be NULL for all records with a loss. */
SK_API sk_status sk_fit_records(const sk_records* records, const char* family,
                                sk_power_law* out);
SK_API sk_status sk_report_fit(const sk_records* records, const char* family, char** out);
SK_API sk_status sk_report_predict(const sk_power_law* fit, double flops, char** out);
SK_API sk_status sk_report_degrade(double tau, char** out);
SK_API sk_status sk_report_plan(const sk_training_plan* plan, char** out);
/* Skips records without a loss (reporting how many) and prints the frontier. */
SK_API sk_status sk_report_frontier(const sk_records* records, int64_t n_infer_tokens,
                                    char** out);
SK_API sk_status sk_report_probe(int parameterization, const sk_mup_base* base,
                                 const int64_t* widths, size_t width_count, int64_t samples,
                                 uint64_t seed, char** out);
SK_API sk_status sk_report_schedule(const sk_lr_schedule* schedule, int64_t tokens_seen,
                                    char** out);
SK_API sk_status sk_report_cast(const sk_float_format* format, const double* values,
                                size_t count, int ftz, char** out);
SK_API sk_status sk_report_adam(double velocity_mean, double epsilon, char** out);

typedef struct sk_plot_series {
    const char* name;
    const double* xs;
    const double* ys;
    size_t count;
    int line; /* 0 scatter, 1 line */
    int log_x;
    int log_y;
} sk_plot_series;

/* Self-contained SVG 1.1 document, 800x600, decade gridlines on log axes. */
SK_API sk_status sk_svg_render(const sk_plot_series* series, size_t series_count,
                               const char* x_label, const char* y_label, char** out);
/* Scatter of the records' (train_flops, pile_xent) plus the fitted curve. */
SK_API sk_status sk_svg_fit_plot(const sk_records* records, const char* family,
                                 const sk_power_law* fit, char** out);
/* Scatter of (total cost, pile_xent) per family at the given inference load,
   with the frontier records joined by a line. */
SK_API sk_status sk_svg_tradeoff_plot(const sk_records* records, int64_t n_infer_tokens,
                                      char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* SCALEKIT_SCALEKIT_H_ */

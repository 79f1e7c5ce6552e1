#include "accounting.hpp"

#include <cmath>

#include "error.hpp"

namespace scalekit {

void validate_shape(const ModelShape& s) {
    if (s.d_model <= 0) fail(ErrorCode::invalid_argument, "d_model must be positive");
    if (s.n_layers < 0) fail(ErrorCode::invalid_argument, "n_layers must be non-negative");
    if (s.d_head <= 0) fail(ErrorCode::invalid_argument, "d_head must be positive");
    if (s.d_ffn <= 0) fail(ErrorCode::invalid_argument, "d_ffn must be positive");
    if (s.vocab_size <= 0) fail(ErrorCode::invalid_argument, "vocab_size must be positive");
    if (s.seq_len <= 0) fail(ErrorCode::invalid_argument, "seq_len must be positive");
    if (s.d_model % s.d_head != 0)
        fail(ErrorCode::invalid_argument, "d_model must be divisible by d_head");
}

std::int64_t count_params(const ModelShape& s) {
    validate_shape(s);
    const std::int64_t d = s.d_model;
    const std::int64_t embedding = s.vocab_size * d + d * s.seq_len;
    const std::int64_t ln1 = 2 * d;
    const std::int64_t attn = 4 * (d * d + d);
    const std::int64_t ln2 = 2 * d;
    const std::int64_t ffn = 8 * d * d + 5 * d;
    const std::int64_t encoder = s.n_layers * (ln1 + attn + ln2 + ffn);
    const std::int64_t final_ln = 2 * d;
    return embedding + encoder + final_ln;
}

FlopBreakdown flops_breakdown(const ModelShape& s) {
    validate_shape(s);
    const WideCount d(static_cast<std::uint64_t>(s.d_model));
    const WideCount L(static_cast<std::uint64_t>(s.n_layers));
    const WideCount seq(static_cast<std::uint64_t>(s.seq_len));
    const WideCount vocab(static_cast<std::uint64_t>(s.vocab_size));
    const WideCount heads(static_cast<std::uint64_t>(s.d_model / s.d_head));
    const WideCount kh = WideCount(static_cast<std::uint64_t>(s.d_head)) * heads;

    FlopBreakdown b;
    b.embeddings = WideCount(2) * seq * vocab * d;
    b.position_embeddings = WideCount(2) * d * seq;

    const WideCount kqv_proj = L * WideCount(2) * WideCount(3) * seq * d * kh;
    const WideCount kq_logits = L * WideCount(2) * seq * seq * kh;
    const WideCount softmax = L * WideCount(3) * kh * seq * seq;
    const WideCount softmax_q_red = L * seq * seq * kh;
    const WideCount final_linear = L * WideCount(2) * seq * kh * d;
    // dot product between softmax(QK^T) and V
    const WideCount sm_v_dot = L * WideCount(2) * seq * seq * kh;
    b.attention = kqv_proj + kq_logits + softmax + softmax_q_red + sm_v_dot + final_linear;

    b.dense = L * WideCount(16) * seq * d * d;
    b.final_logits = WideCount(2) * seq * d * vocab;
    // layer norms: 7 FLOPs/activation, 2 per decoder block
    b.layer_norm = L * WideCount(2) * WideCount(7) * seq * d;
    // GeLU: 20 FLOPs/activation on the 4x-wide FFN hidden activations
    b.gelu = L * WideCount(20) * WideCount(4) * seq * d;

    b.forward_total = b.embeddings + b.position_embeddings + b.layer_norm + b.attention +
                      b.dense + b.final_logits + b.gelu;
    return b;
}

WideCount flops_per_sequence(const ModelShape& s, FlopMode mode) {
    const FlopBreakdown b = flops_breakdown(s);
    if (mode == FlopMode::inference) return b.forward_total;
    // backward pass = 2x forward, minus the deltas the embeddings never need
    return b.forward_total * WideCount(3) - b.embeddings - b.position_embeddings;
}

std::int64_t sequences_for_tokens(std::int64_t tokens, std::int64_t seq_len) {
    if (tokens < 0) fail(ErrorCode::invalid_argument, "tokens must be non-negative");
    if (seq_len <= 0) fail(ErrorCode::invalid_argument, "seq_len must be positive");
    return (2 * tokens + seq_len) / (2 * seq_len);
}

WideCount train_flops_total(const ModelShape& s, std::int64_t tokens) {
    const std::int64_t n_seq = sequences_for_tokens(tokens, s.seq_len);
    return flops_per_sequence(s, FlopMode::train) * WideCount(static_cast<std::uint64_t>(n_seq));
}

WideCount inference_flops_per_token(const ModelShape& s) {
    const WideCount per_seq = flops_per_sequence(s, FlopMode::inference);
    // floor division; documented so CLI output is stable
    const std::uint64_t seq = static_cast<std::uint64_t>(s.seq_len);
    unsigned __int128 v =
        (static_cast<unsigned __int128>(per_seq.hi()) << 64) | per_seq.lo();
    v /= seq;
    return WideCount::from_parts(static_cast<std::uint64_t>(v >> 64),
                                 static_cast<std::uint64_t>(v));
}

std::int64_t chinchilla_tokens(std::int64_t params, double ratio) {
    if (params <= 0) fail(ErrorCode::invalid_argument, "params must be positive");
    if (!(ratio > 0.0)) fail(ErrorCode::invalid_argument, "ratio must be positive");
    return static_cast<std::int64_t>(std::llround(ratio * static_cast<double>(params)));
}

} // namespace scalekit

#ifndef SCALEKIT_ACCOUNTING_HPP_
#define SCALEKIT_ACCOUNTING_HPP_

#include <cstdint>

#include "wide_count.hpp"

namespace scalekit {

// Decoder-only transformer dimensions. d_model must be divisible by d_head.
struct ModelShape {
    std::int64_t d_model = 0;
    std::int64_t n_layers = 0;
    std::int64_t d_head = 0;
    std::int64_t d_ffn = 0;
    std::int64_t vocab_size = 50257;
    std::int64_t seq_len = 2048;
};

void validate_shape(const ModelShape& shape);

enum class FlopMode { train, inference };

std::int64_t count_params(const ModelShape& shape);

WideCount flops_per_sequence(const ModelShape& shape, FlopMode mode);

// Per-sequence forward-pass cost split out so callers can check the
// train/inference relationship term by term.
struct FlopBreakdown {
    WideCount embeddings;
    WideCount position_embeddings;
    WideCount attention;
    WideCount dense;
    WideCount final_logits;
    WideCount layer_norm;
    WideCount gelu;
    WideCount forward_total;
};

FlopBreakdown flops_breakdown(const ModelShape& shape);

// tokens/seq_len rounded half-up to whole sequences.
std::int64_t sequences_for_tokens(std::int64_t tokens, std::int64_t seq_len);

WideCount train_flops_total(const ModelShape& shape, std::int64_t tokens);

WideCount inference_flops_per_token(const ModelShape& shape);

std::int64_t chinchilla_tokens(std::int64_t params, double ratio = 20.0);

} // namespace scalekit

#endif

#ifndef SCALEKIT_PLANNER_HPP_
#define SCALEKIT_PLANNER_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "accounting.hpp"
#include "records.hpp"

namespace scalekit {

struct TrainingPlan {
    ModelShape shape;
    std::int64_t params = 0;
    std::int64_t tokens = 0;
    WideCount train_flops;
    std::int64_t batch_size_tokens = 0;
    double base_lr = 0.0;
    bool cosine_decay = false;
    // Two-phase batch ramp lifted from the recipe row, when it has one.
    std::int64_t batch_ramp_initial_tokens = 0;
    std::int64_t batch_ramp_boundary_tokens = 0;
};

struct GridShape {
    ModelShape shape;
    std::int64_t params = 0;
    double aspect = 0.0; // d_model / n_layers
};

// Search space: d_model in multiples of 64 over [256, 16384]; n_layers within
// +/-25% of round(d_model/80); the largest of {128, 80, 64} dividing d_model
// as the head size; d_ffn = 4*d_model; GPT-2 vocabulary and 2048 context.
const std::vector<GridShape>& shape_grid();

ModelShape suggest_shape(std::int64_t target_params);

TrainingPlan plan_from_budget(const WideCount& flop_budget);

struct CostQuery {
    WideCount train_flops;
    WideCount per_token_infer_flops;
    std::int64_t n_infer_tokens = 0;
};

WideCount total_cost(const CostQuery& query);

// Serving-lifetime cost for a record: exact per-token FLOPs when the shape is
// known, 2*params per token otherwise.
WideCount record_infer_flops_per_token(const EvalRecord& record);

CostQuery record_cost_query(const EvalRecord& record, std::int64_t n_infer_tokens);

// Smallest n with total(small, n) >= total(large, n); nullopt when the small
// plan stays cheaper forever.
std::optional<WideCount> crossover_inference_tokens(const CostQuery& plan_small,
                                                    const CostQuery& plan_large);

// Indices of the non-dominated records in (total cost, pile_xent), ordered by
// ascending total cost. Ties on both axes keep the first record in
// (family, label) order.
std::vector<std::size_t> pareto_frontier(const std::vector<EvalRecord>& records,
                                         std::int64_t n_infer_tokens);

} // namespace scalekit

#endif

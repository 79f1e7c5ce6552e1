#include "planner.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace scalekit {
namespace {

std::int64_t largest_dividing_head(std::int64_t d_model) {
    for (std::int64_t h : {128, 80, 64})
        if (d_model % h == 0) return h;
    return 0;
}

const RecipeRow& nearest_recipe(std::int64_t params) {
    const auto& rows = bundled_recipes();
    const RecipeRow* best = &rows.front();
    double best_dist = 1e300;
    for (const auto& row : rows) {
        const double dist = std::fabs(std::log(static_cast<double>(params)) -
                                      std::log(static_cast<double>(count_params(row.shape))));
        if (dist < best_dist) {
            best_dist = dist;
            best = &row;
        }
    }
    return *best;
}

} // namespace

const std::vector<GridShape>& shape_grid() {
    static const std::vector<GridShape> grid = [] {
        std::vector<GridShape> out;
        for (std::int64_t d = 256; d <= 16384; d += 64) {
            const std::int64_t head = largest_dividing_head(d);
            if (head == 0) continue;
            const std::int64_t n0 =
                std::max<std::int64_t>(1, std::llround(static_cast<double>(d) / 80.0));
            const std::int64_t lo = std::max<std::int64_t>(
                1, static_cast<std::int64_t>(std::ceil(0.75 * static_cast<double>(n0))));
            const std::int64_t hi =
                static_cast<std::int64_t>(std::floor(1.25 * static_cast<double>(n0)));
            for (std::int64_t n = lo; n <= hi; ++n) {
                ModelShape s{d, n, head, 4 * d, 50257, 2048};
                out.push_back({s, count_params(s),
                               static_cast<double>(d) / static_cast<double>(n)});
            }
        }
        return out;
    }();
    return grid;
}

ModelShape suggest_shape(std::int64_t target_params) {
    if (target_params < 1'000'000)
        fail(ErrorCode::invalid_argument, "target_params must be at least 1e6");
    const GridShape* best = nullptr;
    for (const auto& g : shape_grid()) {
        const double err = std::fabs(static_cast<double>(g.params - target_params));
        if (err > 0.10 * static_cast<double>(target_params)) continue;
        if (best == nullptr) {
            best = &g;
            continue;
        }
        const double cand_aspect = std::fabs(g.aspect - 80.0);
        const double best_aspect = std::fabs(best->aspect - 80.0);
        const double best_err =
            std::fabs(static_cast<double>(best->params - target_params));
        if (cand_aspect != best_aspect) {
            if (cand_aspect < best_aspect) best = &g;
        } else if (err != best_err) {
            if (err < best_err) best = &g;
        } else if (g.shape.d_model < best->shape.d_model) {
            // final tie-breaks: smaller d_model; the grid already carries the
            // largest dividing head per d_model
            best = &g;
        }
    }
    if (best == nullptr)
        fail(ErrorCode::unsatisfiable,
             "no grid shape lands within 10% of the target parameter count");
    return best->shape;
}

TrainingPlan plan_from_budget(const WideCount& flop_budget) {
    const GridShape* best = nullptr;
    WideCount best_cost;
    std::int64_t best_tokens = 0;
    for (const auto& g : shape_grid()) {
        const std::int64_t tokens = chinchilla_tokens(g.params);
        const WideCount cost = train_flops_total(g.shape, tokens);
        if (cost > flop_budget) continue;
        if (best == nullptr || cost > best_cost ||
            (cost == best_cost && g.params > best->params)) {
            best = &g;
            best_cost = cost;
            best_tokens = tokens;
        }
    }
    if (best == nullptr)
        fail(ErrorCode::budget_too_small,
             "budget is below the training cost of the smallest grid shape");

    const RecipeRow& recipe = nearest_recipe(best->params);
    TrainingPlan plan;
    plan.shape = best->shape;
    plan.params = best->params;
    plan.tokens = best_tokens;
    plan.train_flops = best_cost;
    plan.batch_size_tokens = recipe.batch_size_tokens;
    plan.base_lr = recipe.base_lr;
    plan.cosine_decay = recipe.cosine_decay;
    plan.batch_ramp_initial_tokens = recipe.batch_ramp_initial_tokens;
    plan.batch_ramp_boundary_tokens = recipe.batch_ramp_boundary_tokens;
    return plan;
}

WideCount total_cost(const CostQuery& q) {
    if (q.n_infer_tokens < 0)
        fail(ErrorCode::invalid_argument, "n_infer_tokens must be non-negative");
    return q.train_flops +
           q.per_token_infer_flops * WideCount(static_cast<std::uint64_t>(q.n_infer_tokens));
}

WideCount record_infer_flops_per_token(const EvalRecord& r) {
    if (r.shape) return inference_flops_per_token(*r.shape);
    if (r.params <= 0) fail(ErrorCode::invalid_argument, "record has no shape and no params");
    return WideCount(static_cast<std::uint64_t>(2 * r.params));
}

CostQuery record_cost_query(const EvalRecord& r, std::int64_t n_infer_tokens) {
    return {WideCount::from_double(r.train_flops), record_infer_flops_per_token(r),
            n_infer_tokens};
}

std::optional<WideCount> crossover_inference_tokens(const CostQuery& a,
                                                    const CostQuery& b) {
    // total_a(n) = T_a + n*i_a vs total_b(n) = T_b + n*i_b
    if (a.train_flops >= b.train_flops) return WideCount(0);
    const WideCount gap = b.train_flops - a.train_flops;
    if (a.per_token_infer_flops <= b.per_token_infer_flops) return std::nullopt;
    const WideCount slope = a.per_token_infer_flops - b.per_token_infer_flops;
    // ceil(gap / slope) with 128-bit arithmetic
    unsigned __int128 g = (static_cast<unsigned __int128>(gap.hi()) << 64) | gap.lo();
    unsigned __int128 s = (static_cast<unsigned __int128>(slope.hi()) << 64) | slope.lo();
    unsigned __int128 n = (g + s - 1) / s;
    return WideCount::from_parts(static_cast<std::uint64_t>(n >> 64),
                                 static_cast<std::uint64_t>(n));
}

std::vector<std::size_t> pareto_frontier(const std::vector<EvalRecord>& records,
                                         std::int64_t n_infer_tokens) {
    struct Entry {
        WideCount total;
        double xent;
        std::size_t index;
    };
    std::vector<Entry> entries;
    entries.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (!r.pile_xent)
            fail(ErrorCode::missing_loss,
                 "record " + r.family + "/" + r.label + " has no pile_xent");
        entries.push_back({total_cost(record_cost_query(r, n_infer_tokens)), *r.pile_xent, i});
    }

    const auto name_less = [&records](std::size_t l, std::size_t r) {
        const auto& a = records[l];
        const auto& b = records[r];
        if (a.family != b.family) return a.family < b.family;
        return a.label < b.label;
    };

    std::vector<std::size_t> keep;
    for (const auto& e : entries) {
        bool dominated = false;
        for (const auto& o : entries) {
            if (o.index == e.index) continue;
            if (o.total <= e.total && o.xent <= e.xent &&
                (o.total < e.total || o.xent < e.xent)) {
                dominated = true;
                break;
            }
            if (o.total == e.total && o.xent == e.xent && name_less(o.index, e.index)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) keep.push_back(e.index);
    }
    // entries[i].index == i by construction, so record indices address entries
    std::sort(keep.begin(), keep.end(), [&entries](std::size_t l, std::size_t r) {
        const Entry& a = entries[l];
        const Entry& b = entries[r];
        if (a.total != b.total) return a.total < b.total;
        return a.xent < b.xent;
    });
    return keep;
}

} // namespace scalekit

#include <doctest.h>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "planner.hpp"

using namespace scalekit;

namespace {

RecordFile bundled_with_loss() {
    RecordFile all;
    for (const char* name : {"/cerebras_gpt.csv", "/pythia.csv", "/others.csv"}) {
        const RecordFile f = parse_records_file(std::string(SCALEKIT_DATA_DIR) + name);
        for (const auto& r : f.rows)
            if (r.pile_xent) all.rows.push_back(r);
    }
    return all;
}

std::set<std::string> frontier_names(const std::vector<EvalRecord>& rows,
                                     const std::vector<std::size_t>& idx) {
    std::set<std::string> names;
    for (auto i : idx) names.insert(rows[i].family + "/" + rows[i].label);
    return names;
}

} // namespace

TEST_CASE("suggested shapes satisfy the grid contract") {
    for (std::int64_t target : {111'000'000LL, 1'300'000'000LL, 12'850'000'000LL}) {
        const ModelShape s = suggest_shape(target);
        const std::int64_t params = count_params(s);
        CHECK(std::fabs(static_cast<double>(params - target)) <=
              0.10 * static_cast<double>(target));
        const double aspect = static_cast<double>(s.d_model) / static_cast<double>(s.n_layers);
        CHECK(aspect > 60.0);
        CHECK(aspect < 100.0);
        CHECK(s.d_ffn == 4 * s.d_model);
        CHECK(s.vocab_size == 50257);
        CHECK(s.seq_len == 2048);
        CHECK((s.d_head == 64 || s.d_head == 80 || s.d_head == 128));
        CHECK(s.d_model % s.d_head == 0);
        CHECK(s.d_model % 64 == 0);
    }
}

TEST_CASE("suggested shape for the 111M target is the released width") {
    const ModelShape s = suggest_shape(111'000'000);
    CHECK(s.d_model == 768);
    CHECK(s.n_layers == 10); // aspect 76.8
}

TEST_CASE("suggested shape for the 1.3B target sits in the released family") {
    // The documented objective (aspect nearest 80 inside the 10% params
    // window) selects 1984x25; the released 2048x24 row passes the same
    // admissibility checks and differs by 3% in width.
    const ModelShape s = suggest_shape(1'300'000'000);
    CHECK(s.d_model == 1984);
    CHECK(s.n_layers == 25);
    CHECK(s.d_head == 64);

    const ModelShape released{2048, 24, 128, 8192, 50257, 2048};
    const std::int64_t released_params = count_params(released);
    CHECK(std::fabs(static_cast<double>(released_params - 1'300'000'000)) <=
          0.10 * 1.3e9);
    bool released_on_grid = false;
    for (const auto& g : shape_grid())
        if (g.shape.d_model == released.d_model && g.shape.n_layers == released.n_layers)
            released_on_grid = true;
    CHECK(released_on_grid);
}

TEST_CASE("unreachable targets are rejected") {
    CHECK_THROWS_AS(suggest_shape(1'000'000), Error);
    CHECK_THROWS_AS(suggest_shape(999'999), Error);
    try {
        suggest_shape(1'000'000);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::unsatisfiable);
    }
}

TEST_CASE("plans from the published budgets land on the released sizes") {
    const TrainingPlan big = plan_from_budget(WideCount::from_double(2.3e22));
    CHECK(std::fabs(static_cast<double>(big.params) - 12.85e9) < 0.10 * 12.85e9);
    CHECK(big.tokens == chinchilla_tokens(big.params));
    CHECK(std::fabs(static_cast<double>(big.tokens) - 257.1e9) < 0.10 * 257.1e9);
    // nearest released recipe is the 13B row
    CHECK(big.batch_size_tokens == 2'211'840);
    CHECK(big.base_lr == 1.2e-4);
    CHECK(big.cosine_decay);
    CHECK(big.batch_ramp_initial_tokens == 1'474'560);
    CHECK(big.batch_ramp_boundary_tokens == 84'000'000'000);

    const TrainingPlan small = plan_from_budget(WideCount::from_double(2.6e18));
    CHECK(std::fabs(static_cast<double>(small.params) - 111e6) < 0.10 * 111e6);
    CHECK(small.batch_size_tokens == 245'760);
    CHECK(small.base_lr == 6.0e-4);
    CHECK_FALSE(small.cosine_decay);
    CHECK(small.batch_ramp_boundary_tokens == 0);
}

TEST_CASE("plan saturates its budget against the grid") {
    const WideCount budget = WideCount::from_double(5e20);
    const TrainingPlan plan = plan_from_budget(budget);
    CHECK(plan.train_flops <= budget);
    // no grid shape costs more than the plan while still fitting the budget
    for (const auto& g : shape_grid()) {
        const WideCount cost = train_flops_total(g.shape, chinchilla_tokens(g.params));
        if (cost <= budget) CHECK(cost <= plan.train_flops);
    }
}

TEST_CASE("budgets below the smallest grid shape are rejected") {
    CHECK_THROWS_AS(plan_from_budget(WideCount::from_double(1e15)), Error);
    try {
        plan_from_budget(WideCount(0));
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::budget_too_small);
    }
}

TEST_CASE("total cost composes training and serving") {
    const CostQuery no_serving{WideCount::from_double(2.3e22), WideCount(29569792000ULL), 0};
    CHECK(total_cost(no_serving) == WideCount::from_double(2.3e22));

    // 13B shape served for 200B tokens; double(2.3e22) is 23000000000000002097152
    const CostQuery q{WideCount::from_double(2.3e22), WideCount(29569792000ULL),
                      200'000'000'000};
    CHECK(total_cost(q).to_string() == "28913958400000002097152");

    const CostQuery doubled{q.train_flops, q.per_token_infer_flops, 2 * q.n_infer_tokens};
    CHECK(total_cost(doubled) - total_cost(q) ==
          q.per_token_infer_flops * WideCount(static_cast<std::uint64_t>(q.n_infer_tokens)));
}

TEST_CASE("crossover solves the linear cost equality") {
    const CostQuery a{WideCount(10), WideCount(2), 0};
    const CostQuery b{WideCount(16), WideCount(1), 0};
    auto n = crossover_inference_tokens(a, b);
    REQUIRE(n.has_value());
    CHECK(*n == WideCount(6));

    // identical plans cross immediately
    CHECK(*crossover_inference_tokens(a, a) == WideCount(0));
    // the small plan never catches up when it is also cheaper to serve
    CHECK_FALSE(crossover_inference_tokens(a, CostQuery{WideCount(16), WideCount(3), 0})
                    .has_value());
    // non-divisible gap rounds up to the first n at or past the equality
    const CostQuery c{WideCount(10), WideCount(3), 0};
    const CostQuery d{WideCount(17), WideCount(1), 0};
    CHECK(*crossover_inference_tokens(c, d) == WideCount(4));
}

TEST_CASE("compute-optimal 6.7B overtakes the fixed-dataset 6.9B near 3.7e12 tokens") {
    const RecordFile rows = bundled_with_loss();
    const EvalRecord* cerebras = nullptr;
    const EvalRecord* pythia = nullptr;
    for (const auto& r : rows.rows) {
        if (r.family == "cerebras-gpt" && r.label == "6.7b") cerebras = &r;
        if (r.family == "pythia" && r.label == "6.9b") pythia = &r;
    }
    REQUIRE(cerebras != nullptr);
    REQUIRE(pythia != nullptr);
    const auto n = crossover_inference_tokens(record_cost_query(*cerebras, 0),
                                              record_cost_query(*pythia, 0));
    REQUIRE(n.has_value());
    // ceil((1.4e22 - 6.3e21) / (15868125184 - 13800000000))
    CHECK(n->to_string() == "3723178876971");
    CHECK(n->to_double() > 1e12);
    CHECK(n->to_double() < 1e13);
}

TEST_CASE("single and dominated-pair frontiers") {
    EvalRecord a;
    a.family = "x";
    a.label = "small";
    a.params = 1'000'000;
    a.train_flops = 1e18;
    a.pile_xent = 2.0;
    CHECK(pareto_frontier({a}, 0) == std::vector<std::size_t>{0});

    EvalRecord b = a;
    b.label = "worse";
    b.train_flops = 2e18;
    b.pile_xent = 2.5; // dominated on both axes
    CHECK(pareto_frontier({a, b}, 0) == std::vector<std::size_t>{0});
    CHECK(pareto_frontier({b, a}, 0) == std::vector<std::size_t>{1});

    EvalRecord c = a;
    c.label = "tie";
    CHECK(pareto_frontier({a, c}, 0) == std::vector<std::size_t>{0}); // name order breaks the tie
}

TEST_CASE("records without a loss are refused by the frontier") {
    EvalRecord a;
    a.family = "x";
    a.label = "noloss";
    a.params = 1'000'000;
    a.train_flops = 1e18;
    CHECK_THROWS_AS(pareto_frontier({a}, 0), Error);
}

TEST_CASE("bundled frontier membership at the published inference loads") {
    const RecordFile rows = bundled_with_loss();
    // n = 0: the pure pre-training frontier
    const auto at_zero = frontier_names(rows.rows, pareto_frontier(rows.rows, 0));
    const std::set<std::string> expect_zero = {
        "cerebras-gpt-mup/111m", "cerebras-gpt/256m", "cerebras-gpt-mup/590m",
        "cerebras-gpt-mup/1.3b", "cerebras-gpt/2.7b", "pythia/1.4b",
        "pythia/2.8b",           "cerebras-gpt/6.7b", "pythia/6.9b",
        "gpt-j/6.1b",            "cerebras-gpt/13b",  "gpt-neox/20b"};
    CHECK(at_zero == expect_zero);

    const auto at_20b =
        frontier_names(rows.rows, pareto_frontier(rows.rows, 20'000'000'000));
    std::set<std::string> expect_20b = expect_zero;
    expect_20b.insert("pythia/410m"); // its train-FLOPs tie with 2.7b breaks at n > 0
    CHECK(at_20b == expect_20b);

    const auto at_2t =
        frontier_names(rows.rows, pareto_frontier(rows.rows, 2'000'000'000'000));
    const std::set<std::string> expect_2t = {
        "pythia/70m",  "pythia/160m", "pythia/410m",       "pythia/1b",
        "pythia/1.4b", "pythia/2.8b", "cerebras-gpt/6.7b", "gpt-j/6.1b",
        "pythia/12b",  "cerebras-gpt/13b", "gpt-neox/20b"};
    CHECK(at_2t == expect_2t);
}

TEST_CASE("frontier membership at zero inference equals the train-only frontier") {
    const RecordFile rows = bundled_with_loss();
    const auto with_cost = frontier_names(rows.rows, pareto_frontier(rows.rows, 0));
    // re-derive with every per-token cost collapsed to the same tiny constant,
    // leaving (train_flops, xent) as the only dominance axes
    std::vector<EvalRecord> train_only = rows.rows;
    for (auto& r : train_only) {
        r.shape.reset();
        r.params = 1;
    }
    CHECK(frontier_names(train_only, pareto_frontier(train_only, 0)) == with_cost);
}

TEST_CASE("records leaving the frontier never return as inference load grows") {
    const RecordFile rows = bundled_with_loss();
    std::set<std::string> gone;
    std::set<std::string> prev;
    for (std::int64_t n : {0LL, 1'000'000'000LL, 20'000'000'000LL, 100'000'000'000LL,
                           500'000'000'000LL, 2'000'000'000'000LL, 10'000'000'000'000LL}) {
        const auto now = frontier_names(rows.rows, pareto_frontier(rows.rows, n));
        for (const auto& name : gone) CHECK(now.count(name) == 0);
        for (const auto& name : prev)
            if (now.count(name) == 0) gone.insert(name);
        prev = now;
    }
}

TEST_CASE("every excluded record is dominated by a frontier member") {
    const RecordFile rows = bundled_with_loss();
    const std::int64_t n = 20'000'000'000;
    const auto frontier = pareto_frontier(rows.rows, n);
    std::set<std::size_t> on(frontier.begin(), frontier.end());
    for (std::size_t i = 0; i < rows.rows.size(); ++i) {
        if (on.count(i)) continue;
        const WideCount total_i = total_cost(record_cost_query(rows.rows[i], n));
        bool dominated = false;
        for (std::size_t j : frontier) {
            const WideCount total_j = total_cost(record_cost_query(rows.rows[j], n));
            const bool leq = total_j <= total_i && *rows.rows[j].pile_xent <= *rows.rows[i].pile_xent;
            const bool strict = total_j < total_i || *rows.rows[j].pile_xent < *rows.rows[i].pile_xent;
            if ((leq && strict) ||
                (total_j == total_i && *rows.rows[j].pile_xent == *rows.rows[i].pile_xent)) {
                dominated = true;
                break;
            }
        }
        CHECK(dominated);
    }
}

// scalekit command-line front end. Talks to the shared library exclusively
// through the C API in scalekit/scalekit.h.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scalekit/scalekit.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitInfeasible = 3;

#ifndef SCALEKIT_DATA_DIR
#define SCALEKIT_DATA_DIR "data"
#endif

std::string data_dir() {
    if (const char* env = std::getenv("SCALEKIT_DATA")) return env;
    return SCALEKIT_DATA_DIR;
}

[[noreturn]] void die(sk_status status) {
    std::fprintf(stderr, "error (%s): %s\n", sk_status_name(status), sk_last_error());
    const bool infeasible =
        status == SK_ERR_BUDGET_TOO_SMALL || status == SK_ERR_UNSATISFIABLE;
    std::exit(infeasible ? kExitInfeasible : kExitInputError);
}

void check(sk_status status) {
    if (status != SK_OK) die(status);
}

void print_and_free(char* text) {
    std::fputs(text, stdout);
    sk_string_free(text);
}

void write_file(const std::string& path, const char* text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::fprintf(stderr, "error (io): cannot write '%s'\n", path.c_str());
        std::exit(kExitInputError);
    }
    out << text;
}

sk_u128 u128_from_flops(double v) {
    sk_u128 out;
    check(sk_u128_from_double(v, &out));
    return out;
}

// Loads one records file, or the whole bundled data set when no path given.
sk_records* load_records(const std::string& path) {
    sk_records* records = nullptr;
    if (!path.empty()) {
        check(sk_records_parse_file(path.c_str(), &records));
        return records;
    }
    const std::string dir = data_dir();
    check(sk_records_parse_file((dir + "/cerebras_gpt.csv").c_str(), &records));
    for (const char* name : {"/pythia.csv", "/others.csv"}) {
        sk_records* more = nullptr;
        check(sk_records_parse_file((dir + name).c_str(), &more));
        const sk_status status = sk_records_merge(records, more);
        sk_records_free(more);
        check(status);
    }
    return records;
}

struct ShapeFlags {
    std::int64_t d_model = 0;
    std::int64_t layers = 0;
    std::int64_t d_head = 0;
    std::int64_t d_ffn = 0;
    std::int64_t vocab = 50257;
    std::int64_t seq = 2048;

    void attach(CLI::App* cmd, bool need_ffn) {
        cmd->add_option("--d-model", d_model, "hidden width")->required();
        cmd->add_option("--layers", layers, "decoder blocks")->required();
        cmd->add_option("--d-head", d_head, "attention head size")->required();
        auto* ffn = cmd->add_option("--d-ffn", d_ffn, "feed-forward width");
        if (need_ffn) ffn->required();
        cmd->add_option("--vocab", vocab, "vocabulary size");
        cmd->add_option("--seq", seq, "sequence length in tokens");
    }

    sk_shape shape() const {
        sk_shape s{d_model, layers, d_head, d_ffn > 0 ? d_ffn : 4 * d_model, vocab, seq};
        return s;
    }
};

std::vector<std::int64_t> parse_width_list(const std::string& text) {
    std::vector<std::int64_t> widths;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        widths.push_back(std::strtoll(item.c_str(), nullptr, 10));
    }
    return widths;
}

// Token counts arrive as "2.2e9" as often as "2200000000"; parse as a double
// and round so both spellings work.
std::int64_t to_tokens(double v) { return static_cast<std::int64_t>(std::llround(v)); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"compute-optimal transformer scaling toolkit"};
    app.require_subcommand(1);

    // params
    auto* params_cmd = app.add_subcommand("params", "parameter count for a model shape");
    ShapeFlags params_shape;
    params_shape.attach(params_cmd, true);

    // flops
    auto* flops_cmd = app.add_subcommand("flops", "FLOPs accounting for a model shape");
    ShapeFlags flops_shape;
    flops_shape.attach(flops_cmd, true);
    double flops_tokens = 0;
    bool flops_inference = false;
    flops_cmd->add_option("--tokens", flops_tokens, "token budget")->required();
    flops_cmd->add_flag("--inference", flops_inference, "inference mode");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "fit a loss-vs-compute power law");
    std::string fit_records_path, fit_family, fit_svg;
    fit_cmd->add_option("--records", fit_records_path, "records CSV (default: bundled data)");
    fit_cmd->add_option("--family", fit_family, "restrict to one model family");
    fit_cmd->add_option("--out-svg", fit_svg, "write a log-log plot here");

    // predict
    auto* predict_cmd = app.add_subcommand("predict", "evaluate a power law at a FLOP budget");
    sk_power_law predict_fit = sk_pile_frontier_fit();
    double predict_flops = 0.0;
    predict_cmd->add_option("--a", predict_fit.a, "FLOPs scale");
    predict_cmd->add_option("--b", predict_fit.b, "exponent");
    predict_cmd->add_option("--c", predict_fit.c, "irreducible loss");
    predict_cmd->add_option("--flops", predict_flops, "budget to evaluate")->required();

    // degrade
    auto* degrade_cmd =
        app.add_subcommand("degrade", "loss degradation away from 20 tokens/parameter");
    double degrade_tau = 0.0;
    degrade_cmd->add_option("--tau", degrade_tau, "tokens per parameter")->required();

    // plan
    auto* plan_cmd = app.add_subcommand("plan", "compute-optimal plan for a FLOP budget");
    double plan_budget = 0.0;
    plan_cmd->add_option("--budget-flops", plan_budget, "training FLOP budget")->required();

    // tradeoff
    auto* tradeoff_cmd =
        app.add_subcommand("tradeoff", "train+inference cost frontier over records");
    std::string tradeoff_records_path, tradeoff_svg;
    double tradeoff_tokens = 0;
    tradeoff_cmd->add_option("--records", tradeoff_records_path,
                             "records CSV (default: bundled data)");
    tradeoff_cmd->add_option("--infer-tokens", tradeoff_tokens, "expected inference tokens")
        ->required();
    tradeoff_cmd->add_option("--out-svg", tradeoff_svg, "write a log-log plot here");

    // mup
    auto* mup_cmd = app.add_subcommand("mup", "muP layer-wise hyperparameter plan");
    std::int64_t mup_d_model = 0, mup_layers = 0, mup_d_head = 0;
    sk_mup_base mup_base = sk_mup_base_default();
    mup_cmd->add_option("--d-model", mup_d_model, "hidden width")->required();
    mup_cmd->add_option("--layers", mup_layers, "decoder blocks")->required();
    mup_cmd->add_option("--d-head", mup_d_head, "attention head size")->required();
    mup_cmd->add_option("--base-width", mup_base.d_model_base, "proxy model width");
    mup_cmd->add_option("--base-lr", mup_base.eta_base, "tuned base learning rate");
    mup_cmd->add_option("--base-std", mup_base.sigma_base, "tuned base init std");
    mup_cmd->add_option("--m-emb", mup_base.m_emb, "embedding output multiplier");

    // schedule
    auto* schedule_cmd = app.add_subcommand("schedule", "learning rate at a point in training");
    double schedule_max_lr = 0.0, schedule_warmup = 375e6, schedule_total = 0.0;
    std::string schedule_decay = "linear";
    double schedule_at = 0;
    schedule_cmd->add_option("--max-lr", schedule_max_lr, "maximum learning rate")->required();
    schedule_cmd->add_option("--warmup-tokens", schedule_warmup, "linear warmup span");
    schedule_cmd->add_option("--total-tokens", schedule_total, "total training tokens")
        ->required();
    schedule_cmd->add_option("--decay", schedule_decay, "linear|cosine")
        ->check(CLI::IsMember({"linear", "cosine"}));
    schedule_cmd->add_option("--at", schedule_at, "tokens seen so far")->required();

    // probe
    auto* probe_cmd = app.add_subcommand("probe", "activation RMS across widths");
    std::string probe_param = "mup", probe_widths = "256,1024,4096";
    std::int64_t probe_samples = 1000;
    std::uint64_t probe_seed = 0;
    probe_cmd->add_option("--param", probe_param, "sp|mup")
        ->check(CLI::IsMember({"sp", "mup"}));
    probe_cmd->add_option("--widths", probe_widths, "comma-separated layer widths");
    probe_cmd->add_option("--samples", probe_samples, "samples per width");
    probe_cmd->add_option("--seed", probe_seed, "random seed");

    // stability
    auto* stability_cmd = app.add_subcommand("stability", "numerical stability checks");
    stability_cmd->require_subcommand(1);
    auto* cast_cmd = stability_cmd->add_subcommand("cast", "underflow fraction under a cast");
    std::string cast_format = "fp16", cast_values_path;
    bool cast_ftz = false;
    cast_cmd->add_option("--format", cast_format, "fp16|bf16|fp32")
        ->check(CLI::IsMember({"fp16", "bf16", "fp32"}));
    cast_cmd->add_option("--values", cast_values_path, "file of whitespace-separated numbers")
        ->required();
    cast_cmd->add_flag("--ftz", cast_ftz, "flush subnormals to zero");
    auto* adam_cmd = stability_cmd->add_subcommand("adam-eps", "Adam epsilon rule check");
    double adam_mu_v = 0.0, adam_eps = 0.0;
    adam_cmd->add_option("--mu-v", adam_mu_v, "mean of the Adam velocity state")->required();
    adam_cmd->add_option("--eps", adam_eps, "epsilon to check")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitInputError;
    }

    if (params_cmd->parsed()) {
        char* text = nullptr;
        sk_shape s = params_shape.shape();
        check(sk_report_params(&s, &text));
        print_and_free(text);
        return kExitOk;
    }

    if (flops_cmd->parsed()) {
        char* text = nullptr;
        sk_shape s = flops_shape.shape();
        check(sk_report_flops(&s, to_tokens(flops_tokens), flops_inference ? 1 : 0, &text));
        print_and_free(text);
        return kExitOk;
    }

    if (fit_cmd->parsed()) {
        sk_records* records = load_records(fit_records_path);
        const char* family = fit_family.empty() ? nullptr : fit_family.c_str();
        char* text = nullptr;
        sk_status status = sk_report_fit(records, family, &text);
        if (status != SK_OK) {
            sk_records_free(records);
            die(status);
        }
        print_and_free(text);
        if (!fit_svg.empty()) {
            sk_power_law fit;
            check(sk_fit_records(records, family, &fit));
            char* svg = nullptr;
            status = sk_svg_fit_plot(records, family, &fit, &svg);
            if (status != SK_OK) {
                sk_records_free(records);
                die(status);
            }
            write_file(fit_svg, svg);
            sk_string_free(svg);
        }
        sk_records_free(records);
        return kExitOk;
    }

    if (predict_cmd->parsed()) {
        char* text = nullptr;
        check(sk_report_predict(&predict_fit, predict_flops, &text));
        print_and_free(text);
        return kExitOk;
    }

    if (degrade_cmd->parsed()) {
        char* text = nullptr;
        check(sk_report_degrade(degrade_tau, &text));
        print_and_free(text);
        return kExitOk;
    }

    if (plan_cmd->parsed()) {
        sk_training_plan plan;
        check(sk_plan_from_budget(u128_from_flops(plan_budget), &plan));
        char* text = nullptr;
        check(sk_report_plan(&plan, &text));
        print_and_free(text);
        return kExitOk;
    }

    if (tradeoff_cmd->parsed()) {
        sk_records* records = load_records(tradeoff_records_path);
        char* text = nullptr;
        sk_status status = sk_report_frontier(records, to_tokens(tradeoff_tokens), &text);
        if (status != SK_OK) {
            sk_records_free(records);
            die(status);
        }
        print_and_free(text);
        if (!tradeoff_svg.empty()) {
            char* svg = nullptr;
            status = sk_svg_tradeoff_plot(records, to_tokens(tradeoff_tokens), &svg);
            if (status != SK_OK) {
                sk_records_free(records);
                die(status);
            }
            write_file(tradeoff_svg, svg);
            sk_string_free(svg);
        }
        sk_records_free(records);
        return kExitOk;
    }

    if (mup_cmd->parsed()) {
        sk_shape shape{mup_d_model, mup_layers, mup_d_head, 4 * mup_d_model, 50257, 2048};
        sk_layer_plan plan;
        check(sk_mup_plan(&shape, &mup_base, &plan));
        char* text = nullptr;
        check(sk_layer_plan_format(&plan, &shape, &text));
        print_and_free(text);
        return kExitOk;
    }

    if (schedule_cmd->parsed()) {
        const sk_lr_schedule schedule{schedule_max_lr, to_tokens(schedule_warmup),
                                      to_tokens(schedule_total),
                                      schedule_decay == "cosine" ? 1 : 0, 0.1};
        char* text = nullptr;
        check(sk_report_schedule(&schedule, to_tokens(schedule_at), &text));
        print_and_free(text);
        return kExitOk;
    }

    if (probe_cmd->parsed()) {
        const auto widths = parse_width_list(probe_widths);
        if (widths.empty()) {
            std::fprintf(stderr, "error (invalid_argument): --widths list is empty\n");
            return kExitInputError;
        }
        const sk_mup_base base = sk_mup_base_default();
        char* text = nullptr;
        check(sk_report_probe(probe_param == "mup" ? 1 : 0, &base, widths.data(),
                              widths.size(), probe_samples, probe_seed, &text));
        print_and_free(text);
        return kExitOk;
    }

    if (cast_cmd->parsed()) {
        std::ifstream in(cast_values_path);
        if (!in) {
            std::fprintf(stderr, "error (io): cannot open '%s'\n", cast_values_path.c_str());
            return kExitInputError;
        }
        std::vector<double> values;
        double v;
        while (in >> v) values.push_back(v);
        sk_float_format format = cast_format == "fp16"   ? sk_format_fp16()
                                 : cast_format == "bf16" ? sk_format_bf16()
                                                         : sk_format_fp32();
        char* text = nullptr;
        check(sk_report_cast(&format, values.data(), values.size(), cast_ftz ? 1 : 0, &text));
        print_and_free(text);
        return kExitOk;
    }

    if (adam_cmd->parsed()) {
        char* text = nullptr;
        check(sk_report_adam(adam_mu_v, adam_eps, &text));
        print_and_free(text);
        return kExitOk;
    }

    return kExitInputError;
}

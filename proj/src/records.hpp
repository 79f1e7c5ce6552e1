#ifndef SCALEKIT_RECORDS_HPP_
#define SCALEKIT_RECORDS_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "accounting.hpp"

namespace scalekit {

// Downstream task columns, in file order. The last entry is the average.
inline constexpr std::array<const char*, 8> kDownstreamColumns = {
    "hellaswag", "piqa",          "winogrande", "lambada",
    "arc_easy",  "arc_challenge", "openbookqa", "downstream_avg"};

struct EvalRecord {
    std::string family;
    std::string label;
    std::string variant; // e.g. "mup", "pile-dedup"; empty otherwise
    std::int64_t params = 0;
    double train_flops = 0.0;
    std::optional<double> pile_xent;
    std::optional<std::int64_t> tokens;
    std::optional<ModelShape> shape;
    // task name -> accuracy in [0,1]
    std::map<std::string, double> downstream;
};

struct RecordFile {
    int schema_version = 1;
    std::vector<EvalRecord> rows;
};

// CSV dialect: comma separated, '#' comment lines, required header row,
// decimal point only, scientific notation accepted, empty cell = missing.
RecordFile parse_records(const std::string& text);

RecordFile parse_records_file(const std::string& path);

std::string emit_records(const RecordFile& file);

// Batch size / LR / decay metadata for training-recipe lookup.
struct RecipeRow {
    const char* label;
    ModelShape shape;
    std::int64_t tokens;
    std::int64_t batch_size_tokens;
    double base_lr;
    bool cosine_decay;
    // 13B ramps its batch; zero boundary means no ramp.
    std::int64_t batch_ramp_initial_tokens;
    std::int64_t batch_ramp_boundary_tokens;
};

const std::vector<RecipeRow>& bundled_recipes();

} // namespace scalekit

#endif

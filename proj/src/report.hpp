#ifndef SCALEKIT_REPORT_HPP_
#define SCALEKIT_REPORT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "accounting.hpp"
#include "scaling.hpp"

namespace scalekit {

struct EvalRecord;
struct TrainingPlan;
struct FloatFormatSpec;
struct ProbeRow;
struct LRSchedule;

// All reports share one float format (6 significant figures) and end with a
// newline so output diffs are stable.
std::string fmt_g6(double v);

std::string report_params(const ModelShape& shape);

std::string report_flops(const ModelShape& shape, std::int64_t tokens, bool inference);

std::string report_fit(const std::vector<EvalRecord>& records, const PowerLawFit& fit);

std::string report_predict(const PowerLawFit& fit, double flops);

std::string report_degrade(double tau);

std::string report_plan(const TrainingPlan& plan);

std::string report_frontier(const std::vector<EvalRecord>& considered,
                            const std::vector<std::size_t>& frontier_indices,
                            std::int64_t n_infer_tokens, std::size_t skipped_missing_loss);

std::string report_probe(const std::vector<ProbeRow>& rows);

std::string report_schedule(const LRSchedule& schedule, std::int64_t at, double lr);

std::string report_cast(const FloatFormatSpec& format, std::size_t total,
                        std::size_t nonzero, std::size_t zeroed, double fraction);

std::string report_adam(double mu_v, double eps, double threshold, bool ok);

} // namespace scalekit

#endif

#include "scaling.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace scalekit {
namespace {

// For a fixed irreducible loss c the model is linear in log space:
//
//   log(L_i - c) = b*log f_i + beta0,   a = exp(-beta0/b)
//
// Residuals carry weights (L_i - c)^2, so the weighted log-space square
// equals the linear-space square (L_i - model_i)^2 to first order and the
// profile over c minimizes plain least squares on the losses.
struct ProfilePoint {
    double x; // log flops
    double loss;
};

struct OlsResult {
    double sse;
    double b;
    double beta0;
};

OlsResult weighted_ols(const std::vector<ProfilePoint>& pts, double c) {
    double sw = 0, mx = 0, my = 0;
    std::vector<double> w(pts.size()), y(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double gap = pts[i].loss - c;
        w[i] = gap * gap;
        y[i] = std::log(gap);
        sw += w[i];
        mx += w[i] * pts[i].x;
        my += w[i] * y[i];
    }
    mx /= sw;
    my /= sw;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        sxx += w[i] * (pts[i].x - mx) * (pts[i].x - mx);
        sxy += w[i] * (pts[i].x - mx) * (y[i] - my);
    }
    const double b = sxy / sxx;
    const double beta0 = my - b * mx;
    double sse = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double r = y[i] - (b * pts[i].x + beta0);
        sse += w[i] * r * r;
    }
    return {sse, b, beta0};
}

} // namespace

PowerLawFit fit_power_law(std::vector<LossPoint> points) {
    if (points.size() < 4)
        fail(ErrorCode::too_few_points, "power-law fit needs at least 4 points");
    for (const auto& p : points) {
        if (!(p.flops > 0.0) || !std::isfinite(p.flops))
            fail(ErrorCode::invalid_argument, "flops must be positive and finite");
        if (!(p.loss > 0.0) || !std::isfinite(p.loss))
            fail(ErrorCode::invalid_argument, "loss must be positive and finite");
    }
    // Sort so the result does not depend on input order.
    std::sort(points.begin(), points.end(), [](const LossPoint& l, const LossPoint& r) {
        if (l.flops != r.flops) return l.flops < r.flops;
        return l.loss < r.loss;
    });
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].flops == points[i - 1].flops)
            fail(ErrorCode::invalid_argument, "flops values must be distinct");

    double min_loss = points.front().loss, max_loss = min_loss;
    for (const auto& p : points) {
        min_loss = std::min(min_loss, p.loss);
        max_loss = std::max(max_loss, p.loss);
    }
    if (min_loss == max_loss)
        fail(ErrorCode::degenerate_data, "all losses equal; no finite power-law fit");

    std::vector<ProfilePoint> pts(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        pts[i] = {std::log(points[i].flops), points[i].loss};

    // 1000-point coarse scan of c over [0, 0.999*min_loss), then
    // golden-section refinement around the best grid cell.
    const int kGrid = 1000;
    const double hi_bound = 0.999 * min_loss;
    int best = 0;
    double best_sse = weighted_ols(pts, 0.0).sse;
    for (int i = 1; i < kGrid; ++i) {
        const double c = hi_bound * i / kGrid;
        const double sse = weighted_ols(pts, c).sse;
        if (sse < best_sse) {
            best_sse = sse;
            best = i;
        }
    }
    double lo = best > 0 ? hi_bound * (best - 1) / kGrid : 0.0;
    double hi = best < kGrid - 1 ? hi_bound * (best + 1) / kGrid
                                 : hi_bound * (kGrid - 1) / kGrid;

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = weighted_ols(pts, x1).sse;
    double f2 = weighted_ols(pts, x2).sse;
    for (int it = 0; it < 200 && (hi - lo) > 1e-16; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - invphi * (hi - lo);
            f1 = weighted_ols(pts, x1).sse;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + invphi * (hi - lo);
            f2 = weighted_ols(pts, x2).sse;
        }
    }
    const double c = (lo + hi) / 2.0;
    const OlsResult ols = weighted_ols(pts, c);
    return {std::exp(-ols.beta0 / ols.b), ols.b, c};
}

double predict_loss(const PowerLawFit& fit, double flops) {
    if (!(flops > 0.0)) fail(ErrorCode::invalid_argument, "flops must be positive");
    return std::pow(flops / fit.a, fit.b) + fit.c;
}

double loss_degradation(double tau) {
    if (!(tau > 0.0)) fail(ErrorCode::invalid_argument, "tau must be positive");
    const double r = std::log(std::sqrt(20.0 / tau));
    return 0.023 * r * r;
}

double relative_gap(const PowerLawFit& fit, const LossPoint& point) {
    const double predicted = predict_loss(fit, point.flops);
    return (point.loss - predicted) / predicted * 100.0;
}

double correct_vocab_xent(double xent, std::int64_t tokens_source_vocab,
                          std::int64_t tokens_reference_vocab) {
    if (tokens_source_vocab <= 0 || tokens_reference_vocab <= 0)
        fail(ErrorCode::zero_tokens, "token counts must be positive");
    return xent * (static_cast<double>(tokens_source_vocab) /
                   static_cast<double>(tokens_reference_vocab));
}

} // namespace scalekit

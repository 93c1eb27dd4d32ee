#include "nanohydra/scaler.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace nanohydra {

namespace {

// Shift-with-sign helper shared by fit and apply. Hard features occupy the
// first half of the flattened vector.
std::int32_t count_shifted(std::int16_t v, std::size_t i, std::size_t half,
                           const ScalerParams& p) {
    const bool shift_this = i < half || p.count_shift_soft;
    return shift_this ? (static_cast<std::int32_t>(v) >> p.count_shift)
                      : static_cast<std::int32_t>(v);
}

std::int16_t saturate16(std::int32_t v) {
    if (v > 32767) return 32767;
    if (v < -32768) return -32768;
    return static_cast<std::int16_t>(v);
}

} // namespace

int nearest_pow2_exponent(double sigma) {
    if (sigma <= 0.0) return 0;
    int best = -8;
    double best_dist = std::abs(std::ldexp(1.0, -8) - sigma);
    for (int e = -7; e <= 15; ++e) {
        const double dist = std::abs(std::ldexp(1.0, e) - sigma);
        if (dist <= best_dist) { // ties toward the larger exponent
            best_dist = dist;
            best = e;
        }
    }
    return best;
}

ScalerParams fit_scaler(const FeatureMatrix& features, const ModelConfig& cfg) {
    if (features.rows < 2)
        throw std::invalid_argument("fit_scaler: need at least 2 training rows");
    const std::size_t n = features.rows;
    const std::size_t lf = features.cols;
    const std::size_t half = lf / 2;

    ScalerParams p;
    p.count_shift = cfg.count_shift;
    p.count_shift_soft = cfg.count_shift_soft;
    p.mu.resize(lf);
    p.sigma_shift.resize(lf);

    for (std::size_t i = 0; i < lf; ++i) {
        double sum = 0.0;
        for (std::size_t r = 0; r < n; ++r)
            sum += count_shifted(features.data[r * lf + i], i, half, p);
        const double mean = sum / static_cast<double>(n);
        double var = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double dv = count_shifted(features.data[r * lf + i], i, half, p) - mean;
            var += dv * dv;
        }
        const double sd = std::sqrt(var / static_cast<double>(n));
        p.mu[i] = saturate16(static_cast<std::int32_t>(std::lround(mean)));
        p.sigma_shift[i] = static_cast<std::int8_t>(nearest_pow2_exponent(sd));
    }
    return p;
}

std::vector<std::int16_t> apply_scaler(std::span<const std::int16_t> flat_features,
                                       const ScalerParams& params) {
    const std::size_t lf = flat_features.size();
    assert(lf == params.mu.size());
    const std::size_t half = lf / 2;
    std::vector<std::int16_t> out(lf);
    for (std::size_t i = 0; i < lf; ++i) {
        const std::int32_t f = count_shifted(flat_features[i], i, half, params);
        if (f <= 0) {
            out[i] = 0;
            continue;
        }
        const std::int32_t centered = f - params.mu[i];
        const int e = params.sigma_shift[i];
        const std::int32_t scaled = e >= 0 ? (centered >> e) : (centered << -e);
        out[i] = saturate16(scaled);
    }
    return out;
}

std::vector<std::int16_t> apply_scaler(const FeatureVector& f, const ScalerParams& params) {
    return apply_scaler(flatten(f), params);
}

} // namespace nanohydra

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nanohydra/config.hpp"

namespace nanohydra {

/// Fixed-point input window. Samples satisfy |x| <= 2^frac_bits - 1 for raw
/// series and <= 2^(frac_bits+1) - 2 after one differencing step.
struct QuantizedSeries {
    std::vector<std::int16_t> samples;
    int frac_bits = 0;

    int len() const { return static_cast<int>(samples.size()); }
};

/// Quantizes to round(raw[i] / scale * (2^q_in - 1)), clamped to int16.
/// `scale` is the training-set max |value|, stored in the model.
/// Throws std::invalid_argument on non-finite input.
QuantizedSeries quantize_input(std::span<const double> raw, double scale, int q_in);

/// First difference out[i] = in[i+1] - in[i]; length shrinks by one.
/// Throws std::invalid_argument when len < 2.
QuantizedSeries difference(const QuantizedSeries& in);

/// One (differencing order, dilation) combination of the input window.
struct ProjectionView {
    QuantizedSeries series;
    int dilation = 1;
    int diff_order = 0;
    int timesteps = 0;
};

/// All n_diff * n_dil views, diff-order major, dilation minor.
std::vector<ProjectionView> make_views(const QuantizedSeries& series, const ModelConfig& cfg);

/// In-place per-series z-normalization (UCR convention), applied before
/// quantization when ModelConfig::znorm is set.
void znormalize(std::vector<double>& values);

} // namespace nanohydra

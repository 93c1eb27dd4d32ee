#include "nanohydra/series.hpp"

#include <cmath>
#include <stdexcept>

namespace nanohydra {

QuantizedSeries quantize_input(std::span<const double> raw, double scale, int q_in) {
    QuantizedSeries out;
    out.frac_bits = q_in;
    out.samples.reserve(raw.size());
    if (scale <= 0.0) scale = 1.0; // all-zero training set
    const double full = static_cast<double>((1 << q_in) - 1);
    for (double v : raw) {
        if (!std::isfinite(v))
            throw std::invalid_argument("quantize_input: non-finite sample");
        long q = std::lround(v / scale * full);
        if (q > 32767) q = 32767;
        if (q < -32768) q = -32768;
        out.samples.push_back(static_cast<std::int16_t>(q));
    }
    return out;
}

QuantizedSeries difference(const QuantizedSeries& in) {
    if (in.len() < 2)
        throw std::invalid_argument("difference: need at least 2 samples");
    QuantizedSeries out;
    out.frac_bits = in.frac_bits;
    out.samples.resize(in.samples.size() - 1);
    for (std::size_t i = 0; i + 1 < in.samples.size(); ++i)
        out.samples[i] = static_cast<std::int16_t>(in.samples[i + 1] - in.samples[i]);
    return out;
}

std::vector<ProjectionView> make_views(const QuantizedSeries& series, const ModelConfig& cfg) {
    const auto dils = cfg.dilation_schedule();
    std::vector<ProjectionView> views;
    views.reserve(static_cast<std::size_t>(cfg.n_diff) * dils.size());
    QuantizedSeries diffed;
    if (cfg.n_diff > 1)
        diffed = difference(series);
    for (int order = 0; order < cfg.n_diff; ++order) {
        const QuantizedSeries& src = order == 0 ? series : diffed;
        for (int d : dils) {
            ProjectionView v;
            v.series = src;
            v.dilation = d;
            v.diff_order = order;
            v.timesteps = cfg.timesteps(src.len(), d);
            views.push_back(std::move(v));
        }
    }
    return views;
}

void znormalize(std::vector<double>& values) {
    if (values.empty()) return;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    const double sd = std::sqrt(var);
    if (sd > 0.0) {
        for (double& v : values) v = (v - mean) / sd;
    } else {
        for (double& v : values) v = 0.0;
    }
}

} // namespace nanohydra

#include "nanohydra/transform.hpp"

#include <cassert>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nanohydra {

namespace {

// Narrowing store with saturation tally. Accumulation runs in int32; a
// validated config guarantees the value already fits int16.
std::int16_t narrow16(std::int32_t v, long& saturations) {
    if (v > 32767) {
        ++saturations;
        assert(!"int16 accumulator saturated");
        return 32767;
    }
    if (v < -32768) {
        ++saturations;
        assert(!"int16 accumulator saturated");
        return -32768;
    }
    return static_cast<std::int16_t>(v);
}

struct PairResult {
    long saturations = 0;
};

// One (view, group) pair: the unit of parallel work. Writes exclusively to
// feature slice [base, base + K).
PairResult run_pair(const ProjectionView& view, const KernelBank& bank, const ModelConfig& cfg,
                    int view_idx, int group, std::int16_t* hard_out, std::int16_t* soft_out) {
    const int K = cfg.kernels_per_group;
    const int W = cfg.kernel_len;
    const int d = view.dilation;
    const int t = view.timesteps;
    const int len = view.series.len();
    const std::int16_t* x = view.series.samples.data();
    const bool same_zero = cfg.padding == Padding::SameZero;
    const int center = same_zero ? (W - 1) / 2 : 0;
    const bool min_group = cfg.counting_mode == CountingMode::MaxAndMinSplit && (group & 1);
    const int shift = cfg.conv_preshift;

    // Tap-major transposed weights so the k loop below runs over contiguous
    // int32 lanes.
    std::vector<std::int32_t> wt(static_cast<std::size_t>(W) * K);
    for (int k = 0; k < K; ++k) {
        const std::int8_t* w = bank.kernel(view_idx, group, k);
        for (int j = 0; j < W; ++j)
            wt[static_cast<std::size_t>(j) * K + k] = w[j];
    }

    std::vector<std::int32_t> acc_hard(K, 0), acc_soft(K, 0), y(K);

    for (int i = 0; i < t; ++i) {
        std::int32_t* yp = y.data();
        for (int k = 0; k < K; ++k) yp[k] = 0;

        if (!same_zero) {
            const std::int16_t* xi = x + i;
            for (int j = 0; j < W; ++j) {
                const std::int32_t xv = xi[static_cast<std::ptrdiff_t>(j) * d];
                const std::int32_t* wj = wt.data() + static_cast<std::size_t>(j) * K;
                for (int k = 0; k < K; ++k) yp[k] += xv * wj[k];
            }
        } else {
            for (int j = 0; j < W; ++j) {
                const int src = i + (j - center) * d;
                if (src < 0 || src >= len) continue;
                const std::int32_t xv = x[src];
                const std::int32_t* wj = wt.data() + static_cast<std::size_t>(j) * K;
                for (int k = 0; k < K; ++k) yp[k] += xv * wj[k];
            }
        }

        int best = 0;
        std::int32_t best_y = yp[0] >> shift;
        if (!min_group) {
            for (int k = 1; k < K; ++k) {
                const std::int32_t v = yp[k] >> shift;
                if (v > best_y) { best_y = v; best = k; }
            }
        } else {
            for (int k = 1; k < K; ++k) {
                const std::int32_t v = yp[k] >> shift;
                if (v < best_y) { best_y = v; best = k; }
            }
        }
        acc_hard[best] += 1;
        acc_soft[best] += min_group ? -best_y : best_y;
    }

    PairResult res;
    for (int k = 0; k < K; ++k) {
        hard_out[k] = narrow16(acc_hard[k], res.saturations);
        soft_out[k] = narrow16(acc_soft[k], res.saturations);
    }
    return res;
}

void check_bank(const KernelBank& bank, const ModelConfig& cfg) {
    if (bank.n_views != cfg.n_dil * cfg.n_diff || bank.groups != cfg.groups ||
        bank.kernels_per_group != cfg.kernels_per_group || bank.kernel_len != cfg.kernel_len)
        throw std::invalid_argument("transform: kernel bank does not match config");
}

} // namespace

std::vector<std::int16_t> flatten(const FeatureVector& f) {
    std::vector<std::int16_t> out;
    out.reserve(f.hard.size() + f.soft.size());
    out.insert(out.end(), f.hard.begin(), f.hard.end());
    out.insert(out.end(), f.soft.begin(), f.soft.end());
    return out;
}

std::int32_t conv_at(const ProjectionView& view, std::span<const std::int8_t> kernel, int i) {
    const int W = static_cast<int>(kernel.size());
    const int d = view.dilation;
    const int len = view.series.len();
    if (i < 0 || i >= view.timesteps)
        throw std::out_of_range("conv_at: timestep index out of range");
    const bool same_zero = view.timesteps == len;
    const int center = same_zero ? (W - 1) / 2 : 0;
    std::int32_t acc = 0;
    for (int j = 0; j < W; ++j) {
        const int src = i + (j - center) * d;
        if (same_zero && (src < 0 || src >= len)) continue;
        acc += static_cast<std::int32_t>(view.series.samples[src]) * kernel[j];
    }
    return acc;
}

FeatureVector transform(const QuantizedSeries& series, const KernelBank& bank,
                        const ModelConfig& cfg, SaturationStats* stats) {
    check_bank(bank, cfg);
    const auto views = make_views(series, cfg);
    const int H = cfg.groups;
    const int K = cfg.kernels_per_group;
    const int n_pairs = static_cast<int>(views.size()) * H;

    FeatureVector f;
    f.hard.assign(static_cast<std::size_t>(n_pairs) * K, 0);
    f.soft.assign(static_cast<std::size_t>(n_pairs) * K, 0);

    long total_sat = 0;
#pragma omp parallel for schedule(static) reduction(+ : total_sat) if (n_pairs > 1)
    for (int p = 0; p < n_pairs; ++p) {
        const int v = p / H;
        const int h = p % H;
        const std::size_t base = static_cast<std::size_t>(p) * K;
        const PairResult r =
            run_pair(views[v], bank, cfg, v, h, f.hard.data() + base, f.soft.data() + base);
        total_sat += r.saturations;
    }
    if (stats) stats->saturations += total_sat;
    return f;
}

FeatureVector transform_serial(const QuantizedSeries& series, const KernelBank& bank,
                               const ModelConfig& cfg, SaturationStats* stats) {
    check_bank(bank, cfg);
    const auto views = make_views(series, cfg);
    const int H = cfg.groups;
    const int K = cfg.kernels_per_group;
    const int W = cfg.kernel_len;
    const int shift = cfg.conv_preshift;

    FeatureVector f;
    f.hard.assign(static_cast<std::size_t>(views.size()) * H * K, 0);
    f.soft.assign(static_cast<std::size_t>(views.size()) * H * K, 0);

    long saturations = 0;
    std::vector<std::int32_t> acc_hard, acc_soft;
    for (std::size_t v = 0; v < views.size(); ++v) {
        const ProjectionView& view = views[v];
        for (int h = 0; h < H; ++h) {
            const bool min_group =
                cfg.counting_mode == CountingMode::MaxAndMinSplit && (h & 1);
            acc_hard.assign(K, 0);
            acc_soft.assign(K, 0);
            for (int i = 0; i < view.timesteps; ++i) {
                int best = 0;
                std::int32_t best_y = 0;
                for (int k = 0; k < K; ++k) {
                    const std::int32_t y =
                        conv_at(view, std::span(bank.kernel(static_cast<int>(v), h, k),
                                                static_cast<std::size_t>(W)),
                                i) >>
                        shift;
                    if (k == 0 || (min_group ? y < best_y : y > best_y)) {
                        best_y = y;
                        best = k;
                    }
                }
                acc_hard[best] += 1;
                acc_soft[best] += min_group ? -best_y : best_y;
            }
            const std::size_t base = (v * H + h) * K;
            for (int k = 0; k < K; ++k) {
                f.hard[base + k] = narrow16(acc_hard[k], saturations);
                f.soft[base + k] = narrow16(acc_soft[k], saturations);
            }
        }
    }
    if (stats) stats->saturations += saturations;
    return f;
}

} // namespace nanohydra

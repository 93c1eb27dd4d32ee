#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nanohydra/config.hpp"
#include "nanohydra/kernel_bank.hpp"
#include "nanohydra/series.hpp"

namespace nanohydra {

/// Histogram of kernel wins (hard) and accumulated winning responses (soft).
/// Each array has feature_len()/2 entries, linear over (diff, dil, group,
/// kernel). The flattened feature vector is hard followed by soft.
struct FeatureVector {
    std::vector<std::int16_t> hard;
    std::vector<std::int16_t> soft;

    bool operator==(const FeatureVector&) const = default;
};

/// hard ++ soft, length feature_len().
std::vector<std::int16_t> flatten(const FeatureVector& f);

/// Count of int16 accumulator overflows observed during a transform. A
/// validated config keeps this at zero; a nonzero value means the overflow
/// budget was violated (program error, asserted in debug builds).
struct SaturationStats {
    long saturations = 0;
};

/// Exact dilated dot product of the kernel with the view at output index i.
/// Valid padding reads x[i + j*d]; zero padding centers the taps on i.
/// Throws std::out_of_range when i is outside the view's timesteps.
std::int32_t conv_at(const ProjectionView& view, std::span<const std::int8_t> kernel, int i);

/// Streaming feature extraction: per (view, group, timestep) computes the K
/// preshifted responses, picks the extreme kernel (lowest index on ties) and
/// updates that kernel's hard count and soft sum. No convolution output is
/// ever materialized. Parallel across (view, group) pairs, which own disjoint
/// feature slices.
FeatureVector transform(const QuantizedSeries& series, const KernelBank& bank,
                        const ModelConfig& cfg, SaturationStats* stats = nullptr);

/// Reference implementation of the same contract: plain nested loops over
/// conv_at, no parallelism, no layout tricks. Kept for differential tests
/// and the benchmark baseline; must match transform() bit for bit.
FeatureVector transform_serial(const QuantizedSeries& series, const KernelBank& bank,
                               const ModelConfig& cfg, SaturationStats* stats = nullptr);

} // namespace nanohydra

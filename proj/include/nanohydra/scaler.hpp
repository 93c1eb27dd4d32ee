#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nanohydra/config.hpp"
#include "nanohydra/transform.hpp"

namespace nanohydra {

/// Rows of flattened feature vectors (hard ++ soft), one per example.
struct FeatureMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::int16_t> data;

    std::span<const std::int16_t> row(std::size_t r) const {
        return {data.data() + r * cols, cols};
    }
};

/// Per-feature training-set statistics in shift-only form: mean rounded to
/// int16 and the standard deviation replaced by its nearest power of two.
struct ScalerParams {
    std::vector<std::int16_t> mu;       // length L_F
    std::vector<std::int8_t> sigma_shift; // length L_F, exponent in [-8, 15]
    int count_shift = 0;                // sqrt replacement, hard-count half
    bool count_shift_soft = false;
};

/// Exponent e in [-8, 15] with 2^e nearest to sigma in linear distance,
/// ties toward the larger exponent; sigma <= 0 maps to 0.
int nearest_pow2_exponent(double sigma);

/// Fits mu / sigma_shift column-wise on raw feature rows. count_shift is
/// applied to the hard half (and optionally the soft half) before the
/// statistics, exactly as apply_scaler will do at inference.
/// Throws std::invalid_argument when fewer than 2 rows.
ScalerParams fit_scaler(const FeatureMatrix& features, const ModelConfig& cfg);

/// Sparse scaling: out[i] = (f'[i] - mu[i]) >> sigma_shift[i] when f'[i] > 0,
/// else 0, where f' is the count-shifted feature. Negative exponents shift
/// left. Arithmetic shift, i.e. division rounding toward -inf.
std::vector<std::int16_t> apply_scaler(std::span<const std::int16_t> flat_features,
                                       const ScalerParams& params);
std::vector<std::int16_t> apply_scaler(const FeatureVector& f, const ScalerParams& params);

} // namespace nanohydra

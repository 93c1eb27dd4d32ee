#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nanohydra {

enum class Padding : int {
    Valid = 0,    // no padding; timesteps = len - (W-1)*d
    SameZero = 1, // zero-padded, centered taps; timesteps = len
};

enum class CountingMode : int {
    MaxOnly = 0,        // every group counts its argmax kernel
    MaxAndMinSplit = 1, // even groups count argmax, odd groups count argmin
};

/// All hyperparameters of the pipeline. Immutable after validation; the
/// derived-size helpers below are the single source of truth for feature
/// length, the dilation schedule and the integer overflow budgets.
struct ModelConfig {
    int input_len = 140;       // samples per window (L_x)
    int num_classes = 2;       // C
    int n_dil = 3;             // number of dilation values
    int n_diff = 1;            // 1 = raw only, 2 = raw + first difference
    int groups = 10;           // kernel groups per projection unit (H)
    int kernels_per_group = 8; // K
    int kernel_len = 9;        // W, odd
    int lambda_feats = 2;      // hard + soft counting
    int input_frac_bits = 8;   // q_in: inputs quantized to +/-(2^q_in - 1)
    int conv_preshift = 0;     // LSBs dropped from conv outputs; <0 = resolve to minimum
    std::uint64_t seed = 42;
    Padding padding = Padding::Valid;
    CountingMode counting_mode = CountingMode::MaxAndMinSplit;
    int count_shift = 1;           // sqrt replacement on hard counts, fit and apply
    bool count_shift_soft = false; // extend count_shift to soft sums
    bool znorm = false;            // per-series z-normalization before quantization

    int feature_len() const {
        return lambda_feats * groups * kernels_per_group * n_dil * n_diff;
    }

    /// d_j = 2^j, length n_dil. Throws std::invalid_argument when the largest
    /// dilation leaves some projection without a single valid timestep.
    std::vector<int> dilation_schedule() const;

    /// Largest |sample| a projection of order `diff_order` can contain.
    int max_abs_sample(int diff_order) const {
        int base = (1 << input_frac_bits) - 1;
        return diff_order == 0 ? base : 2 * base;
    }

    /// Output positions for a series of length `len` at dilation `d`.
    int timesteps(int len, int d) const {
        return padding == Padding::Valid ? len - (kernel_len - 1) * d : len;
    }
};

/// Smallest preshift s such that the worst-case soft accumulation
/// (max_abs_sample * W * L_x) >> s fits int16.
int min_conv_preshift(const ModelConfig& cfg);

/// Fills conv_preshift with min_conv_preshift when it was left negative.
ModelConfig resolve_preshift(ModelConfig cfg);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Checks every config invariant, including the int16 soft-count budget and
/// the int32 classifier accumulator budget. Report-style: never throws.
ValidationReport validate(const ModelConfig& cfg);

/// Flat `key = value` text form, canonical key order, integers only.
std::string config_to_text(const ModelConfig& cfg);

/// Parses the flat text form. Throws std::invalid_argument on unknown,
/// missing, duplicate or malformed keys.
ModelConfig config_from_text(const std::string& text);

} // namespace nanohydra

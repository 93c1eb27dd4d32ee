#pragma once

#include <cstdint>
#include <vector>

#include "nanohydra/config.hpp"

namespace nanohydra {

/// Binary {-1,+1} convolution kernels, one independent set per projection
/// view. Regenerating from (seed, config) reproduces the bank bit-for-bit,
/// which is why model files store only the seed.
struct KernelBank {
    std::vector<std::int8_t> weights; // [view][group][kernel][tap], row-major
    std::uint64_t seed = 0;
    int n_views = 0;
    int groups = 0;
    int kernels_per_group = 0;
    int kernel_len = 0;

    const std::int8_t* kernel(int view, int group, int k) const {
        const std::size_t idx =
            ((static_cast<std::size_t>(view) * groups + group) * kernels_per_group + k) *
            kernel_len;
        return weights.data() + idx;
    }

    std::size_t size_bytes() const { return weights.size(); }
};

/// Samples i.i.d. uniform {-1,+1} weights from per-(view, group) seeded
/// streams; bias-free.
KernelBank sample_kernels(const ModelConfig& cfg);

} // namespace nanohydra

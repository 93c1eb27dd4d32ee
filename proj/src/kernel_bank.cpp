#include "nanohydra/kernel_bank.hpp"

#include "nanohydra/rng.hpp"

namespace nanohydra {

KernelBank sample_kernels(const ModelConfig& cfg) {
    KernelBank bank;
    bank.seed = cfg.seed;
    bank.n_views = cfg.n_dil * cfg.n_diff;
    bank.groups = cfg.groups;
    bank.kernels_per_group = cfg.kernels_per_group;
    bank.kernel_len = cfg.kernel_len;
    bank.weights.resize(static_cast<std::size_t>(bank.n_views) * bank.groups *
                        bank.kernels_per_group * bank.kernel_len);

    std::size_t idx = 0;
    for (int v = 0; v < bank.n_views; ++v) {
        for (int h = 0; h < bank.groups; ++h) {
            SplitMix64 rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(v),
                                       static_cast<std::uint64_t>(h)));
            for (int k = 0; k < bank.kernels_per_group; ++k)
                for (int j = 0; j < bank.kernel_len; ++j)
                    bank.weights[idx++] = (rng.next() & 1) ? std::int8_t{1} : std::int8_t{-1};
        }
    }
    return bank;
}

} // namespace nanohydra

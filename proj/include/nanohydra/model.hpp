#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "nanohydra/classifier.hpp"
#include "nanohydra/config.hpp"
#include "nanohydra/scaler.hpp"

namespace nanohydra {

/// The deployable bundle. Kernel weights are not stored; they regenerate
/// bit-exactly from bank_seed and the config.
struct QuantizedModel {
    ModelConfig config;
    double input_scale = 1.0; // training-set max |value|
    std::uint64_t bank_seed = 0;
    ScalerParams scaler;
    QuantizedClassifier clf;
};

/// Binary layout: magic "NHYD", u16 version, u32-length-prefixed config text,
/// input_scale f64, bank_seed u64, mu int16[L_F], sigma_shift int8[L_F],
/// weight_scale f64, weights_q int8[C*L_F], bias_q int32[C]. All
/// little-endian. serialize(deserialize(bytes)) == bytes.
std::vector<std::uint8_t> serialize(const QuantizedModel& m);

/// Throws std::runtime_error on bad magic, version, truncation or trailing
/// garbage; config text errors propagate as std::invalid_argument.
QuantizedModel deserialize(const std::vector<std::uint8_t>& bytes);

std::size_t model_size_bytes(const QuantizedModel& m);

void save_model(const std::filesystem::path& path, const QuantizedModel& m);
QuantizedModel load_model(const std::filesystem::path& path);

} // namespace nanohydra

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nanohydra/scaler.hpp"

namespace nanohydra {

struct LabeledSeries {
    std::vector<double> values;
    int label = 0; // 0-based after remapping
};

/// A UCR-style dataset: fixed-length univariate series, contiguous 0-based
/// labels. label_map[i] is the original label of class i (sorted ascending),
/// recording the remap bijection.
struct Dataset {
    std::string name;
    std::vector<LabeledSeries> train;
    std::vector<LabeledSeries> test;
    int n_classes = 0;
    int series_len = 0;
    std::vector<double> label_map;
};

/// Loads one `<label>\t<v1>\t...` file as the train split of a Dataset.
/// Labels remap to 0-based by sorted original value; row order preserved.
/// Throws std::runtime_error on missing file, ragged rows or non-numeric
/// cells.
Dataset load_ucr_tsv(const std::filesystem::path& file);

/// Loads `<name>_TRAIN.tsv` and `<name>_TEST.tsv` from dir. The label remap
/// comes from the train split; a test label absent from train is an error.
Dataset load_ucr_dataset(const std::filesystem::path& dir, const std::string& name);

std::vector<int> class_histogram(const std::vector<LabeledSeries>& split, int n_classes);

/// FNV-1a content hashes used to key cached artifacts and the run manifest.
std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 0xCBF29CE484222325ULL);
std::uint64_t dataset_hash(const Dataset& ds);

/// Feature cache: flat binary `u32 n, u32 L_F, int16 data`, little-endian.
void save_feature_cache(const std::filesystem::path& path, const FeatureMatrix& m);
FeatureMatrix load_feature_cache(const std::filesystem::path& path);
std::filesystem::path feature_cache_path(const std::filesystem::path& dir,
                                         std::uint64_t dataset_h, std::uint64_t config_h,
                                         std::uint64_t seed, const std::string& split);

} // namespace nanohydra

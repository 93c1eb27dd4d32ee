#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nanohydra/config.hpp"

namespace nanohydra {

/// Row-major dense matrix of doubles; the float training side.
struct FloatMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

struct FloatClassifier {
    int num_classes = 0;
    int num_features = 0;
    std::vector<double> weights; // [C][L_F], row-major
    std::vector<double> bias;    // [C]
};

struct QuantizedClassifier {
    int num_classes = 0;
    int num_features = 0;
    std::vector<std::int8_t> weights_q; // [C][L_F]
    std::vector<std::int32_t> bias_q;   // [C]
    double weight_scale = 1.0;          // single per-tensor scale
};

/// Fixed SGD recipe; everything that affects the trained weights is either a
/// constant here or derived from the seed, so training is reproducible.
struct TrainOptions {
    int epochs = 100;
    int batch_size = 32;
    double learning_rate = 0.01; // cosine-decayed per epoch
    double weight_decay = 1e-4;  // L2 on weights, not bias
    std::uint64_t seed = 0;
};

/// Mean cross-entropy (plus L2 term) and its analytic gradient, exposed so
/// tests can check it against finite differences.
double softmax_xent_loss_grad(const FloatClassifier& clf, const FloatMatrix& X,
                              std::span<const int> labels, double weight_decay,
                              std::vector<double>& grad_w, std::vector<double>& grad_b);

/// Multinomial logistic regression by seeded mini-batch SGD.
/// Throws std::invalid_argument on degenerate input (single class, n < C).
FloatClassifier train_classifier(const FloatMatrix& X, std::span<const int> labels,
                                 int num_classes, const TrainOptions& opt);

/// Per-tensor symmetric int8 PTQ: weight_scale = max|w| / 127 (1 when all
/// zero); bias carried in int32 at the same scale.
QuantizedClassifier quantize(const FloatClassifier& clf);

FloatClassifier dequantize(const QuantizedClassifier& clf);

/// Clamp applied to scaled features before any classifier sees them; keeps
/// the int32 accumulator budget static. Same clamp at training-feature
/// export and at inference.
inline std::int16_t clamp_feature(std::int32_t v) {
    if (v > 2047) return 2047;
    if (v < -2047) return -2047;
    return static_cast<std::int16_t>(v);
}

/// argmax_c of bias_q[c] + sum_i weights_q[c][i] * clamp(f[i]), accumulated
/// in int32; lowest class index wins ties.
int predict(std::span<const std::int16_t> f_scaled, const QuantizedClassifier& clf);

/// Float path: argmax of W f + b (same clamp), lowest index on ties.
int predict(std::span<const double> f, const FloatClassifier& clf);

std::vector<double> logits(std::span<const double> f, const FloatClassifier& clf);

} // namespace nanohydra

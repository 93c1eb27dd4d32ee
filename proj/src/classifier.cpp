#include "nanohydra/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "nanohydra/rng.hpp"

namespace nanohydra {

namespace {

void softmax_inplace(std::vector<double>& z) {
    const double zmax = *std::max_element(z.begin(), z.end());
    double denom = 0.0;
    for (double& v : z) {
        v = std::exp(v - zmax);
        denom += v;
    }
    for (double& v : z) v /= denom;
}

} // namespace

double softmax_xent_loss_grad(const FloatClassifier& clf, const FloatMatrix& X,
                              std::span<const int> labels, double weight_decay,
                              std::vector<double>& grad_w, std::vector<double>& grad_b) {
    const int C = clf.num_classes;
    const std::size_t D = X.cols;
    const std::size_t n = X.rows;
    grad_w.assign(clf.weights.size(), 0.0);
    grad_b.assign(clf.bias.size(), 0.0);

    double loss = 0.0;
    std::vector<double> z(static_cast<std::size_t>(C));
    for (std::size_t r = 0; r < n; ++r) {
        const double* x = X.data.data() + r * D;
        for (int c = 0; c < C; ++c) {
            const double* w = clf.weights.data() + static_cast<std::size_t>(c) * D;
            double acc = clf.bias[static_cast<std::size_t>(c)];
            for (std::size_t i = 0; i < D; ++i) acc += w[i] * x[i];
            z[static_cast<std::size_t>(c)] = acc;
        }
        softmax_inplace(z);
        loss += -std::log(std::max(z[static_cast<std::size_t>(labels[r])], 1e-300));
        for (int c = 0; c < C; ++c) {
            const double delta = z[static_cast<std::size_t>(c)] - (c == labels[r] ? 1.0 : 0.0);
            grad_b[static_cast<std::size_t>(c)] += delta;
            double* gw = grad_w.data() + static_cast<std::size_t>(c) * D;
            for (std::size_t i = 0; i < D; ++i) gw[i] += delta * x[i];
        }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    loss *= inv_n;
    for (double& g : grad_b) g *= inv_n;
    double reg = 0.0;
    for (std::size_t i = 0; i < grad_w.size(); ++i) {
        grad_w[i] = grad_w[i] * inv_n + weight_decay * clf.weights[i];
        reg += clf.weights[i] * clf.weights[i];
    }
    return loss + 0.5 * weight_decay * reg;
}

FloatClassifier train_classifier(const FloatMatrix& X, std::span<const int> labels,
                                 int num_classes, const TrainOptions& opt) {
    const std::size_t n = X.rows;
    const std::size_t D = X.cols;
    if (n < static_cast<std::size_t>(num_classes))
        throw std::invalid_argument("train_classifier: fewer samples than classes");
    std::set<int> distinct;
    for (std::size_t r = 0; r < n; ++r) {
        if (labels[r] < 0 || labels[r] >= num_classes)
            throw std::invalid_argument("train_classifier: label out of range");
        distinct.insert(labels[r]);
    }
    if (distinct.size() < 2)
        throw std::invalid_argument("train_classifier: single-class training set");

    FloatClassifier clf;
    clf.num_classes = num_classes;
    clf.num_features = static_cast<int>(D);
    clf.weights.assign(static_cast<std::size_t>(num_classes) * D, 0.0);
    clf.bias.assign(static_cast<std::size_t>(num_classes), 0.0);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    SplitMix64 rng(opt.seed);

    std::vector<double> z(static_cast<std::size_t>(num_classes));
    std::vector<double> gw(clf.weights.size());
    std::vector<double> gb(clf.bias.size());

    for (int epoch = 0; epoch < opt.epochs; ++epoch) {
        const double lr = opt.learning_rate * 0.5 *
                          (1.0 + std::cos(M_PI * static_cast<double>(epoch) /
                                          static_cast<double>(opt.epochs)));
        seeded_shuffle(order, rng);
        for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(opt.batch_size)) {
            const std::size_t stop = std::min(n, start + static_cast<std::size_t>(opt.batch_size));
            const double inv_b = 1.0 / static_cast<double>(stop - start);
            std::fill(gw.begin(), gw.end(), 0.0);
            std::fill(gb.begin(), gb.end(), 0.0);
            for (std::size_t s = start; s < stop; ++s) {
                const double* x = X.data.data() + order[s] * D;
                for (int c = 0; c < num_classes; ++c) {
                    const double* w = clf.weights.data() + static_cast<std::size_t>(c) * D;
                    double acc = clf.bias[static_cast<std::size_t>(c)];
                    for (std::size_t i = 0; i < D; ++i) acc += w[i] * x[i];
                    z[static_cast<std::size_t>(c)] = acc;
                }
                softmax_inplace(z);
                const int y = labels[order[s]];
                for (int c = 0; c < num_classes; ++c) {
                    const double delta =
                        z[static_cast<std::size_t>(c)] - (c == y ? 1.0 : 0.0);
                    gb[static_cast<std::size_t>(c)] += delta;
                    double* g = gw.data() + static_cast<std::size_t>(c) * D;
                    for (std::size_t i = 0; i < D; ++i) g[i] += delta * x[i];
                }
            }
            for (std::size_t i = 0; i < clf.weights.size(); ++i)
                clf.weights[i] -= lr * (gw[i] * inv_b + opt.weight_decay * clf.weights[i]);
            for (std::size_t c = 0; c < clf.bias.size(); ++c)
                clf.bias[c] -= lr * gb[c] * inv_b;
        }
    }
    return clf;
}

QuantizedClassifier quantize(const FloatClassifier& clf) {
    QuantizedClassifier q;
    q.num_classes = clf.num_classes;
    q.num_features = clf.num_features;
    double wmax = 0.0;
    for (double w : clf.weights) wmax = std::max(wmax, std::abs(w));
    q.weight_scale = wmax > 0.0 ? wmax / 127.0 : 1.0;
    q.weights_q.resize(clf.weights.size());
    for (std::size_t i = 0; i < clf.weights.size(); ++i) {
        const long v = std::lround(clf.weights[i] / q.weight_scale);
        q.weights_q[i] = static_cast<std::int8_t>(std::clamp(v, -127L, 127L));
    }
    q.bias_q.resize(clf.bias.size());
    for (std::size_t c = 0; c < clf.bias.size(); ++c)
        q.bias_q[c] = static_cast<std::int32_t>(std::lround(clf.bias[c] / q.weight_scale));
    return q;
}

FloatClassifier dequantize(const QuantizedClassifier& clf) {
    FloatClassifier f;
    f.num_classes = clf.num_classes;
    f.num_features = clf.num_features;
    f.weights.resize(clf.weights_q.size());
    for (std::size_t i = 0; i < clf.weights_q.size(); ++i)
        f.weights[i] = clf.weights_q[i] * clf.weight_scale;
    f.bias.resize(clf.bias_q.size());
    for (std::size_t c = 0; c < clf.bias_q.size(); ++c)
        f.bias[c] = clf.bias_q[c] * clf.weight_scale;
    return f;
}

int predict(std::span<const std::int16_t> f_scaled, const QuantizedClassifier& clf) {
    if (f_scaled.size() != static_cast<std::size_t>(clf.num_features))
        throw std::invalid_argument("predict: feature length mismatch");
    int best = 0;
    std::int32_t best_acc = 0;
    for (int c = 0; c < clf.num_classes; ++c) {
        const std::int8_t* w = clf.weights_q.data() +
                               static_cast<std::size_t>(c) * clf.num_features;
        std::int32_t acc = clf.bias_q[static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < f_scaled.size(); ++i)
            acc += static_cast<std::int32_t>(w[i]) * clamp_feature(f_scaled[i]);
        if (c == 0 || acc > best_acc) {
            best_acc = acc;
            best = c;
        }
    }
    return best;
}

std::vector<double> logits(std::span<const double> f, const FloatClassifier& clf) {
    std::vector<double> z(static_cast<std::size_t>(clf.num_classes));
    for (int c = 0; c < clf.num_classes; ++c) {
        const double* w = clf.weights.data() + static_cast<std::size_t>(c) * clf.num_features;
        double acc = clf.bias[static_cast<std::size_t>(c)];
        for (std::size_t i = 0; i < f.size(); ++i)
            acc += w[i] * std::clamp(f[i], -2047.0, 2047.0);
        z[static_cast<std::size_t>(c)] = acc;
    }
    return z;
}

int predict(std::span<const double> f, const FloatClassifier& clf) {
    if (f.size() != static_cast<std::size_t>(clf.num_features))
        throw std::invalid_argument("predict: feature length mismatch");
    const auto z = logits(f, clf);
    return static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
}

} // namespace nanohydra

#pragma once

// Small dense feedforward networks trained from scratch: ReLU hidden layers,
// a softmax-pair or sigmoid-scalar head, reverse-mode gradients, Adam, and a
// central-difference gradient checker. Double precision throughout.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "airmia/rfsim.hpp"

namespace airmia::nn {

inline constexpr double kProbFloor = 1e-12;

enum class OutputHead { Softmax2, SigmoidScalar };

std::string to_string(OutputHead head);
OutputHead output_head_from_string(const std::string& s);

// Row-major batch of feature vectors.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
};

struct LayerSlice {
    std::size_t in = 0;
    std::size_t out = 0;
    std::size_t weight_offset = 0;  // out x in, row-major
    std::size_t bias_offset = 0;

    bool operator==(const LayerSlice&) const = default;
};

// All parameters live in one flat vector; layers are views into it.
class DenseNetwork {
public:
    DenseNetwork() = default;
    // Zero-initialized network. Throws InvalidInput on an empty/zero dimension or
    // a head that does not match the output width (2 for Softmax2, 1 for SigmoidScalar).
    DenseNetwork(std::vector<std::size_t> layer_dims, OutputHead head);

    const std::vector<std::size_t>& layer_dims() const noexcept { return dims_; }
    OutputHead head() const noexcept { return head_; }
    std::size_t layer_count() const noexcept { return layers_.size(); }
    const LayerSlice& layer(std::size_t l) const { return layers_.at(l); }
    std::size_t input_dim() const noexcept { return dims_.front(); }
    std::size_t output_dim() const noexcept { return dims_.back(); }
    std::size_t parameter_count() const noexcept { return params_.size(); }

    std::span<double> weights(std::size_t l);
    std::span<const double> weights(std::size_t l) const;
    std::span<double> biases(std::size_t l);
    std::span<const double> biases(std::size_t l) const;

    std::vector<double>& parameters() noexcept { return params_; }
    const std::vector<double>& parameters() const noexcept { return params_; }

    bool operator==(const DenseNetwork&) const = default;

private:
    std::vector<std::size_t> dims_;
    OutputHead head_ = OutputHead::Softmax2;
    std::vector<LayerSlice> layers_;
    std::vector<double> params_;
};

// He-normal weights (variance 2 / fan_in), zero biases; deterministic per seed.
DenseNetwork init_network(std::vector<std::size_t> layer_dims, OutputHead head, std::uint64_t seed);

// Per-layer outputs of a batch pass: acts[0] is the input, acts[l + 1] the
// ReLU output of hidden layer l, and acts.back() the raw logits.
struct BatchActivations {
    std::size_t batch = 0;
    std::vector<std::vector<double>> acts;

    std::span<const double> logits() const { return acts.back(); }
};

BatchActivations forward_batch(const DenseNetwork& net, std::span<const double> inputs, std::size_t batch);

// Applies the head to a batch of logits (softmax per row, or sigmoid).
std::vector<double> apply_head(OutputHead head, std::span<const double> logits, std::size_t batch);

// Single-sample inference: posterior pair or a scalar in (0, 1).
std::vector<double> forward(const DenseNetwork& net, std::span<const double> input);

// Batched inference, rows of head outputs.
Matrix predict(const DenseNetwork& net, const Matrix& inputs);

double cross_entropy_loss(std::span<const double> posterior, int label);

// Loss attached to each head. CrossEntropy pairs with Softmax2; BinaryLog pairs
// with SigmoidScalar and is -log m for label 1 and -log(1 - m) for label 0.
enum class LossKind { CrossEntropy, BinaryLog };

LossKind loss_for(OutputHead head) noexcept;

struct LossTerms {
    double loss = 0.0;                 // sum_i weight_i * loss_i
    std::vector<double> logit_grads;   // d loss / d logits, batch x output_dim
};

// Weighted batch loss and its gradient w.r.t. the logits. Empty weights mean 1 / batch.
LossTerms evaluate_loss(OutputHead head, std::span<const double> logits, std::size_t batch,
                        std::span<const int> labels, std::span<const double> weights = {});

// Gradient of the loss w.r.t. every parameter, in parameters() layout, given
// the gradient w.r.t. the output logits. ReLU'(0) is taken as 0.
std::vector<double> backward(const DenseNetwork& net, const BatchActivations& acts,
                             std::span<const double> logit_grads);
std::vector<double> backward(const DenseNetwork& net, std::span<const double> inputs, std::size_t batch,
                             std::span<const double> logit_grads);

struct AdamState {
    std::vector<double> first_moment;
    std::vector<double> second_moment;
    std::uint64_t step_count = 0;
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

AdamState make_adam(const DenseNetwork& net, double learning_rate = 1e-3);

// One bias-corrected Adam update in place.
void adam_step(DenseNetwork& net, std::span<const double> gradients, AdamState& state);

struct TrainHyper {
    std::size_t epochs = 100;
    std::size_t batch_size = 64;
    double learning_rate = 1e-3;
    std::uint64_t seed = 0;
    bool shuffle = true;
};

void validate(const TrainHyper& hyper);

// Called after each epoch with the epoch index and the current network.
using EpochCallback = std::function<void(std::size_t, const DenseNetwork&)>;

// Mini-batch Adam on a weighted loss. `sample_weights` are scaled so that a
// batch gradient is an unbiased estimate of the full weighted objective
// (sum_i w_i * loss_i). Returns the per-epoch objective averaged over batches.
std::vector<double> train_weighted(DenseNetwork& net, const Matrix& inputs, std::span<const int> labels,
                                   std::span<const double> sample_weights, const TrainHyper& hyper,
                                   const EpochCallback& on_epoch = {});

// Mini-batch Adam on mean cross-entropy; returns the per-epoch mean loss.
std::vector<double> train_supervised(DenseNetwork& net, const Matrix& inputs, std::span<const int> labels,
                                     const TrainHyper& hyper);

// Max relative error |a - n| / max(|a|, |n|, 1e-8) between backward() and
// central differences of the mean batch loss of the head's loss.
double grad_check(const DenseNetwork& net, LossKind loss, std::span<const double> inputs, std::size_t batch,
                  std::span<const int> labels, double epsilon = 1e-5);

// --- Model documents ----------------------------------------------------

inline constexpr int kModelFormatVersion = 1;

struct ModelDocument {
    DenseNetwork network;
    rfsim::FeatureScaling scaling;
};

// {version, layer_dims, output_head, weights, biases, scaling}; weights are
// row-major per layer. Doubles round-trip exactly.
std::string model_to_json(const DenseNetwork& net, const rfsim::FeatureScaling& scaling);

// Throws LoadError (naming `origin`) on malformed input or an unknown version.
ModelDocument model_from_json(const std::string& text, const std::string& origin = "<model>");

}  // namespace airmia::nn

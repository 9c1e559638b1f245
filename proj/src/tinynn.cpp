#include "airmia/tinynn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "airmia/error.hpp"
#include "airmia/kernels.hpp"

namespace airmia::nn {

std::string to_string(OutputHead head)
{
    return head == OutputHead::Softmax2 ? "softmax2" : "sigmoid";
}

OutputHead output_head_from_string(const std::string& s)
{
    if (s == "softmax2") return OutputHead::Softmax2;
    if (s == "sigmoid") return OutputHead::SigmoidScalar;
    throw InvalidInput("unknown output head '" + s + "'");
}

DenseNetwork::DenseNetwork(std::vector<std::size_t> layer_dims, OutputHead head)
    : dims_(std::move(layer_dims)), head_(head)
{
    if (dims_.size() < 2) throw InvalidInput("network needs at least an input and an output width");
    if (std::find(dims_.begin(), dims_.end(), 0u) != dims_.end()) {
        throw InvalidInput("layer widths must be positive");
    }
    const std::size_t want = head == OutputHead::Softmax2 ? 2 : 1;
    if (dims_.back() != want) {
        throw InvalidInput("output width " + std::to_string(dims_.back()) + " does not match head " +
                           to_string(head));
    }
    std::size_t offset = 0;
    for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
        LayerSlice s{dims_[l], dims_[l + 1], offset, offset + dims_[l] * dims_[l + 1]};
        offset = s.bias_offset + s.out;
        layers_.push_back(s);
    }
    params_.assign(offset, 0.0);
}

std::span<double> DenseNetwork::weights(std::size_t l)
{
    const auto& s = layers_.at(l);
    return {params_.data() + s.weight_offset, s.in * s.out};
}

std::span<const double> DenseNetwork::weights(std::size_t l) const
{
    const auto& s = layers_.at(l);
    return {params_.data() + s.weight_offset, s.in * s.out};
}

std::span<double> DenseNetwork::biases(std::size_t l)
{
    const auto& s = layers_.at(l);
    return {params_.data() + s.bias_offset, s.out};
}

std::span<const double> DenseNetwork::biases(std::size_t l) const
{
    const auto& s = layers_.at(l);
    return {params_.data() + s.bias_offset, s.out};
}

namespace {

// Box-Muller on the portable uniform draw.
double standard_normal(Engine& rng)
{
    double u1 = uniform(rng, 0.0, 1.0);
    while (u1 <= 0.0) u1 = uniform(rng, 0.0, 1.0);
    const double u2 = uniform(rng, 0.0, 1.0);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sigmoid(double z)
{
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

void check_inputs(const DenseNetwork& net, std::span<const double> inputs, std::size_t batch)
{
    if (inputs.size() != batch * net.input_dim()) {
        throw InvalidInput("expected " + std::to_string(batch) + " x " + std::to_string(net.input_dim()) +
                           " inputs, got " + std::to_string(inputs.size()) + " values");
    }
}

}  // namespace

DenseNetwork init_network(std::vector<std::size_t> layer_dims, OutputHead head, std::uint64_t seed)
{
    DenseNetwork net(std::move(layer_dims), head);
    Engine rng = substream(seed, "init-network");
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
        const double stddev = std::sqrt(2.0 / static_cast<double>(net.layer(l).in));
        for (double& w : net.weights(l)) w = stddev * standard_normal(rng);
    }
    return net;
}

BatchActivations forward_batch(const DenseNetwork& net, std::span<const double> inputs, std::size_t batch)
{
    check_inputs(net, inputs, batch);
    BatchActivations a;
    a.batch = batch;
    a.acts.reserve(net.layer_count() + 1);
    a.acts.emplace_back(inputs.begin(), inputs.end());
    for (std::size_t l = 0; l < net.layer_count(); ++l) {
        const auto& s = net.layer(l);
        std::vector<double> z(batch * s.out);
        kernels::dense_forward({batch, s.in, s.out}, a.acts.back(), net.weights(l), net.biases(l), z);
        if (l + 1 < net.layer_count()) {
            for (double& v : z) v = v > 0.0 ? v : 0.0;
        }
        a.acts.push_back(std::move(z));
    }
    return a;
}

std::vector<double> apply_head(OutputHead head, std::span<const double> logits, std::size_t batch)
{
    std::vector<double> out(logits.size());
    if (head == OutputHead::SigmoidScalar) {
        // Keep the result strictly inside (0, 1) even when exp saturates.
        constexpr double lo = std::numeric_limits<double>::min();
        const double hi = std::nextafter(1.0, 0.0);
        for (std::size_t i = 0; i < logits.size(); ++i) out[i] = std::clamp(sigmoid(logits[i]), lo, hi);
        return out;
    }
    for (std::size_t b = 0; b < batch; ++b) {
        const double z0 = logits[2 * b];
        const double z1 = logits[2 * b + 1];
        // softmax of two logits is a sigmoid of their difference
        const double p1 = sigmoid(z1 - z0);
        out[2 * b] = 1.0 - p1;
        out[2 * b + 1] = p1;
    }
    return out;
}

std::vector<double> forward(const DenseNetwork& net, std::span<const double> input)
{
    const auto a = forward_batch(net, input, 1);
    return apply_head(net.head(), a.logits(), 1);
}

Matrix predict(const DenseNetwork& net, const Matrix& inputs)
{
    if (inputs.cols != net.input_dim()) throw InvalidInput("predict: feature width does not match network input");
    Matrix out(inputs.rows, net.output_dim());
    constexpr std::size_t chunk = 256;
    for (std::size_t start = 0; start < inputs.rows; start += chunk) {
        const std::size_t n = std::min(chunk, inputs.rows - start);
        const std::span<const double> block(inputs.data.data() + start * inputs.cols, n * inputs.cols);
        const auto a = forward_batch(net, block, n);
        const auto h = apply_head(net.head(), a.logits(), n);
        std::copy(h.begin(), h.end(), out.data.begin() + static_cast<std::ptrdiff_t>(start * out.cols));
    }
    return out;
}

double cross_entropy_loss(std::span<const double> posterior, int label)
{
    if (label < 0 || static_cast<std::size_t>(label) >= posterior.size()) {
        throw InvalidInput("cross_entropy_loss: label out of range");
    }
    return -std::log(std::max(posterior[static_cast<std::size_t>(label)], kProbFloor));
}

LossKind loss_for(OutputHead head) noexcept
{
    return head == OutputHead::Softmax2 ? LossKind::CrossEntropy : LossKind::BinaryLog;
}

LossTerms evaluate_loss(OutputHead head, std::span<const double> logits, std::size_t batch,
                        std::span<const int> labels, std::span<const double> weights)
{
    const std::size_t width = head == OutputHead::Softmax2 ? 2 : 1;
    if (logits.size() != batch * width || labels.size() != batch) {
        throw InvalidInput("evaluate_loss: shape mismatch");
    }
    if (!weights.empty() && weights.size() != batch) throw InvalidInput("evaluate_loss: weight count mismatch");

    const auto probs = apply_head(head, logits, batch);
    LossTerms t;
    t.logit_grads.assign(logits.size(), 0.0);
    for (std::size_t b = 0; b < batch; ++b) {
        const int y = labels[b];
        if (y != 0 && y != 1) throw InvalidInput("evaluate_loss: labels must be 0 or 1");
        const double w = weights.empty() ? 1.0 / static_cast<double>(batch) : weights[b];
        if (head == OutputHead::Softmax2) {
            t.loss += w * cross_entropy_loss({probs.data() + 2 * b, 2}, y);
            t.logit_grads[2 * b] = w * (probs[2 * b] - (y == 0 ? 1.0 : 0.0));
            t.logit_grads[2 * b + 1] = w * (probs[2 * b + 1] - (y == 1 ? 1.0 : 0.0));
        } else {
            const double m = probs[b];
            t.loss += w * -std::log(std::max(y == 1 ? m : 1.0 - m, kProbFloor));
            t.logit_grads[b] = w * (m - static_cast<double>(y));
        }
    }
    return t;
}

std::vector<double> backward(const DenseNetwork& net, const BatchActivations& acts,
                             std::span<const double> logit_grads)
{
    const std::size_t batch = acts.batch;
    if (acts.acts.size() != net.layer_count() + 1 || logit_grads.size() != batch * net.output_dim()) {
        throw InvalidInput("backward: activations or loss gradients do not match the network");
    }
    std::vector<double> grads(net.parameter_count(), 0.0);
    std::vector<double> delta(logit_grads.begin(), logit_grads.end());
    std::vector<double> next;
    for (std::size_t l = net.layer_count(); l-- > 0;) {
        const auto& s = net.layer(l);
        const kernels::DenseShape shape{batch, s.in, s.out};
        kernels::dense_backward_params(shape, delta, acts.acts[l],
                                       {grads.data() + s.weight_offset, s.in * s.out},
                                       {grads.data() + s.bias_offset, s.out});
        if (l == 0) break;
        next.assign(batch * s.in, 0.0);
        kernels::dense_backward_input(shape, delta, net.weights(l), next);
        const auto& below = acts.acts[l];
        for (std::size_t i = 0; i < next.size(); ++i) {
            if (!(below[i] > 0.0)) next[i] = 0.0;
        }
        delta.swap(next);
    }
    return grads;
}

std::vector<double> backward(const DenseNetwork& net, std::span<const double> inputs, std::size_t batch,
                             std::span<const double> logit_grads)
{
    return backward(net, forward_batch(net, inputs, batch), logit_grads);
}

AdamState make_adam(const DenseNetwork& net, double learning_rate)
{
    AdamState s;
    s.first_moment.assign(net.parameter_count(), 0.0);
    s.second_moment.assign(net.parameter_count(), 0.0);
    s.learning_rate = learning_rate;
    return s;
}

void adam_step(DenseNetwork& net, std::span<const double> gradients, AdamState& state)
{
    auto& theta = net.parameters();
    if (gradients.size() != theta.size() || state.first_moment.size() != theta.size() ||
        state.second_moment.size() != theta.size()) {
        throw InvalidInput("adam_step: gradient or moment shapes do not match the network");
    }
    ++state.step_count;
    const double t = static_cast<double>(state.step_count);
    const double c1 = 1.0 - std::pow(state.beta1, t);
    const double c2 = 1.0 - std::pow(state.beta2, t);
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double g = gradients[i];
        double& m = state.first_moment[i];
        double& v = state.second_moment[i];
        m = state.beta1 * m + (1.0 - state.beta1) * g;
        v = state.beta2 * v + (1.0 - state.beta2) * g * g;
        theta[i] -= state.learning_rate * (m / c1) / (std::sqrt(v / c2) + state.epsilon);
    }
}

void validate(const TrainHyper& hyper)
{
    if (hyper.epochs == 0 || hyper.batch_size == 0 || !(hyper.learning_rate > 0.0)) {
        throw InvalidConfig("training hyperparameters must be positive");
    }
}

std::vector<double> train_weighted(DenseNetwork& net, const Matrix& inputs, std::span<const int> labels,
                                   std::span<const double> sample_weights, const TrainHyper& hyper,
                                   const EpochCallback& on_epoch)
{
    validate(hyper);
    const std::size_t n = inputs.rows;
    if (n == 0) throw InvalidInput("training set is empty");
    if (inputs.cols != net.input_dim()) throw InvalidInput("training features do not match network input");
    if (labels.size() != n || sample_weights.size() != n) throw InvalidInput("label/weight count mismatch");

    AdamState adam = make_adam(net, hyper.learning_rate);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> batch_x;
    std::vector<int> batch_y;
    std::vector<double> batch_w;
    std::vector<double> history;
    history.reserve(hyper.epochs);

    for (std::size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
        if (hyper.shuffle) {
            Engine rng = substream(hyper.seed, "epoch-order", epoch);
            shuffle_in_place(order, rng);
        }
        double epoch_loss = 0.0;
        std::size_t batches = 0;
        for (std::size_t start = 0; start < n; start += hyper.batch_size) {
            const std::size_t b = std::min(hyper.batch_size, n - start);
            const double scale = static_cast<double>(n) / static_cast<double>(b);
            batch_x.resize(b * inputs.cols);
            batch_y.resize(b);
            batch_w.resize(b);
            for (std::size_t i = 0; i < b; ++i) {
                const std::size_t src = order[start + i];
                const auto row = inputs.row(src);
                std::copy(row.begin(), row.end(), batch_x.begin() + static_cast<std::ptrdiff_t>(i * inputs.cols));
                batch_y[i] = labels[src];
                batch_w[i] = sample_weights[src] * scale;
            }
            const auto acts = forward_batch(net, batch_x, b);
            const auto terms = evaluate_loss(net.head(), acts.logits(), b, batch_y, batch_w);
            const auto grads = backward(net, acts, terms.logit_grads);
            adam_step(net, grads, adam);
            epoch_loss += terms.loss;
            ++batches;
        }
        history.push_back(epoch_loss / static_cast<double>(batches));
        if (on_epoch) on_epoch(epoch, net);
    }
    return history;
}

std::vector<double> train_supervised(DenseNetwork& net, const Matrix& inputs, std::span<const int> labels,
                                     const TrainHyper& hyper)
{
    if (inputs.rows == 0) throw InvalidInput("training set is empty");
    const std::vector<double> weights(inputs.rows, 1.0 / static_cast<double>(inputs.rows));
    return train_weighted(net, inputs, labels, weights, hyper);
}

double grad_check(const DenseNetwork& net, LossKind loss, std::span<const double> inputs, std::size_t batch,
                  std::span<const int> labels, double epsilon)
{
    if (loss != loss_for(net.head())) throw InvalidInput("grad_check: loss does not match the network head");
    if (!(epsilon > 0.0)) throw InvalidInput("grad_check: epsilon must be positive");

    const auto acts = forward_batch(net, inputs, batch);
    const auto terms = evaluate_loss(net.head(), acts.logits(), batch, labels);
    const auto analytic = backward(net, acts, terms.logit_grads);

    auto loss_at = [&](const DenseNetwork& probe) {
        const auto a = forward_batch(probe, inputs, batch);
        return evaluate_loss(probe.head(), a.logits(), batch, labels).loss;
    };

    DenseNetwork probe = net;
    double worst = 0.0;
    for (std::size_t i = 0; i < probe.parameter_count(); ++i) {
        const double saved = probe.parameters()[i];
        probe.parameters()[i] = saved + epsilon;
        const double up = loss_at(probe);
        probe.parameters()[i] = saved - epsilon;
        const double down = loss_at(probe);
        probe.parameters()[i] = saved;
        const double numeric = (up - down) / (2.0 * epsilon);
        const double denom = std::max({std::abs(analytic[i]), std::abs(numeric), 1e-8});
        worst = std::max(worst, std::abs(analytic[i] - numeric) / denom);
    }
    return worst;
}

}  // namespace airmia::nn

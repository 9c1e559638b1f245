#pragma once

// Black-box membership inference through the surrogate classifier.
//
// The inference model m(X, Y) sees the scaled features of an adversary-side
// sample together with the surrogate's posterior for it and outputs the
// probability that the matching provider-side signal was in C's training set.
// It is fit by maximizing the empirical gain
//
//   G(m) = 1/2 * mean_{members} log m + 1/2 * mean_{nonmembers} log(1 - m)
//
// which is at most 0 and equals ln 0.5 for the constant model m = 0.5.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "airmia/rfsim.hpp"
#include "airmia/tinynn.hpp"

namespace airmia::mia {

inline constexpr std::size_t kInputDim = rfsim::kFeatureCount + 2;
inline const std::vector<std::size_t> kMiaDims = {kInputDim, 100, 100, 1};

struct MiaModel {
    nn::DenseNetwork network;
    double decision_threshold = 0.5;
    rfsim::FeatureScaling scaling;
};

// Zero-weight model with the standard architecture (outputs 0.5 everywhere).
MiaModel make_untrained_model();

// Scaled features followed by the surrogate's full posterior.
std::array<double, kInputDim> mia_input(const rfsim::SignalSample& sample, const nn::DenseNetwork& surrogate,
                                        const rfsim::FeatureScaling& scaling = {});

nn::Matrix mia_inputs(const std::vector<rfsim::SignalSample>& samples, const nn::DenseNetwork& surrogate,
                      const rfsim::FeatureScaling& scaling = {});

// Gain from model outputs; inputs to the logs are floored at 1e-12.
// Throws InvalidInput if either side is empty.
double empirical_gain(std::span<const double> member_probs, std::span<const double> nonmember_probs);

double empirical_gain(const MiaModel& model, const nn::DenseNetwork& surrogate,
                      const std::vector<rfsim::SignalSample>& members,
                      const std::vector<rfsim::SignalSample>& nonmembers);

// Members/nonmembers plus a disjoint train/test partition of each.
struct MembershipDataset {
    std::vector<rfsim::SignalSample> members;
    std::vector<rfsim::SignalSample> nonmembers;
    std::vector<std::size_t> member_train;
    std::vector<std::size_t> member_test;
    std::vector<std::size_t> nonmember_train;
    std::vector<std::size_t> nonmember_test;

    std::vector<rfsim::SignalSample> members_in(std::span<const std::size_t> idx) const;
    std::vector<rfsim::SignalSample> nonmembers_in(std::span<const std::size_t> idx) const;
};

// Random 50/50 split of each side. Throws InvalidConfig if a side has fewer
// than two samples or the sets share a sample_id.
MembershipDataset split_membership(std::vector<rfsim::SignalSample> members,
                                   std::vector<rfsim::SignalSample> nonmembers, std::uint64_t seed);

// Checks disjointness and that both partitions of both sides are non-empty,
// disjoint and exhaustive. Throws InvalidConfig.
void validate(const MembershipDataset& data);

struct MiaTraining {
    MiaModel model;
    std::vector<double> train_gain;  // per epoch, train partition
    std::vector<double> test_gain;   // per epoch, test partition
};

struct MiaHyper {
    std::size_t epochs = 200;
    std::size_t batch_size = 64;
    double learning_rate = 1e-3;
    std::uint64_t seed = 0;
};

// Adam descent on -G over the train partition only.
MiaTraining train_mia(const nn::DenseNetwork& surrogate, const MembershipDataset& data, const MiaHyper& hyper,
                      const rfsim::FeatureScaling& scaling = {});

struct MembershipCall {
    double probability = 0.5;
    bool member = false;  // probability > threshold; an exact tie is a non-member
};

MembershipCall infer_membership(const MiaModel& model, const nn::DenseNetwork& surrogate,
                                const rfsim::SignalSample& sample);

// Rows: true non-member, true member. Columns: predicted non-member, member.
struct ConfusionMatrix {
    std::array<std::array<std::uint64_t, 2>, 2> counts{};
    std::array<std::array<double, 2>, 2> rates{};

    double accuracy() const noexcept;
    double member_recall() const noexcept { return rates[1][1]; }
    double nonmember_recall() const noexcept { return rates[0][0]; }
};

ConfusionMatrix confusion_from_counts(const std::array<std::array<std::uint64_t, 2>, 2>& counts);

// Mean of the diagonal of a row-normalized matrix.
double balanced_accuracy(const std::array<std::array<double, 2>, 2>& rates) noexcept;

ConfusionMatrix evaluate_mia(const MiaModel& model, const nn::DenseNetwork& surrogate,
                             const std::vector<rfsim::SignalSample>& members_test,
                             const std::vector<rfsim::SignalSample>& nonmembers_test);

// 2x2 CSV in the printed table layout (rows: real non-member / member).
std::string confusion_to_csv(const ConfusionMatrix& cm);

// Plain-text table for terminals.
std::string confusion_to_table(const ConfusionMatrix& cm);

// --- Likelihood-ratio baseline --------------------------------------------

using Density = std::function<double(std::span<const double>)>;

struct NaiveCall {
    bool member = false;
    double confidence = 0.5;
};

// member iff P_train(x) > P_general(x); confidence = P_train / (P_train + P_general).
// Throws InvalidInput when both densities vanish or either is negative.
NaiveCall naive_likelihood_mia(const Density& train_density, const Density& general_density,
                               std::span<const double> x);

}  // namespace airmia::mia

#pragma once

// The provider's target classifier C and the adversary's surrogate.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "airmia/rfsim.hpp"
#include "airmia/tinynn.hpp"

namespace airmia::classify {

// Both classifiers share this architecture; only parameters differ.
inline const std::vector<std::size_t> kClassifierDims = {rfsim::kFeatureCount, 100, 100, 100, 2};

struct ClassifierReport {
    std::string role;  // "target" or "surrogate"
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
    std::vector<double> loss_history;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    std::uint64_t seed = 0;
};

struct TrainedClassifier {
    nn::DenseNetwork network;
    ClassifierReport report;
};

nn::Matrix feature_matrix(const std::vector<rfsim::SignalSample>& samples,
                          const rfsim::FeatureScaling& scaling = {});
std::vector<int> labels_of(const std::vector<rfsim::SignalSample>& samples);

// Posterior pair for one sample.
std::array<double, 2> predict_posterior(const nn::DenseNetwork& net, const rfsim::SignalSample& sample,
                                        const rfsim::FeatureScaling& scaling = {});

// argmax with exact ties resolved to class 0.
int predicted_label(const std::array<double, 2>& posterior) noexcept;

std::vector<int> predict_labels(const nn::DenseNetwork& net, const std::vector<rfsim::SignalSample>& samples,
                                const rfsim::FeatureScaling& scaling = {});

// Fraction of samples whose predicted label equals class_label.
double classification_accuracy(const nn::DenseNetwork& net, const std::vector<rfsim::SignalSample>& dataset,
                               const rfsim::FeatureScaling& scaling = {});

// Class-1 share must lie within [0.45, 0.55]; throws InvalidConfig otherwise.
void require_balanced(const std::vector<rfsim::SignalSample>& dataset);

TrainedClassifier train_target(const std::vector<rfsim::SignalSample>& provider_train,
                               const std::vector<rfsim::SignalSample>& provider_test, const nn::TrainHyper& hyper,
                               const rfsim::FeatureScaling& scaling = {});

// `surrogate_train` carries the labels the adversary observed (access granted or not).
TrainedClassifier train_surrogate(const std::vector<rfsim::SignalSample>& surrogate_train,
                                  const std::vector<rfsim::SignalSample>& adversary_test,
                                  const nn::TrainHyper& hyper, const rfsim::FeatureScaling& scaling = {});

// Adversary views labeled with C's decision on the matching provider view.
std::vector<rfsim::SignalSample> label_by_observed_access(const nn::DenseNetwork& target,
                                                          const std::vector<rfsim::PairedObservation>& pairs,
                                                          const rfsim::FeatureScaling& scaling = {});

// Share of pairs where C (provider view) and the surrogate (adversary view) agree.
double paired_agreement(const nn::DenseNetwork& target, const nn::DenseNetwork& surrogate,
                        const std::vector<rfsim::PairedObservation>& pairs,
                        const rfsim::FeatureScaling& scaling = {});

// {role, train_accuracy, test_accuracy, loss_history, train_size, test_size, seed}
std::string report_to_json(const ClassifierReport& report);
ClassifierReport report_from_json(const std::string& text, const std::string& origin = "<report>");

}  // namespace airmia::classify

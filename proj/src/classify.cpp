#include "airmia/classify.hpp"

#include <algorithm>

#include "airmia/error.hpp"
#include "airmia/json_io.hpp"

namespace airmia::classify {

using rfsim::SignalSample;

nn::Matrix feature_matrix(const std::vector<SignalSample>& samples, const rfsim::FeatureScaling& scaling)
{
    nn::Matrix m(samples.size(), rfsim::kFeatureCount);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto f = rfsim::scaled_features(samples[i], scaling);
        std::copy(f.begin(), f.end(), m.row(i).begin());
    }
    return m;
}

std::vector<int> labels_of(const std::vector<SignalSample>& samples)
{
    std::vector<int> y;
    y.reserve(samples.size());
    for (const auto& s : samples) y.push_back(s.class_label);
    return y;
}

std::array<double, 2> predict_posterior(const nn::DenseNetwork& net, const SignalSample& sample,
                                        const rfsim::FeatureScaling& scaling)
{
    if (net.head() != nn::OutputHead::Softmax2) throw InvalidInput("classifier must have a softmax head");
    const auto f = rfsim::scaled_features(sample, scaling);
    const auto p = nn::forward(net, f);
    return {p[0], p[1]};
}

int predicted_label(const std::array<double, 2>& posterior) noexcept
{
    return posterior[1] > posterior[0] ? 1 : 0;
}

std::vector<int> predict_labels(const nn::DenseNetwork& net, const std::vector<SignalSample>& samples,
                                const rfsim::FeatureScaling& scaling)
{
    const auto probs = nn::predict(net, feature_matrix(samples, scaling));
    std::vector<int> out(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        out[i] = predicted_label({probs.row(i)[0], probs.row(i)[1]});
    }
    return out;
}

double classification_accuracy(const nn::DenseNetwork& net, const std::vector<SignalSample>& dataset,
                               const rfsim::FeatureScaling& scaling)
{
    if (dataset.empty()) throw InvalidInput("classification_accuracy: empty dataset");
    const auto pred = predict_labels(net, dataset, scaling);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < dataset.size(); ++i) correct += pred[i] == dataset[i].class_label;
    return static_cast<double>(correct) / static_cast<double>(dataset.size());
}

void require_balanced(const std::vector<SignalSample>& dataset)
{
    if (dataset.empty()) throw InvalidConfig("training set is empty");
    const auto ones = std::count_if(dataset.begin(), dataset.end(), [](const auto& s) { return s.class_label == 1; });
    const double share = static_cast<double>(ones) / static_cast<double>(dataset.size());
    if (share < 0.45 || share > 0.55) {
        throw InvalidConfig("class-1 share " + std::to_string(share) + " outside [0.45, 0.55]");
    }
}

namespace {

TrainedClassifier train_role(const std::string& role, const std::vector<SignalSample>& train,
                             const std::vector<SignalSample>& test, const nn::TrainHyper& hyper,
                             const rfsim::FeatureScaling& scaling)
{
    require_balanced(train);
    nn::validate(hyper);
    TrainedClassifier out;
    out.network = nn::init_network(kClassifierDims, nn::OutputHead::Softmax2, hyper.seed);
    const auto x = feature_matrix(train, scaling);
    const auto y = labels_of(train);
    out.report.role = role;
    out.report.loss_history = nn::train_supervised(out.network, x, y, hyper);
    out.report.train_accuracy = classification_accuracy(out.network, train, scaling);
    out.report.test_accuracy = test.empty() ? 0.0 : classification_accuracy(out.network, test, scaling);
    out.report.train_size = train.size();
    out.report.test_size = test.size();
    out.report.seed = hyper.seed;
    return out;
}

}  // namespace

TrainedClassifier train_target(const std::vector<SignalSample>& provider_train,
                               const std::vector<SignalSample>& provider_test, const nn::TrainHyper& hyper,
                               const rfsim::FeatureScaling& scaling)
{
    return train_role("target", provider_train, provider_test, hyper, scaling);
}

TrainedClassifier train_surrogate(const std::vector<SignalSample>& surrogate_train,
                                  const std::vector<SignalSample>& adversary_test, const nn::TrainHyper& hyper,
                                  const rfsim::FeatureScaling& scaling)
{
    return train_role("surrogate", surrogate_train, adversary_test, hyper, scaling);
}

std::vector<SignalSample> label_by_observed_access(const nn::DenseNetwork& target,
                                                   const std::vector<rfsim::PairedObservation>& pairs,
                                                   const rfsim::FeatureScaling& scaling)
{
    std::vector<SignalSample> provider;
    provider.reserve(pairs.size());
    for (const auto& p : pairs) provider.push_back(p.provider_view);
    const auto decisions = predict_labels(target, provider, scaling);
    std::vector<SignalSample> out;
    out.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        SignalSample s = pairs[i].adversary_view;
        s.class_label = decisions[i];
        out.push_back(s);
    }
    return out;
}

double paired_agreement(const nn::DenseNetwork& target, const nn::DenseNetwork& surrogate,
                        const std::vector<rfsim::PairedObservation>& pairs, const rfsim::FeatureScaling& scaling)
{
    if (pairs.empty()) throw InvalidInput("paired_agreement: no pairs");
    std::vector<SignalSample> provider, adversary;
    for (const auto& p : pairs) {
        provider.push_back(p.provider_view);
        adversary.push_back(p.adversary_view);
    }
    const auto a = predict_labels(target, provider, scaling);
    const auto b = predict_labels(surrogate, adversary, scaling);
    std::size_t same = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) same += a[i] == b[i];
    return static_cast<double>(same) / static_cast<double>(pairs.size());
}

std::string report_to_json(const ClassifierReport& report)
{
    return nlohmann::json(report).dump(1) + "\n";
}

ClassifierReport report_from_json(const std::string& text, const std::string& origin)
{
    try {
        return nlohmann::json::parse(text).get<ClassifierReport>();
    } catch (const std::exception& e) {
        throw LoadError(origin, std::string("malformed classifier report: ") + e.what());
    }
}

}  // namespace airmia::classify

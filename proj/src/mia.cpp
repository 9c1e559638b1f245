#include "airmia/mia.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include "airmia/classify.hpp"
#include "airmia/error.hpp"

namespace airmia::mia {

using rfsim::SignalSample;

MiaModel make_untrained_model()
{
    return MiaModel{nn::DenseNetwork(kMiaDims, nn::OutputHead::SigmoidScalar), 0.5, {}};
}

std::array<double, kInputDim> mia_input(const SignalSample& sample, const nn::DenseNetwork& surrogate,
                                        const rfsim::FeatureScaling& scaling)
{
    std::array<double, kInputDim> out{};
    const auto f = rfsim::scaled_features(sample, scaling);
    std::copy(f.begin(), f.end(), out.begin());
    const auto post = classify::predict_posterior(surrogate, sample, scaling);
    out[rfsim::kFeatureCount] = post[0];
    out[rfsim::kFeatureCount + 1] = post[1];
    return out;
}

nn::Matrix mia_inputs(const std::vector<SignalSample>& samples, const nn::DenseNetwork& surrogate,
                      const rfsim::FeatureScaling& scaling)
{
    const auto features = classify::feature_matrix(samples, scaling);
    const auto post = nn::predict(surrogate, features);
    nn::Matrix out(samples.size(), kInputDim);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        auto row = out.row(i);
        const auto f = features.row(i);
        std::copy(f.begin(), f.end(), row.begin());
        row[rfsim::kFeatureCount] = post.row(i)[0];
        row[rfsim::kFeatureCount + 1] = post.row(i)[1];
    }
    return out;
}

double empirical_gain(std::span<const double> member_probs, std::span<const double> nonmember_probs)
{
    if (member_probs.empty() || nonmember_probs.empty()) {
        throw InvalidInput("empirical_gain: member and nonmember sets must be non-empty");
    }
    double in = 0.0;
    for (double m : member_probs) in += std::log(std::max(m, nn::kProbFloor));
    double out = 0.0;
    for (double m : nonmember_probs) out += std::log(std::max(1.0 - m, nn::kProbFloor));
    return 0.5 * in / static_cast<double>(member_probs.size()) +
           0.5 * out / static_cast<double>(nonmember_probs.size());
}

namespace {

std::vector<double> model_probs(const MiaModel& model, const nn::DenseNetwork& surrogate,
                                const std::vector<SignalSample>& samples)
{
    const auto out = nn::predict(model.network, mia_inputs(samples, surrogate, model.scaling));
    return out.data;
}

std::vector<double> probs_of(const nn::DenseNetwork& net, const nn::Matrix& inputs)
{
    return nn::predict(net, inputs).data;
}

}  // namespace

double empirical_gain(const MiaModel& model, const nn::DenseNetwork& surrogate,
                      const std::vector<SignalSample>& members, const std::vector<SignalSample>& nonmembers)
{
    if (members.empty() || nonmembers.empty()) {
        throw InvalidInput("empirical_gain: member and nonmember sets must be non-empty");
    }
    return empirical_gain(model_probs(model, surrogate, members), model_probs(model, surrogate, nonmembers));
}

std::vector<SignalSample> MembershipDataset::members_in(std::span<const std::size_t> idx) const
{
    std::vector<SignalSample> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(members.at(i));
    return out;
}

std::vector<SignalSample> MembershipDataset::nonmembers_in(std::span<const std::size_t> idx) const
{
    std::vector<SignalSample> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(nonmembers.at(i));
    return out;
}

namespace {

void check_partition(std::span<const std::size_t> a, std::span<const std::size_t> b, std::size_t n,
                     const char* side)
{
    if (a.empty() || b.empty()) throw InvalidConfig(std::string(side) + ": empty train or test partition");
    std::vector<bool> seen(n, false);
    for (auto parts : {a, b}) {
        for (auto i : parts) {
            if (i >= n || seen[i]) throw InvalidConfig(std::string(side) + ": partitions overlap or out of range");
            seen[i] = true;
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw InvalidConfig(std::string(side) + ": partitions do not cover the set");
    }
}

}  // namespace

void validate(const MembershipDataset& data)
{
    std::set<std::uint64_t> ids;
    for (const auto& s : data.members) ids.insert(s.sample_id);
    for (const auto& s : data.nonmembers) {
        if (ids.count(s.sample_id)) throw InvalidConfig("member and nonmember sets share a sample");
    }
    check_partition(data.member_train, data.member_test, data.members.size(), "members");
    check_partition(data.nonmember_train, data.nonmember_test, data.nonmembers.size(), "nonmembers");
}

MembershipDataset split_membership(std::vector<SignalSample> members, std::vector<SignalSample> nonmembers,
                                   std::uint64_t seed)
{
    if (members.size() < 2 || nonmembers.size() < 2) {
        throw InvalidConfig("membership split needs at least two members and two nonmembers");
    }
    MembershipDataset d;
    d.members = std::move(members);
    d.nonmembers = std::move(nonmembers);
    auto halves = [seed](std::size_t n, const char* tag, std::vector<std::size_t>& train,
                         std::vector<std::size_t>& test) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        Engine rng = substream(seed, tag);
        shuffle_in_place(order, rng);
        train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n / 2));
        test.assign(order.begin() + static_cast<std::ptrdiff_t>(n / 2), order.end());
        std::sort(train.begin(), train.end());
        std::sort(test.begin(), test.end());
    };
    halves(d.members.size(), "mia-split-members", d.member_train, d.member_test);
    halves(d.nonmembers.size(), "mia-split-nonmembers", d.nonmember_train, d.nonmember_test);
    validate(d);
    return d;
}

MiaTraining train_mia(const nn::DenseNetwork& surrogate, const MembershipDataset& data, const MiaHyper& hyper,
                      const rfsim::FeatureScaling& scaling)
{
    validate(data);
    const auto mem_train = data.members_in(data.member_train);
    const auto non_train = data.nonmembers_in(data.nonmember_train);
    const auto mem_test = data.members_in(data.member_test);
    const auto non_test = data.nonmembers_in(data.nonmember_test);

    std::vector<SignalSample> train = mem_train;
    train.insert(train.end(), non_train.begin(), non_train.end());
    const auto x = mia_inputs(train, surrogate, scaling);
    std::vector<int> y(train.size(), 0);
    std::vector<double> w(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
        const bool is_member = i < mem_train.size();
        y[i] = is_member ? 1 : 0;
        // -G as a weighted sum of per-sample log losses.
        w[i] = 0.5 / static_cast<double>(is_member ? mem_train.size() : non_train.size());
    }

    const auto x_mem_train = mia_inputs(mem_train, surrogate, scaling);
    const auto x_non_train = mia_inputs(non_train, surrogate, scaling);
    const auto x_mem_test = mia_inputs(mem_test, surrogate, scaling);
    const auto x_non_test = mia_inputs(non_test, surrogate, scaling);

    MiaTraining out;
    out.model.scaling = scaling;
    out.model.network = nn::init_network(kMiaDims, nn::OutputHead::SigmoidScalar, hyper.seed);
    const nn::TrainHyper th{hyper.epochs, hyper.batch_size, hyper.learning_rate, hyper.seed, true};
    nn::train_weighted(out.model.network, x, y, w, th, [&](std::size_t, const nn::DenseNetwork& net) {
        out.train_gain.push_back(empirical_gain(probs_of(net, x_mem_train), probs_of(net, x_non_train)));
        out.test_gain.push_back(empirical_gain(probs_of(net, x_mem_test), probs_of(net, x_non_test)));
    });
    return out;
}

MembershipCall infer_membership(const MiaModel& model, const nn::DenseNetwork& surrogate,
                                const SignalSample& sample)
{
    const auto in = mia_input(sample, surrogate, model.scaling);
    const double p = nn::forward(model.network, in)[0];
    return {p, p > model.decision_threshold};
}

double balanced_accuracy(const std::array<std::array<double, 2>, 2>& rates) noexcept
{
    return 0.5 * (rates[0][0] + rates[1][1]);
}

double ConfusionMatrix::accuracy() const noexcept
{
    return balanced_accuracy(rates);
}

ConfusionMatrix confusion_from_counts(const std::array<std::array<std::uint64_t, 2>, 2>& counts)
{
    ConfusionMatrix cm;
    cm.counts = counts;
    for (std::size_t r = 0; r < 2; ++r) {
        const auto total = counts[r][0] + counts[r][1];
        if (total == 0) throw InvalidInput("confusion matrix row has no samples");
        for (std::size_t c = 0; c < 2; ++c) {
            cm.rates[r][c] = static_cast<double>(counts[r][c]) / static_cast<double>(total);
        }
    }
    return cm;
}

ConfusionMatrix evaluate_mia(const MiaModel& model, const nn::DenseNetwork& surrogate,
                             const std::vector<SignalSample>& members_test,
                             const std::vector<SignalSample>& nonmembers_test)
{
    if (members_test.empty() || nonmembers_test.empty()) {
        throw InvalidInput("evaluate_mia: empty test partition");
    }
    std::array<std::array<std::uint64_t, 2>, 2> counts{};
    for (double p : model_probs(model, surrogate, nonmembers_test)) ++counts[0][p > model.decision_threshold];
    for (double p : model_probs(model, surrogate, members_test)) ++counts[1][p > model.decision_threshold];
    return confusion_from_counts(counts);
}

std::string confusion_to_csv(const ConfusionMatrix& cm)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, "real\\predicted,non-member,member\nnon-member,%.4f,%.4f\nmember,%.4f,%.4f\n",
                  cm.rates[0][0], cm.rates[0][1], cm.rates[1][0], cm.rates[1][1]);
    return buf;
}

std::string confusion_to_table(const ConfusionMatrix& cm)
{
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "Real \\ Predicted | non-member | member\n"
                  "------------------+------------+--------\n"
                  "non-member        |   %.4f   | %.4f\n"
                  "member            |   %.4f   | %.4f\n"
                  "accuracy: %.4f\n",
                  cm.rates[0][0], cm.rates[0][1], cm.rates[1][0], cm.rates[1][1], cm.accuracy());
    return buf;
}

NaiveCall naive_likelihood_mia(const Density& train_density, const Density& general_density,
                               std::span<const double> x)
{
    const double pt = train_density(x);
    const double pg = general_density(x);
    if (!(pt >= 0.0) || !(pg >= 0.0)) throw InvalidInput("naive_likelihood_mia: densities must be non-negative");
    if (pt + pg <= 0.0) throw InvalidInput("naive_likelihood_mia: both densities are zero");
    return {pt > pg, pt / (pt + pg)};
}

}  // namespace airmia::mia

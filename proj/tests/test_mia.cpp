#include "doctest.h"

#include <cmath>
#include <set>

#include "airmia/classify.hpp"
#include "airmia/error.hpp"
#include "airmia/mia.hpp"

using namespace airmia;
using namespace airmia::mia;
using rfsim::SignalSample;

namespace {

// Independent evaluation of the gain straight from its definition.
double gain_oracle(const std::vector<double>& in, const std::vector<double>& out)
{
    double a = 0.0;
    for (double m : in) a += std::log(m);
    double b = 0.0;
    for (double m : out) b += std::log(1.0 - m);
    return a / (2.0 * static_cast<double>(in.size())) + b / (2.0 * static_cast<double>(out.size()));
}

std::vector<SignalSample> samples_around(double phase, double power, std::size_t n, std::uint64_t first_id,
                                         std::uint64_t seed)
{
    Engine rng = substream(seed, "mia-samples");
    std::vector<SignalSample> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& s = out[i];
        s.sample_id = first_id + i;
        s.view = rfsim::Receiver::Adversary;
        for (auto& p : s.phases) p = rfsim::wrap_phase(phase + uniform(rng, -0.1, 0.1));
        for (auto& p : s.powers) p = power + uniform(rng, -1.0, 1.0);
    }
    return out;
}

}  // namespace

TEST_CASE("empirical_gain examples")
{
    const std::vector<double> half{0.5, 0.5, 0.5};
    CHECK(std::abs(empirical_gain(half, half) - std::log(0.5)) < 1e-12);

    const std::vector<double> m{0.9};
    const std::vector<double> n{0.2};
    CHECK(std::abs(empirical_gain(m, n) - (-0.16425)) < 1e-5);
    CHECK(empirical_gain(m, n) == doctest::Approx(gain_oracle(m, n)).epsilon(1e-14));

    const std::vector<double> near_one{1.0 - 1e-10};
    const std::vector<double> near_zero{1e-10};
    const double g = empirical_gain(near_one, near_zero);
    CHECK(g < 0.0);
    CHECK(g > -1e-9);

    CHECK_THROWS_AS(empirical_gain(std::vector<double>{}, n), InvalidInput);
    CHECK_THROWS_AS(empirical_gain(m, std::vector<double>{}), InvalidInput);
}

TEST_CASE("empirical_gain floors its log inputs")
{
    const std::vector<double> zero{0.0};
    const std::vector<double> one{1.0};
    CHECK(empirical_gain(zero, zero) == doctest::Approx(0.5 * std::log(1e-12)));
    CHECK(empirical_gain(one, one) == doctest::Approx(0.5 * std::log(1e-12)));
}

TEST_CASE("gain properties: bound, constant-model grid, balance symmetry")
{
    // Constant models: maximum over a grid sits at c = 0.5 with value ln 0.5.
    double best = -1e9, best_c = 0.0;
    for (int k = 1; k < 100; ++k) {
        const double c = k / 100.0;
        const std::vector<double> v{c, c};
        const double g = empirical_gain(v, v);
        CHECK(g == doctest::Approx(0.5 * std::log(c) + 0.5 * std::log(1.0 - c)).epsilon(1e-12));
        if (g > best) {
            best = g;
            best_c = c;
        }
    }
    CHECK(best_c == doctest::Approx(0.5));
    CHECK(std::abs(best - std::log(0.5)) < 1e-12);

    Engine rng = substream(3, "gain-prop");
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> in(1 + uniform_index(rng, 9)), out(1 + uniform_index(rng, 9));
        for (auto& v : in) v = uniform(rng, 0.01, 0.99);
        for (auto& v : out) v = uniform(rng, 0.01, 0.99);
        const double g = empirical_gain(in, out);
        CHECK(g <= 0.0);
        CHECK(g == doctest::Approx(gain_oracle(in, out)).epsilon(1e-12));
        // Swap the roles and replace m by 1 - m.
        std::vector<double> in2, out2;
        for (double v : out) in2.push_back(1.0 - v);
        for (double v : in) out2.push_back(1.0 - v);
        CHECK(std::abs(empirical_gain(in2, out2) - g) < 1e-12);
    }
}

TEST_CASE("balanced accuracy matches the published confusion matrices")
{
    const std::array<std::array<double, 2>, 2> table1{{{0.9152, 0.0848}, {0.1429, 0.8571}}};
    const std::array<std::array<double, 2>, 2> table4{{{0.9129, 0.0871}, {0.3728, 0.6272}}};
    CHECK(std::abs(balanced_accuracy(table1) - 0.8862) < 5e-5);
    CHECK(std::abs(balanced_accuracy(table4) - 0.7701) < 5e-5);
}

TEST_CASE("confusion matrices from counts")
{
    const auto cm = confusion_from_counts({{{450, 50}, {100, 400}}});
    CHECK(cm.rates[0][0] == doctest::Approx(0.9));
    CHECK(cm.rates[1][1] == doctest::Approx(0.8));
    for (const auto& row : cm.rates) CHECK(std::abs(row[0] + row[1] - 1.0) < 1e-9);
    CHECK(cm.accuracy() == doctest::Approx(0.85));
    CHECK(cm.member_recall() == doctest::Approx(0.8));
    CHECK(cm.nonmember_recall() == doctest::Approx(0.9));
    CHECK_THROWS_AS(confusion_from_counts({{{0, 0}, {1, 1}}}), InvalidInput);

    const auto table = confusion_to_table(cm);
    CHECK(table.find("Real \\ Predicted") == 0);
    CHECK(table.find("non-member") < table.find("member            |"));
    CHECK(confusion_to_csv(cm) == "real\\predicted,non-member,member\nnon-member,0.9000,0.1000\nmember,0.2000,0.8000\n");
}

TEST_CASE("coin-flip predictor sits near 0.5 at n = 1000")
{
    Engine rng = substream(11, "coin");
    std::array<std::array<std::uint64_t, 2>, 2> counts{};
    for (int row = 0; row < 2; ++row) {
        for (int i = 0; i < 500; ++i) ++counts[row][uniform_index(rng, 2)];
    }
    CHECK(std::abs(confusion_from_counts(counts).accuracy() - 0.5) < 0.05);
}

TEST_CASE("mia_input: shape, posterior tail, purity")
{
    const auto sur = nn::init_network(classify::kClassifierDims, nn::OutputHead::Softmax2, 2);
    const auto s = samples_around(1.0, 8.0, 2, 0, 1);
    const auto in = mia_input(s[0], sur);
    CHECK(in.size() == 34);
    CHECK(in[32] + in[33] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(in[0] == doctest::Approx(s[0].phases[0] / rfsim::kTwoPi));
    auto copy = s[0];
    copy.sample_id = 777;
    CHECK(mia_input(copy, sur) == in);

    const auto batch = mia_inputs(s, sur);
    CHECK(batch.rows == 2);
    CHECK(batch.cols == 34);
    for (std::size_t k = 0; k < 34; ++k) CHECK(batch.row(0)[k] == doctest::Approx(in[k]).epsilon(1e-15));
}

TEST_CASE("infer_membership: untrained model and tie-break")
{
    const auto model = make_untrained_model();
    const auto sur = nn::init_network(classify::kClassifierDims, nn::OutputHead::Softmax2, 2);
    const auto s = samples_around(2.0, 10.0, 1, 0, 2);
    const auto call = infer_membership(model, sur, s[0]);
    CHECK(call.probability == 0.5);
    CHECK_FALSE(call.member);

    auto trained = model;
    trained.network = nn::init_network(kMiaDims, nn::OutputHead::SigmoidScalar, 9);
    const auto c2 = infer_membership(trained, sur, s[0]);
    CHECK(c2.probability > 0.0);
    CHECK(c2.probability < 1.0);
    CHECK(c2.member == (c2.probability > 0.5));
}

TEST_CASE("split_membership: halves are disjoint and exhaustive")
{
    auto members = samples_around(1.0, 8.0, 40, 0, 3);
    auto nonmembers = samples_around(2.0, 8.0, 30, 1000, 4);
    const auto d = split_membership(members, nonmembers, 5);
    CHECK(d.member_train.size() == 20);
    CHECK(d.member_test.size() == 20);
    CHECK(d.nonmember_train.size() == 15);
    CHECK(d.nonmember_test.size() == 15);
    std::set<std::size_t> all(d.member_train.begin(), d.member_train.end());
    all.insert(d.member_test.begin(), d.member_test.end());
    CHECK(all.size() == 40);
    CHECK(split_membership(members, nonmembers, 5).member_train == d.member_train);

    auto clash = nonmembers;
    clash[0].sample_id = members[3].sample_id;
    CHECK_THROWS_AS(split_membership(members, clash, 5), InvalidConfig);
    CHECK_THROWS_AS(split_membership({members[0]}, nonmembers, 5), InvalidConfig);

    auto broken = d;
    broken.member_test.clear();
    CHECK_THROWS_AS(validate(broken), InvalidConfig);
    broken = d;
    broken.member_test.push_back(broken.member_train.front());
    CHECK_THROWS_AS(validate(broken), InvalidConfig);
}

TEST_CASE("train_mia: separable toy sets")
{
    const auto sur = nn::init_network(classify::kClassifierDims, nn::OutputHead::Softmax2, 2);
    const auto members = samples_around(1.0, 12.0, 200, 0, 6);
    const auto nonmembers = samples_around(1.0, 5.0, 200, 1000, 7);
    const auto data = split_membership(members, nonmembers, 8);
    MiaHyper h;
    h.epochs = 30;
    h.seed = 8;
    const auto t = train_mia(sur, data, h);
    CHECK(t.train_gain.size() == 30);
    CHECK(t.test_gain.size() == 30);
    CHECK(t.train_gain.back() > t.train_gain.front());
    // Moving-average trend of the train-partition gain.
    auto avg = [&](std::size_t end) {
        double s = 0.0;
        for (std::size_t i = end - 5; i < end; ++i) s += t.train_gain[i];
        return s / 5.0;
    };
    for (std::size_t e = 10; e <= 30; e += 5) CHECK(avg(e) >= avg(e - 5));

    const auto cm = evaluate_mia(t.model, sur, data.members_in(data.member_test),
                                 data.nonmembers_in(data.nonmember_test));
    CHECK(cm.accuracy() > 0.95);
    CHECK(empirical_gain(t.model, sur, data.members_in(data.member_test),
                         data.nonmembers_in(data.nonmember_test)) == doctest::Approx(t.test_gain.back()));
    CHECK_THROWS_AS(evaluate_mia(t.model, sur, {}, nonmembers), InvalidInput);
}

TEST_CASE("train_mia: identical member and nonmember sets drive m toward 0.5")
{
    const auto sur = nn::init_network(classify::kClassifierDims, nn::OutputHead::Softmax2, 2);
    auto members = samples_around(1.0, 10.0, 200, 0, 9);
    auto nonmembers = members;
    for (auto& s : nonmembers) s.sample_id += 10000;
    const auto data = split_membership(members, nonmembers, 10);
    MiaHyper h;
    h.epochs = 200;
    h.seed = 10;
    const auto t = train_mia(sur, data, h);
    double dev = 0.0;
    for (const auto& s : members) dev += std::abs(infer_membership(t.model, sur, s).probability - 0.5);
    CHECK(dev / static_cast<double>(members.size()) < 0.05);
}

TEST_CASE("naive likelihood-ratio baseline")
{
    const std::vector<double> x{0.3};
    auto constant = [](double v) { return Density([v](std::span<const double>) { return v; }); };

    const auto eq = naive_likelihood_mia(constant(0.2), constant(0.2), x);
    CHECK(eq.confidence == doctest::Approx(0.5));
    CHECK_FALSE(eq.member);

    const auto three = naive_likelihood_mia(constant(0.3), constant(0.1), x);
    CHECK(three.confidence == doctest::Approx(0.75));
    CHECK(three.member);

    const auto zero = naive_likelihood_mia(constant(0.0), constant(0.4), x);
    CHECK(zero.confidence == 0.0);
    CHECK_FALSE(zero.member);

    CHECK_THROWS_AS(naive_likelihood_mia(constant(0.0), constant(0.0), x), InvalidInput);
    CHECK_THROWS_AS(naive_likelihood_mia(constant(-1.0), constant(0.5), x), InvalidInput);
}

TEST_CASE("naive baseline calibration on known Gaussian densities")
{
    // Train density N(1, 1), general density N(0, 1): decision is sign(P_train - P_general).
    auto gauss = [](double mu) {
        return Density([mu](std::span<const double> v) { return std::exp(-0.5 * (v[0] - mu) * (v[0] - mu)); });
    };
    Engine rng = substream(12, "naive");
    for (int i = 0; i < 1000; ++i) {
        const std::vector<double> x{uniform(rng, -4.0, 5.0)};
        const double pt = gauss(1.0)(x);
        const double pg = gauss(0.0)(x);
        const auto call = naive_likelihood_mia(gauss(1.0), gauss(0.0), x);
        CHECK(call.member == (pt > pg));
        CHECK(call.member == (x[0] > 0.5));
    }
}

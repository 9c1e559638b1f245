#include "doctest.h"

#include <cmath>
#include <numbers>
#include <set>

#include "airmia/error.hpp"
#include "airmia/rfsim.hpp"

using namespace airmia;
using namespace airmia::rfsim;

namespace {

constexpr double pi = std::numbers::pi;

const NoiseModel kSilent{0.0, 0.0, 1.0};

std::vector<double> flat(double phase)
{
    return std::vector<double>(kSymbolsPerSample, phase);
}

// Shortest signed distance between two angles.
double angle_diff(double a, double b)
{
    return std::remainder(a - b, kTwoPi);
}

Population small_population()
{
    Population pop;
    for (int i = 0; i < 3; ++i) {
        UserChannels u;
        u.device = make_device(i, 0.3 * i, 1.0, Modulation::Qpsk, true);
        u.provider = make_link(i, Receiver::Provider, 10.0, 0.1 * i);
        u.adversary = make_link(i, Receiver::Adversary, 8.0, 0.2 * i);
        pop.authorized.push_back(u);
        u.provider.gain = 12.0;
        pop.authorized_later.push_back(u);
    }
    for (int i = 3; i < 6; ++i) {
        UserChannels u;
        u.device = make_device(i, 0.25 * i, 1.0, Modulation::Bpsk, false);
        u.provider = make_link(i, Receiver::Provider, 9.0, 0.1);
        u.adversary = make_link(i, Receiver::Adversary, 11.0, 0.4);
        pop.other_bpsk.push_back(u);
    }
    for (int i = 6; i < 9; ++i) {
        UserChannels u;
        u.device = make_device(i, 0.2 * i, 1.0, Modulation::Qpsk, false);
        u.provider = make_link(i, Receiver::Provider, 7.0, 0.3);
        u.adversary = make_link(i, Receiver::Adversary, 6.0, 0.5);
        pop.unauthorized_qpsk.push_back(u);
    }
    return pop;
}

DataCounts small_counts()
{
    return DataCounts{600, 120, 300, 100, 120};
}

}  // namespace

TEST_CASE("modulate: reference constellation points")
{
    const std::vector<std::uint8_t> q00{0, 0};
    CHECK(modulate(q00, Modulation::Qpsk) == std::vector<double>{pi / 4});

    const std::vector<std::uint8_t> b0{0};
    CHECK(modulate(b0, Modulation::Bpsk) == std::vector<double>{0.0});

    const std::vector<std::uint8_t> q1100{1, 1, 0, 0};
    const auto two = modulate(q1100, Modulation::Qpsk);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == doctest::Approx(5 * pi / 4));
    CHECK(two[1] == doctest::Approx(pi / 4));
}

TEST_CASE("modulate: full Gray map and BPSK")
{
    const std::vector<std::uint8_t> all{0, 0, 0, 1, 1, 1, 1, 0};
    const auto q = modulate(all, Modulation::Qpsk);
    CHECK(q[0] == doctest::Approx(pi / 4));
    CHECK(q[1] == doctest::Approx(3 * pi / 4));
    CHECK(q[2] == doctest::Approx(5 * pi / 4));
    CHECK(q[3] == doctest::Approx(7 * pi / 4));

    const std::vector<std::uint8_t> b{0, 1};
    CHECK(modulate(b, Modulation::Bpsk) == std::vector<double>{0.0, pi});

    CHECK(modulate(std::vector<std::uint8_t>(32, 0), Modulation::Qpsk).size() == 16);
    CHECK(modulate(std::vector<std::uint8_t>(16, 1), Modulation::Bpsk).size() == 16);
}

TEST_CASE("modulate: malformed bit sequences are rejected")
{
    CHECK_THROWS_AS(modulate(std::vector<std::uint8_t>{}, Modulation::Bpsk), InvalidInput);
    CHECK_THROWS_AS(modulate(std::vector<std::uint8_t>{1, 0, 1}, Modulation::Qpsk), InvalidInput);
    CHECK_THROWS_AS(modulate(std::vector<std::uint8_t>(17, 0), Modulation::Bpsk), InvalidInput);
    CHECK_THROWS_AS(modulate(std::vector<std::uint8_t>(34, 0), Modulation::Qpsk), InvalidInput);
    CHECK_THROWS_AS(modulate(std::vector<std::uint8_t>{2}, Modulation::Bpsk), InvalidInput);
}

TEST_CASE("device and link invariants")
{
    CHECK(make_device(0, kTwoPi + 0.5, 1.0, Modulation::Qpsk, true).phase_shift_rad == doctest::Approx(0.5));
    CHECK(make_device(0, -0.5, 1.0, Modulation::Qpsk, true).phase_shift_rad == doctest::Approx(kTwoPi - 0.5));
    CHECK_THROWS_AS(make_device(0, 0.0, 0.0, Modulation::Qpsk, true), InvalidInput);
    CHECK_THROWS_AS(make_link(0, Receiver::Provider, -1.0, 0.0), InvalidInput);
    CHECK(wrap_phase(kTwoPi) == 0.0);
    CHECK(wrap_phase(-1e-20) < kTwoPi);
}

TEST_CASE("propagate: noiseless examples")
{
    Engine rng = substream(0, "t");
    const auto dev = make_device(1, 0.0, 1.0, Modulation::Qpsk, true);
    const auto link = make_link(1, Receiver::Provider, 10.0, 0.0);
    const auto s = propagate(flat(pi / 4), dev, link, kSilent, rng);
    CHECK(s.phases[0] == doctest::Approx(pi / 4));
    CHECK(s.powers[0] == doctest::Approx(10.0));
    CHECK(s.tx_id == 1);

    const auto dev2 = make_device(2, 1.0, 1.0, Modulation::Bpsk, false);
    const auto link2 = make_link(2, Receiver::Adversary, 1.0, 0.5);
    const auto s2 = propagate(flat(0.0), dev2, link2, kSilent, rng);
    CHECK(s2.phases[0] == doctest::Approx(1.5));
    CHECK(s2.view == Receiver::Adversary);
}

TEST_CASE("propagate: preconditions")
{
    Engine rng = substream(0, "t");
    const auto dev = make_device(1, 0.0, 1.0, Modulation::Qpsk, true);
    CHECK_THROWS_AS(propagate(std::vector<double>(3, 0.0), dev, make_link(1, Receiver::Provider, 1.0, 0.0),
                              kSilent, rng),
                    InvalidInput);
    CHECK_THROWS_AS(propagate(flat(0.0), dev, make_link(2, Receiver::Provider, 1.0, 0.0), kSilent, rng),
                    InvalidInput);
}

TEST_CASE("propagate: noise stays within its bounds over 10^4 draws")
{
    Engine rng = substream(5, "noise");
    const NoiseModel noise{0.1, 1.0, 1.0};
    const auto dev = make_device(0, 2.0, 1.0, Modulation::Qpsk, true);
    const auto link = make_link(0, Receiver::Provider, 3.0, 4.0);
    const double expected_phase = wrap_phase(pi / 4 + 2.0 + 4.0);
    double max_phase = 0.0, max_power = 0.0;
    for (int i = 0; i < 10000 / 16 + 1; ++i) {
        const auto s = propagate(flat(pi / 4), dev, link, noise, rng);
        for (std::size_t k = 0; k < kSymbolsPerSample; ++k) {
            max_phase = std::max(max_phase, std::abs(angle_diff(s.phases[k], expected_phase)));
            max_power = std::max(max_power, std::abs(s.powers[k] - 3.0));
            REQUIRE(s.phases[k] >= 0.0);
            REQUIRE(s.phases[k] < kTwoPi);
        }
    }
    CHECK(max_phase <= 0.1 + 1e-12);
    CHECK(max_phase > 0.09);  // the bound is actually explored
    CHECK(max_power <= 1.0 + 1e-12);
}

TEST_CASE("propagate: powers are clipped at zero")
{
    Engine rng = substream(6, "clip");
    const auto dev = make_device(0, 0.0, 1.0, Modulation::Bpsk, false);
    const auto link = make_link(0, Receiver::Provider, 0.1, 0.0);
    for (int i = 0; i < 100; ++i) {
        const auto s = propagate(flat(0.0), dev, link, NoiseModel{0.1, 1.0, 1.0}, rng);
        for (double p : s.powers) REQUIRE(p >= 0.0);
    }
}

TEST_CASE("phase-wrap invariance: shifting device or link phase by 2pi changes nothing")
{
    const auto bits = preamble_bits(Modulation::Qpsk);
    const NoiseModel noise{0.1, 1.0, 1.0};
    for (double shift : {kTwoPi, -kTwoPi, 2 * kTwoPi}) {
        Engine r1 = substream(3, "wrap");
        Engine r2 = substream(3, "wrap");
        const auto d1 = make_device(0, 1.2, 1.0, Modulation::Qpsk, true);
        const auto d2 = make_device(0, 1.2 + shift, 1.0, Modulation::Qpsk, true);
        const auto p1 = make_link(0, Receiver::Provider, 10.0, 2.5);
        const auto p2 = make_link(0, Receiver::Provider, 10.0, 2.5 - shift);
        const auto a = make_link(0, Receiver::Adversary, 7.0, 0.3);
        const auto o1 = transmit_paired(d1, p1, a, bits, noise, r1);
        const auto o2 = transmit_paired(d2, p2, a, bits, noise, r2);
        // Equal up to the rounding of adding and removing 2*pi.
        for (std::size_t k = 0; k < kSymbolsPerSample; ++k) {
            CHECK(std::abs(std::remainder(o1.provider_view.phases[k] - o2.provider_view.phases[k], kTwoPi)) < 1e-12);
            CHECK(std::abs(std::remainder(o1.adversary_view.phases[k] - o2.adversary_view.phases[k], kTwoPi)) < 1e-12);
        }
        CHECK(o1.provider_view.powers == o2.provider_view.powers);
        CHECK(o1.adversary_view.powers == o2.adversary_view.powers);
    }
}

TEST_CASE("transmit_paired: examples")
{
    const auto bits = preamble_bits(Modulation::Qpsk);
    const auto dev = make_device(4, 0.7, 1.0, Modulation::Qpsk, true);

    SUBCASE("identical links and no noise give identical features")
    {
        Engine rng = substream(1, "pair");
        const auto link = make_link(4, Receiver::Provider, 5.0, 1.0);
        auto adv = link;
        adv.rx = Receiver::Adversary;
        const auto o = transmit_paired(dev, link, adv, bits, kSilent, rng);
        CHECK(o.provider_view.phases == o.adversary_view.phases);
        CHECK(o.provider_view.powers == o.adversary_view.powers);
    }
    SUBCASE("each view gets its own link gain")
    {
        Engine rng = substream(1, "pair");
        const auto o = transmit_paired(dev, make_link(4, Receiver::Provider, 10.0, 0.0),
                                       make_link(4, Receiver::Adversary, 5.0, 0.0), bits, kSilent, rng);
        for (double p : o.provider_view.powers) CHECK(p == doctest::Approx(10.0));
        for (double p : o.adversary_view.powers) CHECK(p == doctest::Approx(5.0));
    }
    SUBCASE("independent noise makes the views differ everywhere")
    {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Engine rng = substream(seed, "pair-noise");
            const auto link = make_link(4, Receiver::Provider, 5.0, 1.0);
            auto adv = link;
            adv.rx = Receiver::Adversary;
            const auto o = transmit_paired(dev, link, adv, bits, NoiseModel{0.1, 1.0, 1.0}, rng);
            for (std::size_t k = 0; k < kSymbolsPerSample; ++k) {
                CHECK(o.provider_view.phases[k] != o.adversary_view.phases[k]);
                CHECK(o.provider_view.powers[k] != o.adversary_view.powers[k]);
            }
        }
    }
    SUBCASE("paired consistency and tx checks")
    {
        Engine rng = substream(2, "pair");
        const auto o = transmit_paired(dev, make_link(4, Receiver::Provider, 1.0, 0.0),
                                       make_link(4, Receiver::Adversary, 1.0, 0.0), bits, kSilent, rng);
        CHECK(o.provider_view.tx_id == o.adversary_view.tx_id);
        CHECK(o.provider_view.class_label == o.adversary_view.class_label);
        CHECK(o.provider_view.view == Receiver::Provider);
        CHECK(o.adversary_view.view == Receiver::Adversary);
        CHECK_THROWS_AS(transmit_paired(dev, make_link(4, Receiver::Provider, 1.0, 0.0),
                                        make_link(5, Receiver::Adversary, 1.0, 0.0), bits, kSilent, rng),
                        InvalidInput);
    }
}

TEST_CASE("snr_to_received_power")
{
    CHECK(snr_to_received_power(10.0, 1.0) == doctest::Approx(10.0));
    CHECK(snr_to_received_power(3.0, 1.0) == doctest::Approx(1.9953).epsilon(1e-4));
    CHECK(snr_to_received_power(0.0, 2.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(snr_to_received_power(10.0, 0.0), InvalidInput);
    CHECK_THROWS_AS(snr_to_received_power(10.0, -1.0), InvalidInput);
}

TEST_CASE("preamble covers every constellation point")
{
    const auto q = modulate(preamble_bits(Modulation::Qpsk), Modulation::Qpsk);
    const auto b = modulate(preamble_bits(Modulation::Bpsk), Modulation::Bpsk);
    CHECK(std::set<double>(q.begin(), q.end()).size() == 4);
    CHECK(std::set<double>(b.begin(), b.end()).size() == 2);
    CHECK(payload_from_string("random") == Payload::Random);
    CHECK_THROWS_AS(payload_from_string("noise"), InvalidConfig);
}

TEST_CASE("scaled features")
{
    SignalSample s;
    s.phases.fill(pi);
    s.powers.fill(5.0);
    const auto f = scaled_features(s);
    CHECK(f.size() == kFeatureCount);
    CHECK(f[0] == doctest::Approx(0.5));
    CHECK(f[16] == doctest::Approx(0.5));
}

TEST_CASE("generate_scenario_data: composition and invariants")
{
    const auto pop = small_population();
    const auto counts = small_counts();
    const auto b = generate_scenario_data(pop, counts, NoiseModel{}, 99);

    CHECK(b.provider_train.size() == counts.provider_train);
    CHECK(b.paired_class1_train.size() == counts.provider_train / 2);
    CHECK(b.surrogate_pairs.size() == counts.surrogate_train);
    CHECK(b.test_pairs.size() == counts.provider_test);
    CHECK(b.member_eval.size() == counts.member_eval);
    CHECK(b.nonmember_eval.size() == counts.nonmember_eval);
    CHECK(b.nonmember_provider.size() == counts.nonmember_eval);

    std::size_t class1 = 0;
    for (const auto& s : b.provider_train) {
        class1 += s.class_label;
        CHECK(s.view == Receiver::Provider);
    }
    CHECK(class1 * 2 == counts.provider_train);

    // Every class-1 training transmission is paired and the views agree.
    for (std::size_t i = 0; i < b.paired_class1_train.size(); ++i) {
        const auto& p = b.paired_class1_train[i];
        CHECK(p.provider_view == b.provider_train[i]);
        CHECK(p.adversary_view.tx_id == p.provider_view.tx_id);
        CHECK(p.adversary_view.class_label == 1);
    }

    // Members are adversary views of training transmissions.
    std::set<std::uint64_t> train_ids;
    for (const auto& p : b.paired_class1_train) train_ids.insert(p.adversary_view.sample_id);
    for (const auto& s : b.member_eval) {
        CHECK(s.member);
        CHECK(s.view == Receiver::Adversary);
        CHECK(train_ids.count(s.sample_id) == 1);
    }

    // Nonmembers: half later-session authorized, half unauthorized, disjoint from members.
    std::set<std::uint64_t> member_ids;
    for (const auto& s : b.member_eval) member_ids.insert(s.sample_id);
    std::size_t authorized = 0;
    for (const auto& s : b.nonmember_eval) {
        CHECK_FALSE(s.member);
        CHECK(member_ids.count(s.sample_id) == 0);
        CHECK(train_ids.count(s.sample_id) == 0);
        authorized += s.tx_id < 3;
    }
    CHECK(authorized * 2 == counts.nonmember_eval);

    for (const auto* set : {&b.member_eval, &b.nonmember_eval}) {
        for (const auto& s : *set) {
            CHECK(s.phases.size() + s.powers.size() == kFeatureCount);
        }
    }
}

TEST_CASE("generate_scenario_data: determinism")
{
    const auto pop = small_population();
    const auto a = generate_scenario_data(pop, small_counts(), NoiseModel{}, 5);
    const auto b = generate_scenario_data(pop, small_counts(), NoiseModel{}, 5);
    CHECK(a.provider_train == b.provider_train);
    CHECK(a.member_eval == b.member_eval);
    CHECK(a.nonmember_eval == b.nonmember_eval);
    CHECK(a.provider_test() == b.provider_test());
    CHECK(a.adversary_test() == b.adversary_test());
    const auto c = generate_scenario_data(pop, small_counts(), NoiseModel{}, 6);
    CHECK_FALSE(a.provider_train == c.provider_train);
}

TEST_CASE("generate_scenario_data: noise bounds hold on generated data")
{
    const auto pop = small_population();
    const auto b = generate_scenario_data(pop, small_counts(), NoiseModel{}, 8, Payload::Random);
    for (const auto& p : b.test_pairs) {
        const auto& u = p.provider_view.class_label == 1 ? pop.authorized.at(p.provider_view.tx_id)
                                                         : pop.other_bpsk.at(p.provider_view.tx_id - 3);
        for (std::size_t k = 0; k < kSymbolsPerSample; ++k) {
            // The noiseless phase is a constellation point plus the offsets;
            // distance to the nearest point on the pi/4 grid bounds the noise.
            const double rel = wrap_phase(p.provider_view.phases[k] - u.device.phase_shift_rad -
                                          u.provider.phase_offset_rad);
            const double off_grid = std::abs(std::remainder(rel, pi / 4));
            CHECK(off_grid <= 0.1 + 1e-8);
            CHECK(std::abs(p.provider_view.powers[k] - u.provider.gain) <= 1.0 + 1e-8);
        }
    }
}

TEST_CASE("generate_scenario_data: invalid counts")
{
    const auto pop = small_population();
    auto counts = small_counts();
    counts.provider_train = 601;
    CHECK_THROWS_AS(generate_scenario_data(pop, counts, NoiseModel{}, 1), InvalidConfig);
    counts = small_counts();
    counts.nonmember_eval = 4;
    CHECK_THROWS_AS(generate_scenario_data(pop, counts, NoiseModel{}, 1), InvalidConfig);
    counts = small_counts();
    counts.member_eval = 0;
    CHECK_THROWS_AS(generate_scenario_data(pop, counts, NoiseModel{}, 1), InvalidConfig);
}

TEST_CASE("quantized features survive a decimal round trip")
{
    Engine rng = substream(4, "quant");
    for (int i = 0; i < 1000; ++i) {
        const double q = quantize_feature(uniform(rng, 0.0, 20.0));
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9f", q);
        CHECK(std::strtod(buf, nullptr) == q);
    }
}

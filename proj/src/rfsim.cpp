#include "airmia/rfsim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "airmia/error.hpp"

namespace airmia::rfsim {

std::string_view to_string(Modulation m) noexcept
{
    return m == Modulation::Bpsk ? "bpsk" : "qpsk";
}

std::string_view to_string(Receiver r) noexcept
{
    return r == Receiver::Provider ? "provider" : "adversary";
}

Receiver receiver_from_string(std::string_view s)
{
    if (s == "provider") return Receiver::Provider;
    if (s == "adversary") return Receiver::Adversary;
    throw InvalidInput("unknown receiver view '" + std::string(s) + "'");
}

double wrap_phase(double rad) noexcept
{
    double r = std::fmod(rad, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

DeviceProfile make_device(int id, double phase_shift_rad, double transmit_power, Modulation modulation,
                          bool authorized)
{
    if (!(transmit_power > 0.0) || !std::isfinite(transmit_power)) {
        throw InvalidInput("transmit power must be positive and finite");
    }
    if (!std::isfinite(phase_shift_rad)) throw InvalidInput("device phase shift must be finite");
    return DeviceProfile{id, wrap_phase(phase_shift_rad), transmit_power, modulation, authorized};
}

ChannelLink make_link(int tx_id, Receiver rx, double gain, double phase_offset_rad)
{
    if (!(gain >= 0.0) || !std::isfinite(gain)) throw InvalidInput("channel gain must be >= 0 and finite");
    if (!std::isfinite(phase_offset_rad)) throw InvalidInput("channel phase offset must be finite");
    return ChannelLink{tx_id, rx, gain, wrap_phase(phase_offset_rad)};
}

std::size_t bits_per_sample(Modulation scheme) noexcept
{
    return scheme == Modulation::Qpsk ? 2 * kSymbolsPerSample : kSymbolsPerSample;
}

std::vector<double> modulate(std::span<const std::uint8_t> bits, Modulation scheme)
{
    using std::numbers::pi;
    const std::size_t per_symbol = scheme == Modulation::Qpsk ? 2 : 1;
    if (bits.empty()) throw InvalidInput("modulate: empty bit sequence");
    if (bits.size() % per_symbol != 0) throw InvalidInput("modulate: QPSK needs an even number of bits");
    if (bits.size() / per_symbol > kSymbolsPerSample) {
        throw InvalidInput("modulate: at most " + std::to_string(kSymbolsPerSample) + " symbols per sample");
    }
    for (auto b : bits) {
        if (b > 1) throw InvalidInput("modulate: bits must be 0 or 1");
    }

    std::vector<double> phases;
    phases.reserve(bits.size() / per_symbol);
    if (scheme == Modulation::Bpsk) {
        for (auto b : bits) phases.push_back(b == 0 ? 0.0 : pi);
        return phases;
    }
    // Gray order around the circle: 00, 01, 11, 10.
    static constexpr std::array<double, 4> qpsk = {pi / 4, 3 * pi / 4, 7 * pi / 4, 5 * pi / 4};
    for (std::size_t k = 0; k < bits.size(); k += 2) {
        phases.push_back(qpsk[(bits[k] << 1) | bits[k + 1]]);
    }
    return phases;
}

SignalSample propagate(std::span<const double> base_phases, const DeviceProfile& device,
                       const ChannelLink& link, const NoiseModel& noise, Engine& rng)
{
    if (base_phases.size() != kSymbolsPerSample) {
        throw InvalidInput("propagate: expected " + std::to_string(kSymbolsPerSample) + " symbols, got " +
                           std::to_string(base_phases.size()));
    }
    if (link.tx_id != device.id) throw InvalidInput("propagate: link tx_id does not match device id");

    SignalSample s;
    s.tx_id = device.id;
    s.view = link.rx;
    const double offset = device.phase_shift_rad + link.phase_offset_rad;
    const double received = link.gain * device.transmit_power;
    for (std::size_t k = 0; k < kSymbolsPerSample; ++k) {
        const double n_phase = uniform(rng, -noise.phase_bound_rad, noise.phase_bound_rad);
        const double n_power = uniform(rng, -noise.power_bound, noise.power_bound);
        s.phases[k] = wrap_phase(base_phases[k] + offset + n_phase);
        s.powers[k] = std::max(0.0, received + n_power);
    }
    return s;
}

PairedObservation transmit_paired(const DeviceProfile& device, const ChannelLink& provider_link,
                                  const ChannelLink& adversary_link, std::span<const std::uint8_t> bits,
                                  const NoiseModel& noise, Engine& rng)
{
    if (provider_link.tx_id != device.id || adversary_link.tx_id != device.id) {
        throw InvalidInput("transmit_paired: links must share the device id as tx_id");
    }
    const auto base = modulate(bits, device.modulation);
    PairedObservation obs{propagate(base, device, provider_link, noise, rng),
                          propagate(base, device, adversary_link, noise, rng)};
    obs.provider_view.view = Receiver::Provider;
    obs.adversary_view.view = Receiver::Adversary;
    return obs;
}

double snr_to_received_power(double snr_db, double noise_floor)
{
    if (!(noise_floor > 0.0)) throw InvalidInput("noise floor must be positive");
    return noise_floor * std::pow(10.0, snr_db / 10.0);
}

std::array<double, kFeatureCount> scaled_features(const SignalSample& s, const FeatureScaling& scaling)
{
    std::array<double, kFeatureCount> out{};
    for (std::size_t k = 0; k < kSymbolsPerSample; ++k) {
        out[k] = s.phases[k] / scaling.phase_scale;
        out[kSymbolsPerSample + k] = s.powers[k] / scaling.power_scale;
    }
    return out;
}

std::vector<SignalSample> DataBundle::provider_test() const
{
    std::vector<SignalSample> out;
    out.reserve(test_pairs.size());
    for (const auto& p : test_pairs) out.push_back(p.provider_view);
    return out;
}

std::vector<SignalSample> DataBundle::adversary_test() const
{
    std::vector<SignalSample> out;
    out.reserve(test_pairs.size());
    for (const auto& p : test_pairs) out.push_back(p.adversary_view);
    return out;
}

std::string to_string(Payload p)
{
    return p == Payload::Preamble ? "preamble" : "random";
}

Payload payload_from_string(std::string_view s)
{
    if (s == "preamble") return Payload::Preamble;
    if (s == "random") return Payload::Random;
    throw InvalidConfig("unknown payload '" + std::string(s) + "' (expected preamble or random)");
}

std::vector<std::uint8_t> preamble_bits(Modulation scheme)
{
    // 0xB4E2 1D97: every QPSK symbol and both BPSK symbols occur.
    static constexpr std::uint32_t kSyncWord = 0xB4E21D97u;
    std::vector<std::uint8_t> bits(bits_per_sample(scheme));
    for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = static_cast<std::uint8_t>((kSyncWord >> (31 - i)) & 1u);
    return bits;
}

double quantize_feature(double v) noexcept
{
    // n / 1e9 is the double nearest to the decimal n * 10^-9, which is exactly
    // what parsing the 9-decimal CSV field yields.
    return std::round(v * 1e9) / 1e9;
}

namespace {

void quantize(SignalSample& s)
{
    for (auto& p : s.phases) {
        p = quantize_feature(p);
        if (p >= kTwoPi) p = 0.0;
    }
    for (auto& p : s.powers) p = quantize_feature(p);
}

// One transmission drawn from its own substream.
PairedObservation draw_transmission(const UserChannels& user, const NoiseModel& noise, std::uint64_t seed,
                                    std::string_view tag, std::uint64_t index, int class_label,
                                    std::uint64_t sample_id, Payload payload)
{
    Engine rng = substream(seed, tag, index);
    std::vector<std::uint8_t> bits;
    if (payload == Payload::Preamble) {
        bits = preamble_bits(user.device.modulation);
    } else {
        bits.resize(bits_per_sample(user.device.modulation));
        for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);
    }
    auto obs = transmit_paired(user.device, user.provider, user.adversary, bits, noise, rng);
    for (SignalSample* s : {&obs.provider_view, &obs.adversary_view}) {
        s->class_label = class_label;
        s->sample_id = sample_id;
        quantize(*s);
    }
    return obs;
}

// Draws `count` transmissions round-robin over `users`.
std::vector<PairedObservation> draw_group(const std::vector<UserChannels>& users, std::size_t count,
                                          const NoiseModel& noise, std::uint64_t seed, std::string_view tag,
                                          int class_label, std::uint64_t first_id, Payload payload)
{
    std::vector<PairedObservation> out(count);
    const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        out[idx] = draw_transmission(users[idx % users.size()], noise, seed, tag, idx, class_label,
                                     first_id + idx, payload);
    }
    return out;
}

void require_split(std::size_t total, std::size_t users_a, std::size_t users_b, const char* what)
{
    if (total % 2 != 0) throw InvalidConfig(std::string(what) + " count must be even");
    const std::size_t half = total / 2;
    if (users_a == 0 || users_b == 0) throw InvalidConfig(std::string(what) + ": empty user group");
    // 4000 over 3 users cannot divide evenly, so users share samples round-robin;
    // only a group too small to give every user one sample is rejected.
    if (half < users_a || half < users_b) {
        throw InvalidConfig(std::string(what) + " count too small to split across users");
    }
}

}  // namespace

DataBundle generate_scenario_data(const Population& pop, const DataCounts& counts, const NoiseModel& noise,
                                  std::uint64_t seed, Payload payload)
{
    require_split(counts.provider_train, pop.authorized.size(), pop.other_bpsk.size(), "provider_train");
    require_split(counts.surrogate_train, pop.authorized.size(), pop.other_bpsk.size(), "surrogate_train");
    require_split(counts.provider_test, pop.authorized.size(), pop.other_bpsk.size(), "provider_test");
    require_split(counts.nonmember_eval, pop.authorized_later.size(), pop.unauthorized_qpsk.size(),
                  "nonmember_eval");
    if (counts.member_eval == 0 || counts.member_eval > counts.provider_train / 2) {
        throw InvalidConfig("member_eval must be in [1, provider_train / 2]");
    }

    DataBundle bundle;
    std::uint64_t next_id = 0;

    const std::size_t train_half = counts.provider_train / 2;
    bundle.paired_class1_train = draw_group(pop.authorized, train_half, noise, seed, "train-class1", 1, next_id, payload);
    next_id += train_half;
    const auto class0 = draw_group(pop.other_bpsk, train_half, noise, seed, "train-class0", 0, next_id, payload);
    next_id += train_half;
    bundle.provider_train.reserve(counts.provider_train);
    for (const auto& p : bundle.paired_class1_train) bundle.provider_train.push_back(p.provider_view);
    for (const auto& p : class0) bundle.provider_train.push_back(p.provider_view);

    const std::size_t sur_half = counts.surrogate_train / 2;
    bundle.surrogate_pairs = draw_group(pop.authorized, sur_half, noise, seed, "surrogate-class1", 1, next_id, payload);
    next_id += sur_half;
    auto sur0 = draw_group(pop.other_bpsk, sur_half, noise, seed, "surrogate-class0", 0, next_id, payload);
    next_id += sur_half;
    bundle.surrogate_pairs.insert(bundle.surrogate_pairs.end(), sur0.begin(), sur0.end());

    const std::size_t test_half = counts.provider_test / 2;
    bundle.test_pairs = draw_group(pop.authorized, test_half, noise, seed, "test-class1", 1, next_id, payload);
    next_id += test_half;
    auto test0 = draw_group(pop.other_bpsk, test_half, noise, seed, "test-class0", 0, next_id, payload);
    next_id += test_half;
    bundle.test_pairs.insert(bundle.test_pairs.end(), test0.begin(), test0.end());

    // Members: adversary views of randomly chosen class-1 training transmissions.
    std::vector<std::size_t> order(train_half);
    for (std::size_t i = 0; i < train_half; ++i) order[i] = i;
    Engine pick = substream(seed, "member-pick");
    shuffle_in_place(order, pick);
    bundle.member_eval.reserve(counts.member_eval);
    for (std::size_t i = 0; i < counts.member_eval; ++i) {
        SignalSample s = bundle.paired_class1_train[order[i]].adversary_view;
        s.member = true;
        bundle.member_eval.push_back(s);
    }

    const std::size_t non_half = counts.nonmember_eval / 2;
    auto later = draw_group(pop.authorized_later, non_half, noise, seed, "nonmember-authorized", 1, next_id, payload);
    next_id += non_half;
    auto unauth = draw_group(pop.unauthorized_qpsk, non_half, noise, seed, "nonmember-unauthorized", 0, next_id, payload);
    later.insert(later.end(), unauth.begin(), unauth.end());
    for (const auto& p : later) {
        bundle.nonmember_eval.push_back(p.adversary_view);
        bundle.nonmember_provider.push_back(p.provider_view);
    }
    return bundle;
}

}  // namespace airmia::rfsim

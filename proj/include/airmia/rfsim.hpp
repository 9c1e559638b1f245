#pragma once

// Signal generation for the authentication scenario: BPSK/QPSK symbol phases,
// per-device and per-link phase/power effects, bounded uniform noise, and the
// paired provider/adversary observations of one transmission.

#include <array>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "airmia/rng.hpp"

namespace airmia::rfsim {

inline constexpr std::size_t kSymbolsPerSample = 16;
inline constexpr std::size_t kFeatureCount = 2 * kSymbolsPerSample;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class Modulation { Bpsk, Qpsk };
enum class Receiver { Provider, Adversary };

std::string_view to_string(Modulation m) noexcept;
std::string_view to_string(Receiver r) noexcept;
Receiver receiver_from_string(std::string_view s);

// Wraps an angle into [0, 2*pi).
double wrap_phase(double rad) noexcept;

struct DeviceProfile {
    int id = 0;
    double phase_shift_rad = 0.0;
    double transmit_power = 1.0;
    Modulation modulation = Modulation::Qpsk;
    bool authorized = false;
};

// Validates and wraps; throws InvalidInput on non-positive power.
DeviceProfile make_device(int id, double phase_shift_rad, double transmit_power, Modulation modulation,
                          bool authorized);

struct ChannelLink {
    int tx_id = 0;
    Receiver rx = Receiver::Provider;
    double gain = 1.0;
    double phase_offset_rad = 0.0;
};

// Validates and wraps; throws InvalidInput on negative gain.
ChannelLink make_link(int tx_id, Receiver rx, double gain, double phase_offset_rad);

struct NoiseModel {
    double phase_bound_rad = 0.1;
    double power_bound = 1.0;
    double noise_floor = 1.0;
};

struct SignalSample {
    std::uint64_t sample_id = 0;
    std::array<double, kSymbolsPerSample> phases{};
    std::array<double, kSymbolsPerSample> powers{};
    int class_label = 0;
    int tx_id = 0;
    bool member = false;
    Receiver view = Receiver::Provider;

    bool operator==(const SignalSample&) const = default;
};

struct PairedObservation {
    SignalSample provider_view;
    SignalSample adversary_view;
};

// Bits per sample for a modulation (16 symbols either way).
std::size_t bits_per_sample(Modulation scheme) noexcept;

// One base phase per symbol. BPSK: 0 -> 0, 1 -> pi. QPSK (Gray, first bit is
// the MSB): 00 -> pi/4, 01 -> 3pi/4, 11 -> 5pi/4, 10 -> 7pi/4.
// Accepts 1..16 whole symbols; a full sample is 16 bits (BPSK) or 32 bits (QPSK).
// Throws InvalidInput on empty input, odd QPSK length, more than 16 symbols, or
// bit values other than 0/1.
std::vector<double> modulate(std::span<const std::uint8_t> bits, Modulation scheme);

// Received features of one view. Requires exactly kSymbolsPerSample base phases.
SignalSample propagate(std::span<const double> base_phases, const DeviceProfile& device,
                       const ChannelLink& link, const NoiseModel& noise, Engine& rng);

// Both views of one transmission: one modulation, two independent propagations.
PairedObservation transmit_paired(const DeviceProfile& device, const ChannelLink& provider_link,
                                  const ChannelLink& adversary_link, std::span<const std::uint8_t> bits,
                                  const NoiseModel& noise, Engine& rng);

// g * p needed for a target SNR against the noise floor.
double snr_to_received_power(double snr_db, double noise_floor);

// Feature vector normalization applied before any network sees a sample.
struct FeatureScaling {
    double phase_scale = kTwoPi;
    double power_scale = 10.0;

    bool operator==(const FeatureScaling&) const = default;
};

// [phase_0..phase_15, power_0..power_15] divided by the scaling constants.
std::array<double, kFeatureCount> scaled_features(const SignalSample& s, const FeatureScaling& scaling = {});

// --- Scenario-level generation -------------------------------------------

// A transmitter together with its static links in one capture session.
struct UserChannels {
    DeviceProfile device;
    ChannelLink provider;
    ChannelLink adversary;
};

struct Population {
    std::vector<UserChannels> authorized;        // QPSK, class 1, training session
    std::vector<UserChannels> authorized_later;  // same devices, later session (drifted channels)
    std::vector<UserChannels> other_bpsk;        // class 0
    std::vector<UserChannels> unauthorized_qpsk; // class 0, never in training data
};

// What a transmission carries. Preamble sends the same fixed sync word every
// time (the part a PHY fingerprinting receiver looks at); Random sends fresh
// payload bits per sample.
enum class Payload { Preamble, Random };

std::string to_string(Payload p);
Payload payload_from_string(std::string_view s);

// Fixed sync word: 16 bits for BPSK, 32 for QPSK.
std::vector<std::uint8_t> preamble_bits(Modulation scheme);

struct DataCounts {
    std::size_t provider_train = 8000;
    std::size_t surrogate_train = 1000;
    std::size_t provider_test = 10000;
    std::size_t member_eval = 1000;
    std::size_t nonmember_eval = 1000;
};

struct DataBundle {
    std::vector<SignalSample> provider_train;          // class 1 first, then class 0
    std::vector<PairedObservation> paired_class1_train; // aligned with the class-1 half
    std::vector<PairedObservation> surrogate_pairs;    // true class in both views
    std::vector<SignalSample> member_eval;             // adversary views, member = true
    std::vector<SignalSample> nonmember_eval;          // adversary views, member = false
    std::vector<SignalSample> nonmember_provider;      // provider views of nonmember_eval
    std::vector<PairedObservation> test_pairs;         // fresh paired test transmissions

    std::vector<SignalSample> provider_test() const;
    std::vector<SignalSample> adversary_test() const;
};

// Features are quantized to kFeatureResolution so that the CSV export is exact.
inline constexpr double kFeatureResolution = 1e-9;
double quantize_feature(double v) noexcept;

// Generates every dataset of one scenario run. Each transmission draws from
// its own substream of `seed`, so the result does not depend on thread count.
// Throws InvalidConfig when a count is odd or too small to give every user a sample.
DataBundle generate_scenario_data(const Population& population, const DataCounts& counts,
                                  const NoiseModel& noise, std::uint64_t seed,
                                  Payload payload = Payload::Preamble);

}  // namespace airmia::rfsim

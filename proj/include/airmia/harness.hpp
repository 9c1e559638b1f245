#pragma once

// End-to-end scenario runs: population draw and scenario constraints, data
// generation, target and surrogate training, membership inference, and the
// on-disk artifact layout out/<scenario>/<seed>/.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "airmia/classify.hpp"
#include "airmia/mia.hpp"
#include "airmia/rfsim.hpp"
#include "airmia/tinynn.hpp"

namespace airmia::harness {

enum class Scenario { FullStrong, SamePower, SamePhase, WeakAuthorized };

inline constexpr Scenario kAllScenarios[] = {Scenario::FullStrong, Scenario::SamePower, Scenario::SamePhase,
                                             Scenario::WeakAuthorized};

std::string to_string(Scenario s);
// Accepts "full-strong", "same-power", "same-phase", "weak-authorized".
Scenario scenario_from_string(std::string_view s);

struct UserCounts {
    std::size_t authorized = 3;
    std::size_t other_bpsk = 3;
    std::size_t unauthorized_qpsk = 3;
};

// How links are drawn. Provider-side SNR per user is the nominal value plus
// U[-provider_snr_spread_db, +spread]; the adversary sees that SNR plus
// U[-adversary_snr_offset_db, +offset]. Authorized users transmit again in a
// later session whose channels have drifted by a random-sign amount in
// [drift/2, drift] in both phase and SNR; non-member authorized samples come
// from that session.
struct ChannelModel {
    double device_phase_range_rad = 0.3;  // device phase ~ U[0, range)
    double link_phase_range_rad = 0.3;    // link phase ~ U[0, range)
    double provider_snr_spread_db = 0.5;
    double adversary_snr_offset_db = 2.0;
    double session_phase_drift_rad = 0.1;
    double session_snr_drift_db = 0.3;
};

struct ScenarioConfig {
    Scenario scenario = Scenario::FullStrong;
    std::uint64_t seed = 0;
    rfsim::DataCounts counts;
    double snr_authorized_db = 10.0;
    double snr_others_db = 10.0;
    UserCounts users;
    rfsim::NoiseModel noise;
    rfsim::Payload payload = rfsim::Payload::Preamble;
    ChannelModel channel;
    rfsim::FeatureScaling scaling;
    nn::TrainHyper classifier;
    mia::MiaHyper mia;
};

// Defaults for a scenario: 10 dB everywhere, except 3 dB for authorized users
// in WeakAuthorized.
ScenarioConfig default_config(Scenario scenario, std::uint64_t seed);

// Per-stage seeds derived from the run seed.
struct StageSeeds {
    std::uint64_t data = 0;
    std::uint64_t target = 0;
    std::uint64_t surrogate = 0;
    std::uint64_t membership_split = 0;
    std::uint64_t mia = 0;
};

StageSeeds stage_seeds(std::uint64_t seed);

struct ResolvedScenario {
    ScenarioConfig config;
    rfsim::Population population;
};

// Draws the user population for config.seed and enforces the scenario:
// SamePower equalizes g*p across all QPSK users at each receiver, SamePhase
// equalizes the combined phase (device + link) across all QPSK users at each
// receiver, WeakAuthorized requires authorized SNR below the others.
// Throws InvalidConfig on invalid or contradictory settings.
ResolvedScenario apply_scenario_constraints(const ScenarioConfig& config);

void validate(const ScenarioConfig& config);

// Everything a run produces or consumes. Optional members are filled in stage by stage.
struct ArtifactSet {
    std::vector<rfsim::SignalSample> provider_train;
    std::vector<rfsim::SignalSample> provider_test;
    std::vector<rfsim::SignalSample> adversary_test;   // aligned with provider_test
    std::vector<rfsim::SignalSample> surrogate_pairs_provider;
    std::vector<rfsim::SignalSample> surrogate_pairs_adversary;  // true classes
    std::vector<rfsim::SignalSample> member_eval;
    std::vector<rfsim::SignalSample> nonmember_eval;
    std::vector<rfsim::SignalSample> nonmember_provider;

    std::optional<std::vector<rfsim::SignalSample>> surrogate_train;  // labeled by C's decisions
    std::optional<nn::DenseNetwork> target;
    std::optional<nn::DenseNetwork> surrogate;
    std::optional<mia::MiaModel> mia_model;
    std::optional<mia::MembershipDataset> membership;
};

ArtifactSet artifacts_from_bundle(const rfsim::DataBundle& bundle);

// Numbers recomputed from an ArtifactSet; identical for in-memory and reloaded sets.
struct Evaluation {
    double target_train_accuracy = 0.0;
    double target_test_accuracy = 0.0;
    double surrogate_train_accuracy = 0.0;
    double surrogate_test_accuracy = 0.0;
    double paired_agreement = 0.0;
    double target_unauthorized_acceptance = 0.0;
    mia::ConfusionMatrix confusion;
    double mia_accuracy = 0.0;
    double nonmember_recall_authorized_later = 0.0;
    double nonmember_recall_unauthorized = 0.0;
    double mia_train_gain = 0.0;
    double mia_test_gain = 0.0;

    bool operator==(const Evaluation& o) const;
};

// Requires all models and the membership split. Throws InvalidInput otherwise.
Evaluation evaluate_artifacts(const ArtifactSet& artifacts, const rfsim::FeatureScaling& scaling = {});

struct ScenarioReport {
    ScenarioConfig config;
    StageSeeds seeds;
    rfsim::Population population;
    classify::ClassifierReport target;
    classify::ClassifierReport surrogate;
    Evaluation evaluation;
    std::vector<double> mia_train_gain_history;
    std::vector<double> mia_test_gain_history;
    double wall_seconds = 0.0;                    // not part of report.json
    std::map<std::string, double> stage_seconds;  // likewise; keyed by stage name
};

// Pipeline stages; each throws StageError tagged "<scenario>/<seed>/<stage>".
ArtifactSet stage_generate(const ResolvedScenario& resolved);
classify::ClassifierReport stage_train_target(const ScenarioConfig& config, ArtifactSet& artifacts);
classify::ClassifierReport stage_train_surrogate(const ScenarioConfig& config, ArtifactSet& artifacts);
mia::MiaTraining stage_attack(const ScenarioConfig& config, ArtifactSet& artifacts);

// Runs every stage. With an output root, writes out/<scenario>/<seed>/.
ScenarioReport run_scenario(const ScenarioConfig& config,
                            const std::optional<std::filesystem::path>& out_root = std::nullopt);

std::filesystem::path run_directory(const std::filesystem::path& out_root, Scenario scenario, std::uint64_t seed);

// Writes datasets/*.csv, models/*.json and the membership split for whatever
// parts of the set are present.
void save_artifacts(const ArtifactSet& artifacts, const std::filesystem::path& dir,
                    const rfsim::FeatureScaling& scaling = {});

// Reads the datasets and any models present. Throws LoadError naming the file.
ArtifactSet load_artifacts(const std::filesystem::path& dir);

void write_report(const ScenarioReport& report, const std::filesystem::path& dir);

struct OrderingSummary {
    std::map<Scenario, double> median_accuracy;
    std::map<Scenario, std::vector<double>> accuracies;
    bool strong_over_same_phase = false;
    bool same_phase_over_same_power = false;
    bool same_power_over_chance = false;  // > 0.55
    bool weak_below_strong = false;

    bool all_hold() const noexcept
    {
        return strong_over_same_phase && same_phase_over_same_power && same_power_over_chance && weak_below_strong;
    }
};

double median(std::vector<double> values);

OrderingSummary summarize(const std::vector<ScenarioReport>& reports);

struct RunAllResult {
    std::vector<ScenarioReport> reports;
    OrderingSummary summary;
};

// All four scenarios for each seed (at least three). `base` supplies every
// setting except scenario, seed and scenario SNRs.
RunAllResult run_all(const ScenarioConfig& base, const std::vector<std::uint64_t>& seeds,
                     const std::optional<std::filesystem::path>& out_root = std::nullopt);

}  // namespace airmia::harness

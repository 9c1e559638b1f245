#include "airmia/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "airmia/dataset_io.hpp"
#include "airmia/error.hpp"
#include "airmia/json_io.hpp"

namespace airmia::harness {

using rfsim::Modulation;
using rfsim::Receiver;
using rfsim::SignalSample;
using rfsim::UserChannels;
namespace fs = std::filesystem;

std::string to_string(Scenario s)
{
    switch (s) {
    case Scenario::FullStrong: return "full-strong";
    case Scenario::SamePower: return "same-power";
    case Scenario::SamePhase: return "same-phase";
    case Scenario::WeakAuthorized: return "weak-authorized";
    }
    return "unknown";
}

Scenario scenario_from_string(std::string_view s)
{
    for (auto sc : kAllScenarios) {
        if (to_string(sc) == s) return sc;
    }
    throw InvalidConfig("unknown scenario '" + std::string(s) + "'");
}

ScenarioConfig default_config(Scenario scenario, std::uint64_t seed)
{
    ScenarioConfig c;
    c.scenario = scenario;
    c.seed = seed;
    if (scenario == Scenario::WeakAuthorized) c.snr_authorized_db = 3.0;
    return c;
}

StageSeeds stage_seeds(std::uint64_t seed)
{
    return StageSeeds{seed, mix64(seed ^ hash_tag("target")), mix64(seed ^ hash_tag("surrogate")),
                      mix64(seed ^ hash_tag("membership-split")), mix64(seed ^ hash_tag("mia"))};
}

void validate(const ScenarioConfig& c)
{
    const auto& n = c.counts;
    if (n.provider_train == 0 || n.surrogate_train == 0 || n.provider_test == 0 || n.member_eval == 0 ||
        n.nonmember_eval == 0) {
        throw InvalidConfig("all dataset counts must be positive");
    }
    if (c.users.authorized == 0 || c.users.other_bpsk == 0 || c.users.unauthorized_qpsk == 0) {
        throw InvalidConfig("every user group needs at least one user");
    }
    if (!(c.noise.phase_bound_rad >= 0.0) || !(c.noise.power_bound >= 0.0) || !(c.noise.noise_floor > 0.0)) {
        throw InvalidConfig("noise bounds must be >= 0 and the noise floor > 0");
    }
    const auto& ch = c.channel;
    if (!(ch.provider_snr_spread_db >= 0.0) || !(ch.adversary_snr_offset_db >= 0.0) ||
        !(ch.session_phase_drift_rad >= 0.0) || !(ch.session_snr_drift_db >= 0.0)) {
        throw InvalidConfig("channel model spreads must be >= 0");
    }
    for (double r : {ch.device_phase_range_rad, ch.link_phase_range_rad}) {
        if (!(r >= 0.0 && r <= rfsim::kTwoPi)) throw InvalidConfig("phase ranges must lie in [0, 2*pi]");
    }
    if (!std::isfinite(c.snr_authorized_db) || !std::isfinite(c.snr_others_db)) {
        throw InvalidConfig("SNR values must be finite");
    }
    if (!(c.scaling.phase_scale > 0.0) || !(c.scaling.power_scale > 0.0)) {
        throw InvalidConfig("feature scaling constants must be positive");
    }
    nn::validate(c.classifier);
    if (c.mia.epochs == 0 || c.mia.batch_size == 0 || !(c.mia.learning_rate > 0.0)) {
        throw InvalidConfig("MIA hyperparameters must be positive");
    }
    switch (c.scenario) {
    case Scenario::WeakAuthorized:
        if (!(c.snr_authorized_db < c.snr_others_db)) {
            throw InvalidConfig("weak-authorized needs authorized SNR below the other users' SNR");
        }
        break;
    case Scenario::SamePower:
        if (c.snr_authorized_db != c.snr_others_db) {
            throw InvalidConfig("same-power cannot equalize QPSK powers with different nominal SNRs");
        }
        break;
    default:
        break;
    }
}

namespace {

double random_sign(Engine& rng)
{
    return (rng() >> 63) ? 1.0 : -1.0;
}

// Random-sign drift with magnitude in [amount/2, amount].
double drift(Engine& rng, double amount)
{
    const double magnitude = uniform(rng, 0.5 * amount, amount);
    return random_sign(rng) * magnitude;
}

UserChannels draw_user(Engine& rng, int id, Modulation mod, bool authorized, double nominal_snr_db,
                       const ScenarioConfig& c)
{
    UserChannels u;
    u.device = rfsim::make_device(id, uniform(rng, 0.0, c.channel.device_phase_range_rad), 1.0, mod, authorized);
    const double p = u.device.transmit_power;
    const double floor = c.noise.noise_floor;
    const double snr_p = nominal_snr_db + uniform(rng, -c.channel.provider_snr_spread_db, c.channel.provider_snr_spread_db);
    const double snr_a = snr_p + uniform(rng, -c.channel.adversary_snr_offset_db, c.channel.adversary_snr_offset_db);
    u.provider = rfsim::make_link(id, Receiver::Provider, rfsim::snr_to_received_power(snr_p, floor) / p,
                                  uniform(rng, 0.0, c.channel.link_phase_range_rad));
    u.adversary = rfsim::make_link(id, Receiver::Adversary, rfsim::snr_to_received_power(snr_a, floor) / p,
                                   uniform(rng, 0.0, c.channel.link_phase_range_rad));
    return u;
}

double snr_db_of(const rfsim::ChannelLink& link, double power, double floor)
{
    return 10.0 * std::log10(link.gain * power / floor);
}

UserChannels drifted(const UserChannels& u, Engine& rng, const ScenarioConfig& c)
{
    UserChannels d = u;
    const double p = u.device.transmit_power;
    const double floor = c.noise.noise_floor;
    for (rfsim::ChannelLink* link : {&d.provider, &d.adversary}) {
        const double snr = snr_db_of(*link, p, floor) + drift(rng, c.channel.session_snr_drift_db);
        const double phase = link->phase_offset_rad + drift(rng, c.channel.session_phase_drift_rad);
        *link = rfsim::make_link(u.device.id, link->rx, rfsim::snr_to_received_power(snr, floor) / p, phase);
    }
    return d;
}

std::vector<UserChannels*> qpsk_users(rfsim::Population& pop)
{
    std::vector<UserChannels*> out;
    for (auto* group : {&pop.authorized, &pop.authorized_later, &pop.unauthorized_qpsk}) {
        for (auto& u : *group) out.push_back(&u);
    }
    return out;
}

}  // namespace

ResolvedScenario apply_scenario_constraints(const ScenarioConfig& config)
{
    validate(config);
    ResolvedScenario r{config, {}};
    const auto& c = r.config;
    auto& pop = r.population;
    Engine rng = substream(c.seed, "population");

    int next_id = 0;
    for (std::size_t i = 0; i < c.users.authorized; ++i) {
        pop.authorized.push_back(draw_user(rng, next_id++, Modulation::Qpsk, true, c.snr_authorized_db, c));
    }
    for (std::size_t i = 0; i < c.users.other_bpsk; ++i) {
        pop.other_bpsk.push_back(draw_user(rng, next_id++, Modulation::Bpsk, false, c.snr_others_db, c));
    }
    for (std::size_t i = 0; i < c.users.unauthorized_qpsk; ++i) {
        pop.unauthorized_qpsk.push_back(draw_user(rng, next_id++, Modulation::Qpsk, false, c.snr_others_db, c));
    }
    for (const auto& u : pop.authorized) pop.authorized_later.push_back(drifted(u, rng, c));

    const double floor = c.noise.noise_floor;
    if (c.scenario == Scenario::SamePower) {
        const double provider_power = rfsim::snr_to_received_power(c.snr_authorized_db, floor);
        const double adversary_snr = c.snr_authorized_db +
                                     uniform(rng, -c.channel.adversary_snr_offset_db, c.channel.adversary_snr_offset_db);
        const double adversary_power = rfsim::snr_to_received_power(adversary_snr, floor);
        for (auto* u : qpsk_users(pop)) {
            u->provider.gain = provider_power / u->device.transmit_power;
            u->adversary.gain = adversary_power / u->device.transmit_power;
        }
    } else if (c.scenario == Scenario::SamePhase) {
        const double span = c.channel.device_phase_range_rad + c.channel.link_phase_range_rad;
        const double provider_phase = uniform(rng, 0.0, span);
        const double adversary_phase = uniform(rng, 0.0, span);
        for (auto* u : qpsk_users(pop)) {
            u->provider.phase_offset_rad = rfsim::wrap_phase(provider_phase - u->device.phase_shift_rad);
            u->adversary.phase_offset_rad = rfsim::wrap_phase(adversary_phase - u->device.phase_shift_rad);
        }
    }
    return r;
}

// --- Artifacts -------------------------------------------------------------

ArtifactSet artifacts_from_bundle(const rfsim::DataBundle& b)
{
    ArtifactSet a;
    a.provider_train = b.provider_train;
    a.provider_test = b.provider_test();
    a.adversary_test = b.adversary_test();
    for (const auto& p : b.surrogate_pairs) {
        a.surrogate_pairs_provider.push_back(p.provider_view);
        a.surrogate_pairs_adversary.push_back(p.adversary_view);
    }
    a.member_eval = b.member_eval;
    a.nonmember_eval = b.nonmember_eval;
    a.nonmember_provider = b.nonmember_provider;
    return a;
}

namespace {

std::vector<rfsim::PairedObservation> zip(const std::vector<SignalSample>& provider,
                                          const std::vector<SignalSample>& adversary)
{
    if (provider.size() != adversary.size()) throw InvalidInput("paired datasets differ in length");
    std::vector<rfsim::PairedObservation> out;
    out.reserve(provider.size());
    for (std::size_t i = 0; i < provider.size(); ++i) out.push_back({provider[i], adversary[i]});
    return out;
}

double recall_where(const std::vector<int>& decisions, const std::vector<SignalSample>& samples, int class_label)
{
    std::size_t total = 0, rejected = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].class_label != class_label) continue;
        ++total;
        rejected += decisions[i] == 0;
    }
    return total == 0 ? 0.0 : static_cast<double>(rejected) / static_cast<double>(total);
}

}  // namespace

bool Evaluation::operator==(const Evaluation& o) const
{
    return target_train_accuracy == o.target_train_accuracy && target_test_accuracy == o.target_test_accuracy &&
           surrogate_train_accuracy == o.surrogate_train_accuracy &&
           surrogate_test_accuracy == o.surrogate_test_accuracy && paired_agreement == o.paired_agreement &&
           target_unauthorized_acceptance == o.target_unauthorized_acceptance &&
           confusion.counts == o.confusion.counts && confusion.rates == o.confusion.rates &&
           mia_accuracy == o.mia_accuracy &&
           nonmember_recall_authorized_later == o.nonmember_recall_authorized_later &&
           nonmember_recall_unauthorized == o.nonmember_recall_unauthorized && mia_train_gain == o.mia_train_gain &&
           mia_test_gain == o.mia_test_gain;
}

Evaluation evaluate_artifacts(const ArtifactSet& a, const rfsim::FeatureScaling& scaling)
{
    if (!a.target || !a.surrogate || !a.mia_model || !a.membership || !a.surrogate_train) {
        throw InvalidInput("evaluate_artifacts: models, surrogate labels and membership split are required");
    }
    Evaluation e;
    e.target_train_accuracy = classify::classification_accuracy(*a.target, a.provider_train, scaling);
    e.target_test_accuracy = classify::classification_accuracy(*a.target, a.provider_test, scaling);
    e.surrogate_train_accuracy = classify::classification_accuracy(*a.surrogate, *a.surrogate_train, scaling);
    e.surrogate_test_accuracy = classify::classification_accuracy(*a.surrogate, a.adversary_test, scaling);
    e.paired_agreement = classify::paired_agreement(*a.target, *a.surrogate, zip(a.provider_test, a.adversary_test),
                                                    scaling);

    // C's behavior on unauthorized QPSK is recorded, not asserted.
    std::vector<SignalSample> unauthorized;
    for (const auto& s : a.nonmember_provider) {
        if (s.class_label == 0) unauthorized.push_back(s);
    }
    if (!unauthorized.empty()) {
        const auto d = classify::predict_labels(*a.target, unauthorized, scaling);
        e.target_unauthorized_acceptance =
            static_cast<double>(std::count(d.begin(), d.end(), 1)) / static_cast<double>(d.size());
    }

    const auto& m = *a.membership;
    const auto mem_test = m.members_in(m.member_test);
    const auto non_test = m.nonmembers_in(m.nonmember_test);
    e.confusion = mia::evaluate_mia(*a.mia_model, *a.surrogate, mem_test, non_test);
    e.mia_accuracy = e.confusion.accuracy();

    std::vector<int> decisions;
    for (const auto& s : non_test) decisions.push_back(mia::infer_membership(*a.mia_model, *a.surrogate, s).member);
    e.nonmember_recall_authorized_later = recall_where(decisions, non_test, 1);
    e.nonmember_recall_unauthorized = recall_where(decisions, non_test, 0);

    e.mia_train_gain = mia::empirical_gain(*a.mia_model, *a.surrogate, m.members_in(m.member_train),
                                           m.nonmembers_in(m.nonmember_train));
    e.mia_test_gain = mia::empirical_gain(*a.mia_model, *a.surrogate, mem_test, non_test);
    return e;
}

namespace {

std::string stage_tag(const ScenarioConfig& c, const char* stage)
{
    return to_string(c.scenario) + "/" + std::to_string(c.seed) + "/" + stage;
}

template <typename F>
auto tagged(const ScenarioConfig& c, const char* stage, F&& f)
{
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(stage_tag(c, stage), e.what());
    }
}

nn::TrainHyper with_seed(nn::TrainHyper h, std::uint64_t seed)
{
    h.seed = seed;
    return h;
}

}  // namespace

ArtifactSet stage_generate(const ResolvedScenario& resolved)
{
    const auto& c = resolved.config;
    return tagged(c, "generate", [&] {
        const auto bundle = rfsim::generate_scenario_data(resolved.population, c.counts, c.noise, stage_seeds(c.seed).data,
                                                          c.payload);
        return artifacts_from_bundle(bundle);
    });
}

classify::ClassifierReport stage_train_target(const ScenarioConfig& c, ArtifactSet& a)
{
    return tagged(c, "train-target", [&] {
        auto trained = classify::train_target(a.provider_train, a.provider_test,
                                              with_seed(c.classifier, stage_seeds(c.seed).target), c.scaling);
        a.target = std::move(trained.network);
        return trained.report;
    });
}

classify::ClassifierReport stage_train_surrogate(const ScenarioConfig& c, ArtifactSet& a)
{
    return tagged(c, "train-surrogate", [&] {
        if (!a.target) throw InvalidInput("surrogate training needs the target classifier's decisions");
        a.surrogate_train = classify::label_by_observed_access(
            *a.target, zip(a.surrogate_pairs_provider, a.surrogate_pairs_adversary), c.scaling);
        auto trained = classify::train_surrogate(*a.surrogate_train, a.adversary_test,
                                                 with_seed(c.classifier, stage_seeds(c.seed).surrogate), c.scaling);
        a.surrogate = std::move(trained.network);
        return trained.report;
    });
}

mia::MiaTraining stage_attack(const ScenarioConfig& c, ArtifactSet& a)
{
    return tagged(c, "attack", [&] {
        if (!a.surrogate) throw InvalidInput("attack needs the surrogate classifier");
        const auto seeds = stage_seeds(c.seed);
        a.membership = mia::split_membership(a.member_eval, a.nonmember_eval, seeds.membership_split);
        auto hyper = c.mia;
        hyper.seed = seeds.mia;
        auto trained = mia::train_mia(*a.surrogate, *a.membership, hyper, c.scaling);
        a.mia_model = trained.model;
        return trained;
    });
}

fs::path run_directory(const fs::path& out_root, Scenario scenario, std::uint64_t seed)
{
    return out_root / to_string(scenario) / std::to_string(seed);
}

ScenarioReport run_scenario(const ScenarioConfig& config, const std::optional<fs::path>& out_root)
{
    const auto t0 = std::chrono::steady_clock::now();
    ScenarioReport report;
    const auto resolved = tagged(config, "constraints", [&] { return apply_scenario_constraints(config); });
    report.config = resolved.config;
    report.seeds = stage_seeds(config.seed);
    report.population = resolved.population;

    auto timed = [&](const char* stage, auto&& fn) {
        const auto start = std::chrono::steady_clock::now();
        auto result = fn();
        report.stage_seconds[stage] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    };
    auto artifacts = timed("generate", [&] { return stage_generate(resolved); });
    report.target = timed("train-target", [&] { return stage_train_target(config, artifacts); });
    report.surrogate = timed("train-surrogate", [&] { return stage_train_surrogate(config, artifacts); });
    const auto attack = timed("attack", [&] { return stage_attack(config, artifacts); });
    report.mia_train_gain_history = attack.train_gain;
    report.mia_test_gain_history = attack.test_gain;
    report.evaluation = tagged(config, "evaluate", [&] { return evaluate_artifacts(artifacts, config.scaling); });
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (out_root) {
        const auto dir = run_directory(*out_root, config.scenario, config.seed);
        tagged(config, "save", [&] {
            save_artifacts(artifacts, dir, config.scaling);
            write_report(report, dir);
            return 0;
        });
    }
    return report;
}

// --- Persistence -----------------------------------------------------------

namespace {

using nlohmann::json;

constexpr const char* kDatasetFiles[] = {"provider_train",    "provider_test",     "adversary_test",
                                         "surrogate_pairs_provider", "surrogate_pairs_adversary",
                                         "member_eval",       "nonmember_eval",    "nonmember_provider"};

template <typename Set>
auto* dataset_slot(Set& a, std::string_view name)
{
    using Slot = decltype(&a.provider_train);
    if (name == "provider_train") return &a.provider_train;
    if (name == "provider_test") return &a.provider_test;
    if (name == "adversary_test") return &a.adversary_test;
    if (name == "surrogate_pairs_provider") return &a.surrogate_pairs_provider;
    if (name == "surrogate_pairs_adversary") return &a.surrogate_pairs_adversary;
    if (name == "member_eval") return &a.member_eval;
    if (name == "nonmember_eval") return &a.nonmember_eval;
    if (name == "nonmember_provider") return &a.nonmember_provider;
    return Slot{nullptr};
}

json split_json(const mia::MembershipDataset& m)
{
    return {{"version", 1},
            {"member_train", m.member_train},
            {"member_test", m.member_test},
            {"nonmember_train", m.nonmember_train},
            {"nonmember_test", m.nonmember_test}};
}

nn::DenseNetwork load_model(const fs::path& path, rfsim::FeatureScaling* scaling = nullptr)
{
    auto doc = nn::model_from_json(io::read_text(path), path.string());
    if (scaling) *scaling = doc.scaling;
    return std::move(doc.network);
}

}  // namespace

void save_artifacts(const ArtifactSet& a, const fs::path& dir, const rfsim::FeatureScaling& scaling)
{
    const auto data_dir = dir / "datasets";
    const auto model_dir = dir / "models";
    for (const char* name : kDatasetFiles) {
        io::write_dataset_csv(data_dir / (std::string(name) + ".csv"), *dataset_slot(a, name));
    }
    if (a.surrogate_train) io::write_dataset_csv(data_dir / "surrogate_train.csv", *a.surrogate_train);
    if (a.target) io::atomic_write_text(model_dir / "target.json", nn::model_to_json(*a.target, scaling));
    if (a.surrogate) io::atomic_write_text(model_dir / "surrogate.json", nn::model_to_json(*a.surrogate, scaling));
    if (a.mia_model) {
        io::atomic_write_text(model_dir / "mia.json", nn::model_to_json(a.mia_model->network, a.mia_model->scaling));
    }
    if (a.membership) io::atomic_write_text(model_dir / "membership_split.json", split_json(*a.membership).dump(1) + "\n");
}

ArtifactSet load_artifacts(const fs::path& dir)
{
    ArtifactSet a;
    const auto data_dir = dir / "datasets";
    const auto model_dir = dir / "models";
    for (const char* name : kDatasetFiles) {
        *dataset_slot(a, name) = io::read_dataset_csv(data_dir / (std::string(name) + ".csv"));
    }
    if (fs::exists(data_dir / "surrogate_train.csv")) {
        a.surrogate_train = io::read_dataset_csv(data_dir / "surrogate_train.csv");
    }
    if (fs::exists(model_dir / "target.json")) a.target = load_model(model_dir / "target.json");
    if (fs::exists(model_dir / "surrogate.json")) a.surrogate = load_model(model_dir / "surrogate.json");
    if (fs::exists(model_dir / "mia.json")) {
        mia::MiaModel m;
        m.network = load_model(model_dir / "mia.json", &m.scaling);
        if (m.network.input_dim() != mia::kInputDim || m.network.head() != nn::OutputHead::SigmoidScalar) {
            throw LoadError((model_dir / "mia.json").string(), "not a membership inference model");
        }
        a.mia_model = std::move(m);
    }
    const auto split_path = model_dir / "membership_split.json";
    if (fs::exists(split_path)) {
        try {
            const auto j = json::parse(io::read_text(split_path));
            if (j.at("version").get<int>() != 1) throw LoadError(split_path.string(), "unsupported version");
            mia::MembershipDataset m;
            m.members = a.member_eval;
            m.nonmembers = a.nonmember_eval;
            m.member_train = j.at("member_train").get<std::vector<std::size_t>>();
            m.member_test = j.at("member_test").get<std::vector<std::size_t>>();
            m.nonmember_train = j.at("nonmember_train").get<std::vector<std::size_t>>();
            m.nonmember_test = j.at("nonmember_test").get<std::vector<std::size_t>>();
            mia::validate(m);
            a.membership = std::move(m);
        } catch (const LoadError&) {
            throw;
        } catch (const std::exception& e) {
            throw LoadError(split_path.string(), e.what());
        }
    }
    return a;
}

void write_report(const ScenarioReport& report, const fs::path& dir)
{
    io::atomic_write_text(dir / "report.json", report_json(report).dump(1) + "\n");
    io::atomic_write_text(dir / "confusion.json", confusion_json(report).dump(1) + "\n");
    io::atomic_write_text(dir / "confusion.csv", mia::confusion_to_csv(report.evaluation.confusion));
    io::atomic_write_text(dir / "models" / "target_report.json", classify::report_to_json(report.target));
    io::atomic_write_text(dir / "models" / "surrogate_report.json", classify::report_to_json(report.surrogate));
    io::atomic_write_text(dir / "timing.json", json{{"wall_seconds", report.wall_seconds}, {"stage_seconds", report.stage_seconds}}.dump(1) + "\n");
}

// --- Multi-seed summary ----------------------------------------------------

double median(std::vector<double> v)
{
    if (v.empty()) throw InvalidInput("median of an empty list");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

OrderingSummary summarize(const std::vector<ScenarioReport>& reports)
{
    OrderingSummary s;
    for (const auto& r : reports) s.accuracies[r.config.scenario].push_back(r.evaluation.mia_accuracy);
    for (const auto& [sc, acc] : s.accuracies) s.median_accuracy[sc] = median(acc);
    auto med = [&](Scenario sc) {
        const auto it = s.median_accuracy.find(sc);
        return it == s.median_accuracy.end() ? std::nan("") : it->second;
    };
    s.strong_over_same_phase = med(Scenario::FullStrong) > med(Scenario::SamePhase);
    s.same_phase_over_same_power = med(Scenario::SamePhase) > med(Scenario::SamePower);
    s.same_power_over_chance = med(Scenario::SamePower) > 0.55;
    s.weak_below_strong = med(Scenario::WeakAuthorized) < med(Scenario::FullStrong);
    return s;
}

RunAllResult run_all(const ScenarioConfig& base, const std::vector<std::uint64_t>& seeds,
                     const std::optional<fs::path>& out_root)
{
    if (seeds.size() < 3) throw InvalidConfig("run-all needs at least three seeds");
    RunAllResult result;
    for (auto seed : seeds) {
        for (auto sc : kAllScenarios) {
            ScenarioConfig c = base;
            const auto defaults = default_config(sc, seed);
            c.scenario = sc;
            c.seed = seed;
            c.snr_authorized_db = defaults.snr_authorized_db;
            c.snr_others_db = defaults.snr_others_db;
            result.reports.push_back(run_scenario(c, out_root));
        }
    }
    result.summary = summarize(result.reports);
    return result;
}

}  // namespace airmia::harness

#include "airmia/json_io.hpp"

#include <functional>
#include <map>

#include "airmia/error.hpp"

namespace airmia {

using nlohmann::json;

namespace classify {

void to_json(json& j, const ClassifierReport& r)
{
    j = json{{"role", r.role},
             {"train_accuracy", r.train_accuracy},
             {"test_accuracy", r.test_accuracy},
             {"loss_history", r.loss_history},
             {"train_size", r.train_size},
             {"test_size", r.test_size},
             {"seed", r.seed}};
}

void from_json(const json& j, ClassifierReport& r)
{
    j.at("role").get_to(r.role);
    if (r.role != "target" && r.role != "surrogate") throw InvalidInput("role must be target or surrogate");
    j.at("train_accuracy").get_to(r.train_accuracy);
    j.at("test_accuracy").get_to(r.test_accuracy);
    j.at("loss_history").get_to(r.loss_history);
    j.at("train_size").get_to(r.train_size);
    j.at("test_size").get_to(r.test_size);
    j.at("seed").get_to(r.seed);
}

}  // namespace classify

namespace mia {

void to_json(json& j, const ConfusionMatrix& cm)
{
    j = json{{"counts", cm.counts}, {"rates", cm.rates}, {"accuracy", cm.accuracy()}};
}

void from_json(const json& j, ConfusionMatrix& cm)
{
    j.at("counts").get_to(cm.counts);
    j.at("rates").get_to(cm.rates);
}

}  // namespace mia

namespace harness {

namespace {

// Strict overlay of one JSON object onto a set of named setters.
using Setter = std::function<void(const json&)>;

void overlay(const json& j, const std::string& where, const std::map<std::string, Setter>& setters)
{
    if (!j.is_object()) throw InvalidConfig(where + " must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        const auto it = setters.find(key);
        const std::string path = where.empty() ? key : where + "." + key;
        if (it == setters.end()) throw InvalidConfig("unknown config key '" + path + "'");
        try {
            it->second(value);
        } catch (const InvalidConfig&) {
            throw;
        } catch (const std::exception& e) {
            throw InvalidConfig("bad value for '" + path + "': " + e.what());
        }
    }
}

template <typename T>
Setter set(T& field)
{
    return [&field](const json& v) {
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) throw InvalidConfig("expected a boolean");
        } else if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_unsigned()) throw InvalidConfig("expected a non-negative integer");
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!v.is_number()) throw InvalidConfig("expected a number");
        }
        field = v.get<T>();
    };
}

}  // namespace

void to_json(json& j, const ScenarioConfig& c)
{
    j = json{
        {"scenario", to_string(c.scenario)},
        {"seed", c.seed},
        {"counts",
         {{"provider_train", c.counts.provider_train},
          {"surrogate_train", c.counts.surrogate_train},
          {"provider_test", c.counts.provider_test},
          {"member_eval", c.counts.member_eval},
          {"nonmember_eval", c.counts.nonmember_eval}}},
        {"snr_authorized_db", c.snr_authorized_db},
        {"snr_others_db", c.snr_others_db},
        {"users",
         {{"authorized", c.users.authorized},
          {"other_bpsk", c.users.other_bpsk},
          {"unauthorized_qpsk", c.users.unauthorized_qpsk}}},
        {"noise",
         {{"phase_bound_rad", c.noise.phase_bound_rad},
          {"power_bound", c.noise.power_bound},
          {"noise_floor", c.noise.noise_floor}}},
        {"payload", rfsim::to_string(c.payload)},
        {"channel",
         {{"device_phase_range_rad", c.channel.device_phase_range_rad},
          {"link_phase_range_rad", c.channel.link_phase_range_rad},
          {"provider_snr_spread_db", c.channel.provider_snr_spread_db},
          {"adversary_snr_offset_db", c.channel.adversary_snr_offset_db},
          {"session_phase_drift_rad", c.channel.session_phase_drift_rad},
          {"session_snr_drift_db", c.channel.session_snr_drift_db}}},
        {"scaling", {{"phase_scale", c.scaling.phase_scale}, {"power_scale", c.scaling.power_scale}}},
        {"classifier",
         {{"epochs", c.classifier.epochs},
          {"batch_size", c.classifier.batch_size},
          {"learning_rate", c.classifier.learning_rate},
          {"shuffle", c.classifier.shuffle}}},
        {"mia",
         {{"epochs", c.mia.epochs}, {"batch_size", c.mia.batch_size}, {"learning_rate", c.mia.learning_rate}}},
    };
}

void apply_config_json(const json& j, ScenarioConfig& c)
{
    overlay(j, "",
            {
                {"scenario",
                 [&](const json& v) {
                     if (!v.is_string()) throw InvalidConfig("expected a scenario name");
                     c.scenario = scenario_from_string(v.get<std::string>());
                 }},
                {"seed", set(c.seed)},
                {"snr_authorized_db", set(c.snr_authorized_db)},
                {"snr_others_db", set(c.snr_others_db)},
                {"counts",
                 [&](const json& v) {
                     overlay(v, "counts",
                             {{"provider_train", set(c.counts.provider_train)},
                              {"surrogate_train", set(c.counts.surrogate_train)},
                              {"provider_test", set(c.counts.provider_test)},
                              {"member_eval", set(c.counts.member_eval)},
                              {"nonmember_eval", set(c.counts.nonmember_eval)}});
                 }},
                {"users",
                 [&](const json& v) {
                     overlay(v, "users",
                             {{"authorized", set(c.users.authorized)},
                              {"other_bpsk", set(c.users.other_bpsk)},
                              {"unauthorized_qpsk", set(c.users.unauthorized_qpsk)}});
                 }},
                {"noise",
                 [&](const json& v) {
                     overlay(v, "noise",
                             {{"phase_bound_rad", set(c.noise.phase_bound_rad)},
                              {"power_bound", set(c.noise.power_bound)},
                              {"noise_floor", set(c.noise.noise_floor)}});
                 }},
                {"payload",
                 [&](const json& v) {
                     if (!v.is_string()) throw InvalidConfig("expected preamble or random");
                     c.payload = rfsim::payload_from_string(v.get<std::string>());
                 }},
                {"channel",
                 [&](const json& v) {
                     overlay(v, "channel",
                             {{"device_phase_range_rad", set(c.channel.device_phase_range_rad)},
                              {"link_phase_range_rad", set(c.channel.link_phase_range_rad)},
                              {"provider_snr_spread_db", set(c.channel.provider_snr_spread_db)},
                              {"adversary_snr_offset_db", set(c.channel.adversary_snr_offset_db)},
                              {"session_phase_drift_rad", set(c.channel.session_phase_drift_rad)},
                              {"session_snr_drift_db", set(c.channel.session_snr_drift_db)}});
                 }},
                {"scaling",
                 [&](const json& v) {
                     overlay(v, "scaling",
                             {{"phase_scale", set(c.scaling.phase_scale)}, {"power_scale", set(c.scaling.power_scale)}});
                 }},
                {"classifier",
                 [&](const json& v) {
                     overlay(v, "classifier",
                             {{"epochs", set(c.classifier.epochs)},
                              {"batch_size", set(c.classifier.batch_size)},
                              {"learning_rate", set(c.classifier.learning_rate)},
                              {"shuffle", set(c.classifier.shuffle)}});
                 }},
                {"mia",
                 [&](const json& v) {
                     overlay(v, "mia",
                             {{"epochs", set(c.mia.epochs)},
                              {"batch_size", set(c.mia.batch_size)},
                              {"learning_rate", set(c.mia.learning_rate)}});
                 }},
            });
}

void to_json(json& j, const StageSeeds& s)
{
    j = json{{"data", s.data},
             {"target", s.target},
             {"surrogate", s.surrogate},
             {"membership_split", s.membership_split},
             {"mia", s.mia}};
}

void to_json(json& j, const Evaluation& e)
{
    j = json{{"target_train_accuracy", e.target_train_accuracy},
             {"target_test_accuracy", e.target_test_accuracy},
             {"surrogate_train_accuracy", e.surrogate_train_accuracy},
             {"surrogate_test_accuracy", e.surrogate_test_accuracy},
             {"paired_agreement", e.paired_agreement},
             {"target_unauthorized_acceptance", e.target_unauthorized_acceptance},
             {"confusion", e.confusion},
             {"mia_accuracy", e.mia_accuracy},
             {"member_recall", e.confusion.member_recall()},
             {"nonmember_recall", e.confusion.nonmember_recall()},
             {"nonmember_recall_authorized_later", e.nonmember_recall_authorized_later},
             {"nonmember_recall_unauthorized", e.nonmember_recall_unauthorized},
             {"mia_train_gain", e.mia_train_gain},
             {"mia_test_gain", e.mia_test_gain}};
}

void from_json(const json& j, Evaluation& e)
{
    j.at("target_train_accuracy").get_to(e.target_train_accuracy);
    j.at("target_test_accuracy").get_to(e.target_test_accuracy);
    j.at("surrogate_train_accuracy").get_to(e.surrogate_train_accuracy);
    j.at("surrogate_test_accuracy").get_to(e.surrogate_test_accuracy);
    j.at("paired_agreement").get_to(e.paired_agreement);
    j.at("target_unauthorized_acceptance").get_to(e.target_unauthorized_acceptance);
    j.at("confusion").get_to(e.confusion);
    j.at("mia_accuracy").get_to(e.mia_accuracy);
    j.at("nonmember_recall_authorized_later").get_to(e.nonmember_recall_authorized_later);
    j.at("nonmember_recall_unauthorized").get_to(e.nonmember_recall_unauthorized);
    j.at("mia_train_gain").get_to(e.mia_train_gain);
    j.at("mia_test_gain").get_to(e.mia_test_gain);
}

namespace {

json users_json(const std::vector<rfsim::UserChannels>& users)
{
    json out = json::array();
    for (const auto& u : users) {
        out.push_back({{"id", u.device.id},
                       {"modulation", rfsim::to_string(u.device.modulation)},
                       {"authorized", u.device.authorized},
                       {"device_phase_rad", u.device.phase_shift_rad},
                       {"transmit_power", u.device.transmit_power},
                       {"provider_gain", u.provider.gain},
                       {"provider_phase_rad", u.provider.phase_offset_rad},
                       {"adversary_gain", u.adversary.gain},
                       {"adversary_phase_rad", u.adversary.phase_offset_rad}});
    }
    return out;
}

}  // namespace

json report_json(const ScenarioReport& r)
{
    return json{
        {"format", "airmia-report"},
        {"version", 1},
        {"scenario", to_string(r.config.scenario)},
        {"seed", r.config.seed},
        {"config", r.config},
        {"stage_seeds", r.seeds},
        {"population",
         {{"note", "user population and channels are redrawn for every scenario and seed"},
          {"authorized", users_json(r.population.authorized)},
          {"authorized_later_session", users_json(r.population.authorized_later)},
          {"other_bpsk", users_json(r.population.other_bpsk)},
          {"unauthorized_qpsk", users_json(r.population.unauthorized_qpsk)}}},
        {"target", r.target},
        {"surrogate", r.surrogate},
        {"evaluation", r.evaluation},
        {"mia_gain_history", {{"train", r.mia_train_gain_history}, {"test", r.mia_test_gain_history}}},
    };
}

json confusion_json(const ScenarioReport& r)
{
    const auto& cm = r.evaluation.confusion;
    return json{{"scenario", to_string(r.config.scenario)},
                {"seed", r.config.seed},
                {"counts", cm.counts},
                {"rates", cm.rates},
                {"accuracy", cm.accuracy()}};
}

}  // namespace harness

}  // namespace airmia

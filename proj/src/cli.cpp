#include "airmia/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "airmia/classify.hpp"
#include "airmia/dataset_io.hpp"
#include "airmia/error.hpp"
#include "airmia/harness.hpp"
#include "airmia/json_io.hpp"

namespace airmia::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonFlags {
    std::string config_path;
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::string seeds;
    std::string out;
};

struct Resolved {
    harness::ScenarioConfig config;
    std::vector<std::uint64_t> seeds;
    fs::path out;
};

std::vector<std::uint64_t> parse_seed_list(const std::string& text)
{
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || item.front() == '-') throw InvalidConfig("bad seed '" + item + "' in --seeds");
        seeds.push_back(v);
    }
    if (seeds.empty()) throw InvalidConfig("--seeds is empty");
    return seeds;
}

// Config file < flags. The config file may also carry "out" and "seeds".
Resolved resolve(const CommonFlags& f)
{
    Resolved r;
    json doc = json::object();
    if (!f.config_path.empty()) {
        try {
            doc = json::parse(io::read_text(f.config_path));
        } catch (const LoadError& e) {
            throw InvalidConfig(e.what());
        } catch (const json::exception& e) {
            throw InvalidConfig(f.config_path + ": " + e.what());
        }
        if (!doc.is_object()) throw InvalidConfig(f.config_path + ": config must be a JSON object");
    }
    std::optional<std::string> out_from_file;
    std::optional<std::vector<std::uint64_t>> seeds_from_file;
    if (doc.contains("out")) {
        if (!doc["out"].is_string()) throw InvalidConfig("config key 'out' must be a string");
        out_from_file = doc["out"].get<std::string>();
        doc.erase("out");
    }
    if (doc.contains("seeds")) {
        try {
            seeds_from_file = doc["seeds"].get<std::vector<std::uint64_t>>();
        } catch (const json::exception&) {
            throw InvalidConfig("config key 'seeds' must be a list of non-negative integers");
        }
        doc.erase("seeds");
    }

    harness::Scenario scenario = harness::Scenario::FullStrong;
    if (doc.contains("scenario") && doc["scenario"].is_string()) {
        scenario = harness::scenario_from_string(doc["scenario"].get<std::string>());
    }
    if (!f.scenario.empty()) scenario = harness::scenario_from_string(f.scenario);
    r.config = harness::default_config(scenario, 0);
    harness::apply_config_json(doc, r.config);
    r.config.scenario = scenario;
    if (f.seed) r.config.seed = *f.seed;

    if (!f.seeds.empty()) {
        r.seeds = parse_seed_list(f.seeds);
    } else if (seeds_from_file) {
        r.seeds = *seeds_from_file;
    } else {
        r.seeds = {r.config.seed};
    }

    if (!f.out.empty()) {
        r.out = f.out;
    } else if (out_from_file) {
        r.out = *out_from_file;
    } else if (const char* env = std::getenv("AIRMIA_OUT"); env && *env) {
        r.out = env;
    } else {
        r.out = "out";
    }
    harness::validate(r.config);
    return r;
}

void write_classifier_reports(const fs::path& dir, const classify::ClassifierReport& target,
                              const classify::ClassifierReport& surrogate)
{
    io::atomic_write_text(dir / "models" / "target_report.json", classify::report_to_json(target));
    io::atomic_write_text(dir / "models" / "surrogate_report.json", classify::report_to_json(surrogate));
}

int cmd_gen(const Resolved& r, std::ostream& out)
{
    const auto resolved = harness::apply_scenario_constraints(r.config);
    const auto artifacts = harness::stage_generate(resolved);
    const auto dir = harness::run_directory(r.out, r.config.scenario, r.config.seed);
    harness::save_artifacts(artifacts, dir, r.config.scaling);
    out << "datasets written to " << (dir / "datasets").string() << "\n";
    return kExitOk;
}

int cmd_train(const Resolved& r, std::ostream& out)
{
    const auto dir = harness::run_directory(r.out, r.config.scenario, r.config.seed);
    auto artifacts = harness::load_artifacts(dir);
    const auto target = harness::stage_train_target(r.config, artifacts);
    const auto surrogate = harness::stage_train_surrogate(r.config, artifacts);
    harness::save_artifacts(artifacts, dir, r.config.scaling);
    write_classifier_reports(dir, target, surrogate);
    out << "target test accuracy " << target.test_accuracy << ", surrogate test accuracy "
        << surrogate.test_accuracy << "\n";
    return kExitOk;
}

int cmd_attack(const Resolved& r, std::ostream& out)
{
    const auto dir = harness::run_directory(r.out, r.config.scenario, r.config.seed);
    auto artifacts = harness::load_artifacts(dir);
    if (!artifacts.target || !artifacts.surrogate || !artifacts.surrogate_train) {
        throw LoadError(dir.string(), "classifiers missing; run `train` first");
    }
    harness::ScenarioReport report;
    const auto resolved = harness::apply_scenario_constraints(r.config);
    report.config = resolved.config;
    report.seeds = harness::stage_seeds(r.config.seed);
    report.population = resolved.population;
    report.target = classify::report_from_json(io::read_text(dir / "models" / "target_report.json"),
                                               (dir / "models" / "target_report.json").string());
    report.surrogate = classify::report_from_json(io::read_text(dir / "models" / "surrogate_report.json"),
                                                  (dir / "models" / "surrogate_report.json").string());
    const auto attack = harness::stage_attack(r.config, artifacts);
    report.mia_train_gain_history = attack.train_gain;
    report.mia_test_gain_history = attack.test_gain;
    report.evaluation = harness::evaluate_artifacts(artifacts, r.config.scaling);
    harness::save_artifacts(artifacts, dir, r.config.scaling);
    harness::write_report(report, dir);
    out << mia::confusion_to_table(report.evaluation.confusion);
    return kExitOk;
}

int cmd_run(const Resolved& r, std::ostream& out)
{
    const auto report = harness::run_scenario(r.config, r.out);
    const auto dir = harness::run_directory(r.out, r.config.scenario, r.config.seed);
    out << harness::to_string(r.config.scenario) << " seed " << r.config.seed << ": target "
        << report.evaluation.target_test_accuracy << ", surrogate " << report.evaluation.surrogate_test_accuracy
        << ", MIA " << report.evaluation.mia_accuracy << " (" << report.wall_seconds << " s)\n";
    out << mia::confusion_to_table(report.evaluation.confusion);
    out << "report written to " << (dir / "report.json").string() << "\n";
    return kExitOk;
}

int cmd_run_all(const Resolved& r, std::ostream& out)
{
    const auto result = harness::run_all(r.config, r.seeds, r.out);
    for (const auto& rep : result.reports) {
        out << harness::to_string(rep.config.scenario) << " seed " << rep.config.seed << ": MIA accuracy "
            << rep.evaluation.mia_accuracy << "\n";
    }
    json summary;
    summary["seeds"] = r.seeds;
    for (const auto& [sc, acc] : result.summary.accuracies) {
        summary["scenarios"][harness::to_string(sc)] = {{"accuracies", acc},
                                                        {"median", result.summary.median_accuracy.at(sc)}};
        out << "median " << harness::to_string(sc) << ": " << result.summary.median_accuracy.at(sc) << "\n";
    }
    const auto& s = result.summary;
    summary["ordering"] = {{"full_strong_gt_same_phase", s.strong_over_same_phase},
                           {"same_phase_gt_same_power", s.same_phase_over_same_power},
                           {"same_power_gt_0.55", s.same_power_over_chance},
                           {"weak_authorized_lt_full_strong", s.weak_below_strong}};
    io::atomic_write_text(r.out / "summary.json", summary.dump(1) + "\n");
    out << "ordering " << (s.all_hold() ? "holds" : "violated") << "\n";
    return kExitOk;
}

int cmd_report(const std::string& path_arg, bool as_json, std::ostream& out)
{
    fs::path path = path_arg;
    if (fs::is_directory(path)) path /= "report.json";
    json doc;
    try {
        doc = json::parse(io::read_text(path));
    } catch (const json::exception& e) {
        throw LoadError(path.string(), std::string("malformed JSON: ") + e.what());
    }
    mia::ConfusionMatrix cm;
    std::string scenario;
    std::uint64_t seed = 0;
    try {
        const json& source = doc.contains("evaluation") ? doc.at("evaluation").at("confusion") : doc;
        source.get_to(cm);
        doc.at("scenario").get_to(scenario);
        doc.at("seed").get_to(seed);
    } catch (const json::exception& e) {
        throw LoadError(path.string(), std::string("not a report: ") + e.what());
    }
    if (as_json) {
        out << json{{"scenario", scenario}, {"seed", seed}, {"counts", cm.counts}, {"rates", cm.rates},
                    {"accuracy", cm.accuracy()}}
                   .dump(1)
            << "\n";
    } else {
        out << "scenario " << scenario << ", seed " << seed << "\n" << mia::confusion_to_table(cm);
    }
    return kExitOk;
}

void add_common(CLI::App* sub, CommonFlags& f, bool multi_seed)
{
    sub->add_option("--config", f.config_path, "JSON config file");
    sub->add_option("--scenario", f.scenario, "full-strong | same-power | same-phase | weak-authorized")
        ->check(CLI::IsMember({"full-strong", "same-power", "same-phase", "weak-authorized"}));
    if (multi_seed) {
        sub->add_option("--seeds", f.seeds, "comma-separated seed list");
    } else {
        sub->add_option("--seed", f.seed, "run seed");
    }
    sub->add_option("--out", f.out, "output root (default $AIRMIA_OUT or ./out)");
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Over-the-air membership inference against a wireless signal classifier", "airmia"};
    app.require_subcommand(1, 1);

    CommonFlags flags;
    auto* gen = app.add_subcommand("gen", "generate the datasets of one scenario");
    auto* train = app.add_subcommand("train", "train the target and surrogate classifiers");
    auto* attack = app.add_subcommand("attack", "train and evaluate the membership inference model");
    auto* run = app.add_subcommand("run", "run one scenario end to end");
    auto* run_all = app.add_subcommand("run-all", "run all scenarios for several seeds");
    for (auto* sub : {gen, train, attack, run}) add_common(sub, flags, false);
    add_common(run_all, flags, true);

    auto* report = app.add_subcommand("report", "print the confusion matrix of a stored report");
    std::string report_path;
    bool as_json = false;
    report->add_option("path", report_path, "report.json or its run directory")->required();
    report->add_flag("--json", as_json, "machine-readable output");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitConfig;
    }

    try {
        if (report->parsed()) return cmd_report(report_path, as_json, out);
        const auto resolved = resolve(flags);
        if (gen->parsed()) return cmd_gen(resolved, out);
        if (train->parsed()) return cmd_train(resolved, out);
        if (attack->parsed()) return cmd_attack(resolved, out);
        if (run->parsed()) return cmd_run(resolved, out);
        if (run_all->parsed()) return cmd_run_all(resolved, out);
    } catch (const InvalidConfig& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    err << app.help();
    return kExitConfig;
}

int dispatch(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return dispatch(args, std::cout, std::cerr);
}

}  // namespace airmia::cli

// Command-line front end: lists registered experiments and runs one with
// parameter overrides, printing a key=value summary plus the files written.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skewrot/errors.hpp"
#include "skewrot/experiments.hpp"

namespace {

using nlohmann::json;
using skewrot::ConfigError;
namespace exps = skewrot::experiments;

struct RunConfig {
    std::string experiment;
    std::string out_dir;
    exps::Params params;
    skewrot::Exec exec = skewrot::Exec::parallel;
};

std::string value_to_string(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void load_config(const std::string& path, RunConfig& run, bool& exec_from_config) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config " + path + ": top level must be an object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& key = it.key();
        if (key == "experiment") {
            run.experiment = it.value().get<std::string>();
        } else if (key == "out_dir") {
            run.out_dir = it.value().get<std::string>();
        } else if (key == "exec") {
            const std::string mode = it.value().get<std::string>();
            if (mode == "serial")
                run.exec = skewrot::Exec::serial;
            else if (mode == "parallel")
                run.exec = skewrot::Exec::parallel;
            else
                throw ConfigError("config exec must be \"serial\" or \"parallel\", got " + mode);
            exec_from_config = true;
        } else if (key == "params") {
            if (!it.value().is_object())
                throw ConfigError("config params must be an object of key/value pairs");
            for (auto pit = it.value().begin(); pit != it.value().end(); ++pit)
                run.params.set(pit.key(), value_to_string(pit.value()));
        } else {
            throw ConfigError("config " + path + ": unknown key \"" + key + "\"");
        }
    }
}

int run_command(const std::string& config_path, const std::string& experiment,
                const std::vector<std::string>& sets, const std::string& out_flag, bool serial) {
    RunConfig run;
    bool exec_from_config = false;
    if (!config_path.empty()) load_config(config_path, run, exec_from_config);
    if (!experiment.empty()) run.experiment = experiment;
    if (run.experiment.empty())
        throw ConfigError("no experiment selected: pass --experiment or a config with one");

    for (const std::string& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("--set expects key=value, got \"" + kv + "\"");
        run.params.set(kv.substr(0, eq), kv.substr(eq + 1));
    }

    if (!out_flag.empty()) {
        run.out_dir = out_flag;
    } else if (run.out_dir.empty()) {
        const char* env = std::getenv("OUTPUT_DIR");
        run.out_dir = env && *env ? env : "out";
    }
    if (serial) run.exec = skewrot::Exec::serial;

    const exps::Result result = exps::run_experiment(run.experiment, run.params, run.out_dir,
                                                     run.exec);
    std::printf("experiment=%s\n", run.experiment.c_str());
    for (const auto& [k, v] : result.summary) std::printf("%s=%s\n", k.c_str(), v.c_str());
    for (const auto& path : result.outputs) std::printf("output=%s\n", path.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"skew-rotation products: exact maps, orbit experiments, square dynamics"};
    app.require_subcommand(1);

    CLI::App* list = app.add_subcommand("list", "list available experiments");

    CLI::App* run = app.add_subcommand("run", "run one experiment");
    std::string config_path, experiment, out_flag;
    std::vector<std::string> sets;
    bool serial = false;
    run->add_option("--config", config_path, "JSON config file");
    run->add_option("--experiment,-e", experiment, "experiment name (see `list`)");
    run->add_option("--set,-s", sets, "override parameter, key=value (repeatable)");
    run->add_option("--out,-o", out_flag, "output directory (default: $OUTPUT_DIR or ./out)");
    run->add_flag("--serial", serial, "force the serial execution path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (list->parsed()) {
            for (const auto& e : exps::registry())
                std::printf("%-18s %s\n", e.name.c_str(), e.description.c_str());
            return 0;
        }
        return run_command(config_path, experiment, sets, out_flag, serial);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

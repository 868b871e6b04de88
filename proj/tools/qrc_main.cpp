// Copyright 2026 The qrc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run sweeps, validate configs, regenerate plots.
//
//   qrc run --config configs/fig7.json --out results --jobs 4
//   qrc plot --csv results/fig7.csv --recipe fig7 --out plots
//   qrc validate --config configs/fig7.json
//
// Exit codes: 0 success, 1 config (or usage) error, 2 partial failures.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "qrc/experiment.hpp"
#include "qrc/plot.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kPartialFailure = 2;

int run_command(const std::string& config_path, const std::filesystem::path& out_dir, unsigned jobs) {
    qrc::ExperimentConfig config;
    try {
        config = qrc::load_config(config_path);
    } catch (const qrc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }

    std::filesystem::create_directories(out_dir);
    const auto csv_path = out_dir / config.csv_name;
    const auto partial_path = std::filesystem::path(csv_path.string() + ".partial");

    qrc::SweepOutcome outcome;
    {
        std::ofstream partial(partial_path);
        if (!partial) {
            std::cerr << "cannot write " << partial_path << '\n';
            return kConfigError;
        }
        qrc::SweepOptions options;
        options.jobs = jobs;
        options.stream = &partial;
        outcome = qrc::run_sweep(config, options);
    }
    {
        std::ofstream out(csv_path);
        qrc::write_csv(out, outcome, config.training.tau_max);
    }
    std::filesystem::remove(partial_path);

    std::cerr << config.name << ": " << outcome.results.size() << " rows written to " << csv_path.string();
    if (outcome.failures > 0) {
        std::cerr << " (" << outcome.failures << " error rows)\n";
        for (const auto& r : outcome.results) {
            if (r.error) std::cerr << "  " << *r.error << '\n';
        }
        return kPartialFailure;
    }
    std::cerr << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spin-network quantum reservoir computing: sweeps and plots"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* run = app.add_subcommand("run", "Run a parameter sweep and write its CSV");
    run->add_option("--config", config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    std::string csv_path;
    std::string recipe;
    std::string plot_out = ".";
    auto* plot = app.add_subcommand("plot", "Render SVG figures from a sweep CSV");
    plot->add_option("--csv", csv_path, "Sweep CSV")->required()->check(CLI::ExistingFile);
    plot->add_option("--recipe", recipe, "Figure recipe")->required()->check(CLI::IsMember({"fig4", "fig5", "fig6", "fig7"}));
    plot->add_option("--out", plot_out, "Output directory");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a config without running it");
    validate->add_option("--config", validate_path, "JSON experiment config")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kConfigError;
    }

    if (*run) return run_command(config_path, out_dir, jobs);

    if (*plot) {
        try {
            std::cout << qrc::emit_plots(csv_path, recipe, plot_out).string() << '\n';
            return kOk;
        } catch (const std::exception& e) {
            std::cerr << "plot error: " << e.what() << '\n';
            return kConfigError;
        }
    }

    try {
        const auto config = qrc::load_config(validate_path);
        const auto units = config.points().size() * config.seeds.size();
        std::cout << config.name << ": ok (" << units << " simulations, " << units * config.n_measurements.size()
                  << " rows)\n";
        return kOk;
    } catch (const qrc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    }
}

// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
//
// qhdw command line: scenario runner, verification harness, parameter sweeps.
//   qhdw run <config.cfg>
//   qhdw verify [all|identities|oracle|covariant]
//   qhdw sweep <config.cfg> --param <section.key> --values v1,v2,...
// QHDW_OUT overrides the output root. Exit codes: 0 success, 1 failed
// verification, 2 invalid input, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "qhdw/config.hpp"
#include "qhdw/errors.hpp"
#include "qhdw/scenario.hpp"
#include "qhdw/verify.hpp"
#include "qhdw/version.hpp"

namespace {

std::optional<std::filesystem::path> output_root_override(const std::string& cli_out) {
    if (!cli_out.empty()) return std::filesystem::path(cli_out);
    if (const char* env = std::getenv("QHDW_OUT")) return std::filesystem::path(env);
    return std::nullopt;
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw qhdw::ValidationError("--values: not a number: '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw qhdw::ValidationError("--values: empty list");
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qhdw: 1D quantum-hydrodynamics workbench"};
    app.set_version_flag("--version", QHDW_VERSION);
    app.require_subcommand(1);

    std::string cfg_path, suite = "all", param, values_csv, out_dir;

    auto* run = app.add_subcommand("run", "run a scenario from a config file");
    run->add_option("config", cfg_path, "scenario config file")->required();
    run->add_option("--out", out_dir, "output root (overrides config and QHDW_OUT)");

    auto* verify = app.add_subcommand("verify", "run the verification suites");
    verify->add_option("suite", suite, "all | identities | oracle | covariant");
    verify->add_option("--out", out_dir, "directory for the written report");

    auto* sweep = app.add_subcommand("sweep", "re-run a scenario over a parameter range");
    sweep->add_option("config", cfg_path, "scenario config file")->required();
    sweep->add_option("--param", param, "dotted config key, e.g. physics.c")->required();
    sweep->add_option("--values", values_csv, "comma-separated numeric values")->required();
    sweep->add_option("--out", out_dir, "output root (overrides config and QHDW_OUT)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            qhdw::RawConfig cfg = qhdw::parse_config_file(cfg_path);
            auto dir = qhdw::run_scenario(cfg, output_root_override(out_dir));
            std::cout << "wrote " << dir.string() << "\n";
            return 0;
        }
        if (verify->parsed()) {
            auto suites = qhdw::verify_named(suite);
            qhdw::print_report(std::cout, suites);
            auto root = output_root_override(out_dir).value_or(std::filesystem::path("."));
            std::filesystem::create_directories(root);
            std::ofstream report(root / "verify_report.txt");
            qhdw::print_report(report, suites);
            bool ok = qhdw::all_pass(suites);
            std::cout << (ok ? "all criteria passed" : "criteria FAILED") << "\n";
            return ok ? 0 : 1;
        }
        if (sweep->parsed()) {
            qhdw::RawConfig cfg = qhdw::parse_config_file(cfg_path);
            auto res = qhdw::sweep(cfg, param, parse_values(values_csv), output_root_override(out_dir));
            std::cout << param << "  " << res.metric_name << "  conserved_drift\n";
            for (const auto& r : res.rows)
                std::cout << r.value << "  " << r.error_metric << "  " << r.conserved_drift << "\n";
            if (res.slope)
                std::cout << "log-log slope: " << *res.slope << "\n";
            std::cout << "summary: " << res.summary_csv.string() << "\n";
            return 0;
        }
    } catch (const qhdw::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const qhdw::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "unexpected failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

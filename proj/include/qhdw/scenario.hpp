// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qhdw/config.hpp"
#include "qhdw/grid.hpp"
#include "qhdw/madelung.hpp"

namespace qhdw {

Grid1D make_grid(const ScenarioSpec& s);
ScalarField make_potential(const ScenarioSpec& s, const Grid1D& g);
/// Initial (rho, S) for the configured profile; ground-state and coherent
/// profiles solve the discrete Hamiltonian eigenproblem.
MadelungState make_initial_state(const ScenarioSpec& s, const Grid1D& g, const ScalarField& V);

/// Run one scenario; creates (and returns) the output directory, writing
/// snapshot CSVs, a `meta` file and a gnuplot script. Numerical failures
/// write <dir>/diagnostics.txt and rethrow NumericalError.
std::filesystem::path run_scenario(const RawConfig& cfg,
                                   const std::optional<std::filesystem::path>& out_root = {});

struct SweepRow {
    double value = 0.0;
    double error_metric = 0.0;   ///< scenario-defined reference distance
    double conserved_drift = 0.0;
    std::filesystem::path run_dir;
};

struct SweepResult {
    std::string parameter;
    std::string metric_name;
    std::vector<SweepRow> rows;
    std::optional<double> slope; ///< log-log fit of error_metric vs value
    std::filesystem::path summary_csv;
};

/// Re-run the scenario once per value of the (numeric) dotted config key,
/// collecting terminal errors and conserved-quantity drifts, plus a fitted
/// log-log slope where the scenario defines a reference:
///  - scenario.dt on madelung/compare: self-convergence against a dt/4 run;
///  - physics.c on relativistic: distance to the Madelung solution;
///  - scenario.kernel_scale on nonlocal-study: truncation residual.
SweepResult sweep(const RawConfig& base, const std::string& parameter,
                  const std::vector<double>& values,
                  const std::optional<std::filesystem::path>& out_root = {});

/// Least-squares slope of ln(y) against ln(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace qhdw

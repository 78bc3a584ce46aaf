// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhdw/params.hpp"

namespace qhdw {

/// Flat-sectioned key/value text: [section] headers, key = value lines,
/// '#' comments. Sections: grid, physics, scenario, output.
struct RawConfig {
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::string source_text;

    std::optional<std::string> get(const std::string& section, const std::string& key) const;
    void set(const std::string& section_dot_key, const std::string& value);
};

RawConfig parse_config_text(const std::string& text);
RawConfig parse_config_file(const std::filesystem::path& path);

enum class ScenarioKind { madelung, schrodinger, compare, relativistic, nonlocal_study, retarded_study };

enum class ProfileKind { gaussian, ground_state, coherent, uniform, wave };

enum class PotentialKind { none, harmonic };

/// Validated scenario description extracted from a RawConfig. Unknown keys
/// and invalid values are reported together, by section.key.
struct ScenarioSpec {
    int n = 512;
    double length = 40.0;

    PhysicalParams physics;

    ScenarioKind kind = ScenarioKind::madelung;
    double t_end = 1.0;
    double dt = 0.0; ///< 0 = automatic
    int snapshot_stride = 0; ///< 0 = automatic (~10 stored snapshots)
    std::uint64_t seed = 12345;

    PotentialKind potential = PotentialKind::none;
    double omega = 1.0;

    ProfileKind profile = ProfileKind::gaussian;
    double sigma = 1.0;
    double amplitude = 1.0;
    double pedestal = 0.0;
    double center = 0.0;
    int displacement_cells = 0;
    double rho0 = 1.0;
    double wave_amplitude = 1e-4;
    int wave_mode = 2;
    bool wave_travel = false;

    double kernel_A = 2.0, kernel_sigma1 = 1.0, kernel_B = 1.0, kernel_sigma2 = 2.0;
    double kernel_scale = 1.0;

    std::vector<double> trajectory_seeds;

    std::string output_dir = "out";

    std::uint64_t config_hash = 0;
};

ScenarioSpec scenario_from_config(const RawConfig& cfg);

const char* scenario_name(ScenarioKind k);

} // namespace qhdw

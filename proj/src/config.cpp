// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#include "qhdw/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "qhdw/errors.hpp"
#include "qhdw/io.hpp"

namespace qhdw {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

std::optional<std::string> RawConfig::get(const std::string& section, const std::string& key) const {
    auto s = sections.find(section);
    if (s == sections.end()) return std::nullopt;
    auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return k->second;
}

void RawConfig::set(const std::string& section_dot_key, const std::string& value) {
    auto dot = section_dot_key.find('.');
    if (dot == std::string::npos)
        throw ValidationError("config key must be section.key, got '" + section_dot_key + "'");
    sections[section_dot_key.substr(0, dot)][section_dot_key.substr(dot + 1)] = value;
}

RawConfig parse_config_text(const std::string& text) {
    RawConfig cfg;
    cfg.source_text = text;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ValidationError("config line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            cfg.sections[section]; // make empty sections visible
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos || section.empty())
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value inside a section");
        cfg.sections[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return cfg;
}

RawConfig parse_config_file(const std::filesystem::path& path) {
    return parse_config_text(read_file(path));
}

const char* scenario_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::madelung: return "madelung";
        case ScenarioKind::schrodinger: return "schrodinger";
        case ScenarioKind::compare: return "compare";
        case ScenarioKind::relativistic: return "relativistic";
        case ScenarioKind::nonlocal_study: return "nonlocal-study";
        case ScenarioKind::retarded_study: return "retarded-study";
    }
    return "?";
}

namespace {

class Extractor {
public:
    explicit Extractor(const RawConfig& cfg) : cfg_(cfg) {}

    double number(const std::string& sec, const std::string& key, double fallback,
                  double lo = -std::numeric_limits<double>::infinity(),
                  double hi = std::numeric_limits<double>::infinity(), bool allow_inf = false) {
        mark_known(sec, key);
        auto raw = cfg_.get(sec, key);
        if (!raw) return fallback;
        double v;
        if (*raw == "inf" || *raw == "infinity") {
            v = std::numeric_limits<double>::infinity();
        } else {
            try {
                size_t pos = 0;
                v = std::stod(*raw, &pos);
                if (pos != raw->size()) throw std::invalid_argument("trailing");
            } catch (...) {
                bad(sec, key, "not a number: '" + *raw + "'");
                return fallback;
            }
        }
        if (std::isinf(v) && !allow_inf) {
            bad(sec, key, "must be finite");
            return fallback;
        }
        if (v < lo || v > hi) {
            std::ostringstream os;
            os << "value " << *raw << " outside [" << lo << ", " << hi << "]";
            bad(sec, key, os.str());
        }
        return v;
    }

    long integer(const std::string& sec, const std::string& key, long fallback, long lo, long hi) {
        mark_known(sec, key);
        auto raw = cfg_.get(sec, key);
        if (!raw) return fallback;
        try {
            size_t pos = 0;
            long v = std::stol(*raw, &pos);
            if (pos != raw->size()) throw std::invalid_argument("trailing");
            if (v < lo || v > hi) {
                bad(sec, key, "integer out of range");
                return fallback;
            }
            return v;
        } catch (...) {
            bad(sec, key, "not an integer: '" + *raw + "'");
            return fallback;
        }
    }

    std::string text(const std::string& sec, const std::string& key, const std::string& fallback) {
        mark_known(sec, key);
        auto raw = cfg_.get(sec, key);
        return raw ? *raw : fallback;
    }

    std::string word(const std::string& sec, const std::string& key, const std::string& fallback,
                     const std::vector<std::string>& allowed) {
        mark_known(sec, key);
        auto raw = cfg_.get(sec, key);
        if (!raw) return fallback;
        if (std::find(allowed.begin(), allowed.end(), *raw) == allowed.end()) {
            std::string list;
            for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
            bad(sec, key, "'" + *raw + "' not one of {" + list + "}");
            return fallback;
        }
        return *raw;
    }

    std::vector<double> number_list(const std::string& sec, const std::string& key) {
        mark_known(sec, key);
        auto raw = cfg_.get(sec, key);
        std::vector<double> out;
        if (!raw) return out;
        std::istringstream ss(*raw);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                out.push_back(std::stod(trim(tok)));
            } catch (...) {
                bad(sec, key, "not a number list");
                return {};
            }
        }
        return out;
    }

    void bad(const std::string& sec, const std::string& key, const std::string& why) {
        problems_.push_back(sec + "." + key + ": " + why);
    }

    void finish() {
        // unknown keys are validation failures too
        for (const auto& [sec, kv] : cfg_.sections) {
            if (known_.find(sec) == known_.end()) {
                problems_.push_back(sec + ": unknown section");
                continue;
            }
            for (const auto& [key, val] : kv)
                if (!known_.at(sec).count(key)) problems_.push_back(sec + "." + key + ": unknown key");
        }
        if (!problems_.empty()) {
            std::string msg = "config validation failed:";
            for (const auto& p : problems_) msg += "\n  " + p;
            throw ValidationError(msg);
        }
    }

private:
    void mark_known(const std::string& sec, const std::string& key) { known_[sec].insert(key); }

    const RawConfig& cfg_;
    std::map<std::string, std::set<std::string>> known_;
    std::vector<std::string> problems_;
};

} // namespace

ScenarioSpec scenario_from_config(const RawConfig& cfg) {
    Extractor ex(cfg);
    ScenarioSpec s;

    s.n = static_cast<int>(ex.integer("grid", "n", 512, 8, 1 << 20));
    if (s.n & (s.n - 1)) ex.bad("grid", "n", "must be a power of two");
    s.length = ex.number("grid", "length", 40.0, 1e-12, 1e12);

    s.physics.hbar = ex.number("physics", "hbar", 1.0, 1e-300, 1e12);
    s.physics.mass = ex.number("physics", "mass", 1.0, 1e-300, 1e12);
    s.physics.kT = ex.number("physics", "kT", 0.0, 0.0, 1e12);
    s.physics.c = ex.number("physics", "c", std::numeric_limits<double>::infinity(), 1e-12, std::numeric_limits<double>::infinity(), true);
    s.physics.a = ex.number("physics", "a", 0.0, 0.0, 1e12);
    s.physics.rho_floor = ex.number("physics", "rho_floor", 1e-12, 1e-300, 1.0);

    std::string name = ex.word("scenario", "name", "madelung",
                               {"madelung", "schrodinger", "compare", "relativistic",
                                "nonlocal-study", "retarded-study"});
    if (name == "madelung") s.kind = ScenarioKind::madelung;
    else if (name == "schrodinger") s.kind = ScenarioKind::schrodinger;
    else if (name == "compare") s.kind = ScenarioKind::compare;
    else if (name == "relativistic") s.kind = ScenarioKind::relativistic;
    else if (name == "nonlocal-study") s.kind = ScenarioKind::nonlocal_study;
    else s.kind = ScenarioKind::retarded_study;

    s.t_end = ex.number("scenario", "t_end", 1.0, 1e-12, 1e12);
    s.dt = ex.number("scenario", "dt", 0.0, 0.0, 1e12);
    s.snapshot_stride = static_cast<int>(ex.integer("scenario", "snapshot_stride", 0, 0, 1L << 40));
    s.seed = static_cast<std::uint64_t>(ex.integer("scenario", "seed", 12345, 0, std::numeric_limits<long>::max()));

    std::string pot = ex.word("scenario", "potential", "none", {"none", "harmonic"});
    s.potential = pot == "none" ? PotentialKind::none : PotentialKind::harmonic;
    s.omega = ex.number("scenario", "omega", 1.0, 0.0, 1e12);

    std::string prof = ex.word("scenario", "profile", "gaussian",
                               {"gaussian", "ground-state", "coherent", "uniform", "wave"});
    if (prof == "gaussian") s.profile = ProfileKind::gaussian;
    else if (prof == "ground-state") s.profile = ProfileKind::ground_state;
    else if (prof == "coherent") s.profile = ProfileKind::coherent;
    else if (prof == "uniform") s.profile = ProfileKind::uniform;
    else s.profile = ProfileKind::wave;

    s.sigma = ex.number("scenario", "sigma", 1.0, 1e-12, 1e12);
    s.amplitude = ex.number("scenario", "amplitude", 1.0, 0.0, 1e12);
    s.pedestal = ex.number("scenario", "pedestal", 0.0, 0.0, 1e12);
    s.center = ex.number("scenario", "center", 0.0);
    s.displacement_cells = static_cast<int>(ex.integer("scenario", "displacement_cells", 0, -(1 << 20), 1 << 20));
    s.rho0 = ex.number("scenario", "rho0", 1.0, 0.0, 1e12);
    s.wave_amplitude = ex.number("scenario", "wave_amplitude", 1e-4, 0.0, 1e12);
    s.wave_mode = static_cast<int>(ex.integer("scenario", "wave_mode", 2, 1, 1 << 19));
    s.wave_travel = ex.integer("scenario", "wave_travel", 0, 0, 1) != 0;

    s.kernel_A = ex.number("scenario", "kernel_A", 2.0);
    s.kernel_sigma1 = ex.number("scenario", "kernel_sigma1", 1.0, 1e-12, 1e12);
    s.kernel_B = ex.number("scenario", "kernel_B", 1.0);
    s.kernel_sigma2 = ex.number("scenario", "kernel_sigma2", 2.0, 1e-12, 1e12);
    s.kernel_scale = ex.number("scenario", "kernel_scale", 1.0, 1e-12, 1e12);

    s.trajectory_seeds = ex.number_list("scenario", "trajectory_seeds");
    s.output_dir = ex.text("output", "dir", "out");

    ex.finish(); // may throw with the full problem list

    s.config_hash = fnv1a64(cfg.source_text);
    s.physics.validate();
    return s;
}

} // namespace qhdw

// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "qhdw/config.hpp"
#include "qhdw/io.hpp"
#include "qhdw/scenario.hpp"

using namespace qhdw;
namespace fs = std::filesystem;

namespace {

const char* kMiniMadelung =
    "[grid]\n"
    "n = 128\n"
    "length = 20\n"
    "[physics]\n"
    "kT = 0\n"
    "[scenario]\n"
    "name = madelung\n"
    "profile = gaussian\n"
    "sigma = 1\n"
    "amplitude = 0.4\n"
    "pedestal = 1e-8\n"
    "t_end = 0.05\n"
    "[output]\n"
    "dir = out\n";

fs::path fresh_dir(const char* name) {
    fs::path p = fs::temp_directory_path() / name;
    fs::remove_all(p);
    return p;
}

} // namespace

TEST_CASE("config parsing: sections, comments, values") {
    RawConfig cfg = parse_config_text("# comment\n[grid]\nn = 64 # trailing\nlength = 10\n"
                                      "[physics]\nc = inf\n[scenario]\nname = madelung\n");
    CHECK(cfg.get("grid", "n") == std::string("64"));
    CHECK(cfg.get("physics", "c") == std::string("inf"));
    CHECK(!cfg.get("grid", "missing"));
    ScenarioSpec s = scenario_from_config(cfg);
    CHECK(s.n == 64);
    CHECK(!s.physics.finite_c());
}

TEST_CASE("config validation names offending keys") {
    RawConfig cfg = parse_config_text("[grid]\nn = 64\nlength = 10\n[physics]\nkT = -1\n");
    CHECK_THROWS_WITH_AS(scenario_from_config(cfg), doctest::Contains("physics.kT"),
                         ValidationError);

    RawConfig unk = parse_config_text("[grid]\nn = 64\nlength = 10\n[scenario]\nbogus_key = 1\n");
    CHECK_THROWS_WITH_AS(scenario_from_config(unk), doctest::Contains("bogus_key"),
                         ValidationError);

    RawConfig badname = parse_config_text("[scenario]\nname = warpdrive\n");
    CHECK_THROWS_WITH_AS(scenario_from_config(badname), doctest::Contains("warpdrive"),
                         ValidationError);

    RawConfig badn = parse_config_text("[grid]\nn = 100\nlength = 10\n");
    CHECK_THROWS_WITH_AS(scenario_from_config(badn), doctest::Contains("power of two"),
                         ValidationError);
}

TEST_CASE("csv writer uses 17 significant digits") {
    fs::path dir = fresh_dir("qhdw_csv_test");
    fs::create_directories(dir);
    double v = 0.1234567890123456789;
    write_csv(dir / "t.csv", {"a"}, {{v}});
    std::ifstream in(dir / "t.csv");
    std::string header, line;
    std::getline(in, header);
    std::getline(in, line);
    CHECK(header == "a");
    CHECK(std::stod(line) == v); // bit-stable roundtrip
    fs::remove_all(dir);
}

TEST_CASE("madelung scenario writes snapshots, observables, meta and plot script") {
    fs::path dir = fresh_dir("qhdw_run_madelung");
    RawConfig cfg = parse_config_text(kMiniMadelung);
    fs::path out = run_scenario(cfg, dir);
    CHECK(fs::exists(out / "density_t000.csv"));
    CHECK(fs::exists(out / "observables.csv"));
    CHECK(fs::exists(out / "meta"));
    CHECK(fs::exists(out / "plot.gp"));

    std::string meta = read_file(out / "meta");
    CHECK(meta.find("config_hash") != std::string::npos);
    CHECK(meta.find("version") != std::string::npos);
    CHECK(meta.find("grid_n = 128") != std::string::npos);
    CHECK(meta.find("dt =") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("reruns are bit-identical") {
    fs::path dir = fresh_dir("qhdw_rerun");
    RawConfig cfg = parse_config_text(kMiniMadelung);
    fs::path a = run_scenario(cfg, dir / "a");
    fs::path b = run_scenario(cfg, dir / "b");
    CHECK(hash_directory(a) == hash_directory(b));
    fs::remove_all(dir);
}

TEST_CASE("compare scenario writes the error-vs-time table") {
    fs::path dir = fresh_dir("qhdw_run_compare");
    RawConfig cfg = parse_config_text(kMiniMadelung);
    cfg.set("scenario.name", "compare");
    cfg.set("scenario.t_end", "0.1");
    fs::path out = run_scenario(cfg, dir);
    CHECK(fs::exists(out / "error_vs_time.csv"));
    std::string head = read_file(out / "error_vs_time.csv").substr(0, 64);
    CHECK(head.find("rel_l2") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("relativistic scenario writes conserved integrals") {
    fs::path dir = fresh_dir("qhdw_run_rel");
    RawConfig cfg = parse_config_text(
        "[grid]\nn = 64\nlength = 12.566370614359172\n"
        "[physics]\nkT = 0.01\nc = 10\n"
        "[scenario]\nname = relativistic\nprofile = wave\nrho0 = 1\nwave_amplitude = 1e-3\n"
        "wave_mode = 2\nt_end = 0.05\n");
    fs::path out = run_scenario(cfg, dir);
    CHECK(fs::exists(out / "conserved.csv"));
    CHECK(fs::exists(out / "density_t000.csv"));
    fs::remove_all(dir);
}

TEST_CASE("numerical abort writes diagnostics and throws NumericalError") {
    fs::path dir = fresh_dir("qhdw_run_abort");
    RawConfig cfg = parse_config_text(kMiniMadelung);
    cfg.set("scenario.dt", "0.5"); // way past the stability limit
    cfg.set("scenario.t_end", "50");
    CHECK_THROWS_AS(run_scenario(cfg, dir), NumericalError);
    CHECK(fs::exists(dir / "diagnostics.txt"));
    fs::remove_all(dir);
}

TEST_CASE("sweep over dt reports fourth-order self-convergence") {
    fs::path dir = fresh_dir("qhdw_sweep_dt");
    RawConfig cfg = parse_config_text(kMiniMadelung);
    cfg.set("scenario.t_end", "0.1");
    SweepResult res = sweep(cfg, "scenario.dt", {4e-3, 2e-3, 1e-3}, dir);
    REQUIRE(res.rows.size() == 3);
    CHECK(fs::exists(res.summary_csv));
    REQUIRE(res.slope.has_value());
    CHECK(*res.slope == doctest::Approx(4.0).epsilon(0.15));
    fs::remove_all(dir);
}

TEST_CASE("sweep rejects non-numeric parameters") {
    RawConfig cfg = parse_config_text(kMiniMadelung);
    CHECK_THROWS_AS(sweep(cfg, "scenario.profile", {1.0}, fresh_dir("qhdw_sweep_bad")),
                    ValidationError);
    CHECK_THROWS_AS(sweep(cfg, "nodots", {1.0}, fresh_dir("qhdw_sweep_bad2")), ValidationError);
}

TEST_CASE("sweep over kernel scale recovers the fourth-order truncation slope") {
    fs::path dir = fresh_dir("qhdw_sweep_kernel");
    RawConfig cfg = parse_config_text(
        "[grid]\nn = 512\nlength = 40\n"
        "[physics]\nkT = 1\nrho_floor = 1e-30\n"
        "[scenario]\nname = nonlocal-study\namplitude = 1\n");
    SweepResult res = sweep(cfg, "scenario.kernel_scale", {1.0, 0.5, 0.25}, dir);
    REQUIRE(res.slope.has_value());
    CHECK(*res.slope == doctest::Approx(4.0).epsilon(0.075));
    fs::remove_all(dir);
}

// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#include "qhdw/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qhdw/covariant.hpp"
#include "qhdw/io.hpp"
#include "qhdw/nonlocal.hpp"
#include "qhdw/potentials.hpp"
#include "qhdw/schrodinger.hpp"
#include "qhdw/spectral.hpp"
#include "qhdw/version.hpp"

namespace qhdw {

namespace fs = std::filesystem;

Grid1D make_grid(const ScenarioSpec& s) { return Grid1D(s.n, s.length); }

ScalarField make_potential(const ScenarioSpec& s, const Grid1D& g) {
    if (s.potential == PotentialKind::none) return ScalarField(g);
    double mw2 = s.physics.mass * s.omega * s.omega;
    return ScalarField::from_function(g, [mw2](double x) { return 0.5 * mw2 * x * x; });
}

MadelungState make_initial_state(const ScenarioSpec& s, const Grid1D& g, const ScalarField& V) {
    switch (s.profile) {
        case ProfileKind::gaussian: {
            double sg = s.sigma, A = s.amplitude, b = s.pedestal, x0 = s.center;
            ScalarField rho = ScalarField::from_function(g, [=](double x) {
                double u = (x - x0) / sg;
                return A * std::exp(-0.5 * u * u) + b;
            });
            return MadelungState(rho, ScalarField(g), 0.0);
        }
        case ProfileKind::ground_state:
        case ProfileKind::coherent: {
            if (s.potential == PotentialKind::none)
                throw ValidationError("scenario.profile: ground-state/coherent profiles need "
                                      "scenario.potential = harmonic");
            GroundState gs = discrete_ground_state(g, V, s.physics);
            int shift = s.profile == ProfileKind::coherent ? s.displacement_cells : 0;
            ScalarField rho(g);
            for (int j = 0; j < g.n; ++j) {
                int src = ((j - shift) % g.n + g.n) % g.n;
                rho[j] = std::norm(gs.psi[src]);
            }
            return MadelungState(rho, ScalarField(g), 0.0);
        }
        case ProfileKind::uniform: {
            ScalarField rho(g);
            for (int j = 0; j < g.n; ++j) rho[j] = s.rho0;
            return MadelungState(rho, ScalarField(g), 0.0);
        }
        case ProfileKind::wave: {
            double k = 2.0 * std::numbers::pi * s.wave_mode / g.length;
            double A = s.wave_amplitude;
            ScalarField rho = ScalarField::from_function(
                g, [&](double x) { return s.rho0 * (1.0 + A * std::cos(k * x)); });
            ScalarField S(g);
            if (s.wave_travel) {
                double cs = std::sqrt(s.physics.kT / s.physics.mass);
                // right-moving acoustic wave: v = cs A cos(kx), S = m cs A sin(kx)/k
                for (int j = 0; j < g.n; ++j)
                    S[j] = s.physics.mass * cs * A * std::sin(k * g.x(j)) / k;
            }
            return MadelungState(rho, S, 0.0);
        }
    }
    throw ValidationError("scenario.profile: unhandled profile");
}

namespace {

struct StepPlan {
    double dt;
    long long steps;
    int stride;
};

StepPlan plan_steps(const ScenarioSpec& s, const Grid1D& g, double dt_auto, int max_stride = 0) {
    double dt = s.dt > 0.0 ? s.dt : dt_auto;
    auto steps = static_cast<long long>(std::ceil(s.t_end / dt - 1e-12));
    if (steps < 1) steps = 1;
    dt = s.t_end / static_cast<double>(steps);
    int stride = s.snapshot_stride > 0 ? s.snapshot_stride
                                       : static_cast<int>(std::max<long long>(1, steps / 10));
    if (max_stride > 0) stride = std::min(stride, max_stride);
    (void)g;
    return {dt, steps, stride};
}

void write_plot_script(const fs::path& dir, const std::string& datafile, const std::string& ylabel) {
    std::ofstream out(dir / "plot.gp");
    out << "# gnuplot script\n"
        << "set datafile separator ','\n"
        << "set key autotitle columnhead\n"
        << "set xlabel 'x'\n"
        << "set ylabel '" << ylabel << "'\n"
        << "plot '" << datafile << "' using 1:2 with lines\n"
        << "pause -1\n";
}

void write_meta_file(const fs::path& dir, const ScenarioSpec& s, double dt, long long steps,
                     const std::vector<std::pair<std::string, std::string>>& extra = {}) {
    std::vector<std::pair<std::string, std::string>> kv;
    char hashbuf[32];
    std::snprintf(hashbuf, sizeof(hashbuf), "%016llx",
                  static_cast<unsigned long long>(s.config_hash));
    kv.emplace_back("config_hash", hashbuf);
    kv.emplace_back("version", QHDW_VERSION);
    kv.emplace_back("scenario", scenario_name(s.kind));
    kv.emplace_back("grid_n", std::to_string(s.n));
    kv.emplace_back("grid_length", format_g17(s.length));
    kv.emplace_back("dt", format_g17(dt));
    kv.emplace_back("steps", std::to_string(steps));
    kv.emplace_back("rho_floor", format_g17(s.physics.rho_floor));
    kv.emplace_back("recovery_tol", "1e-12");
    kv.emplace_back("seed", std::to_string(s.seed));
    for (const auto& e : extra) kv.push_back(e);
    write_meta(dir / "meta", kv);
}

std::string snap_name(size_t idx) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "density_t%03zu.csv", idx);
    return buf;
}

std::vector<double> xs_of(const Grid1D& g) {
    std::vector<double> xs(static_cast<size_t>(g.n));
    for (int j = 0; j < g.n; ++j) xs[static_cast<size_t>(j)] = g.x(j);
    return xs;
}

void abort_with_diagnostics(const fs::path& dir, const std::string& diag) {
    std::ofstream out(dir / "diagnostics.txt");
    out << diag << "\n";
    out.close();
    throw NumericalError(diag);
}

fs::path run_madelung(const ScenarioSpec& s, const fs::path& dir) {
    Grid1D g = make_grid(s);
    ScalarField V = make_potential(s, g);
    MadelungState init = make_initial_state(s, g, V);
    int max_stride = s.trajectory_seeds.empty() ? 0 : 10;
    StepPlan plan = plan_steps(s, g, 0.1 * s.physics.mass * g.dx * g.dx / s.physics.hbar, max_stride);

    IntegrateOptions opts;
    opts.dt = plan.dt;
    opts.snapshot_stride = plan.stride;
    MadelungSolution sol = integrate(init, s.physics, V, s.t_end, opts);
    if (sol.aborted) abort_with_diagnostics(dir, sol.diagnostic);

    auto xs = xs_of(g);
    std::vector<double> times, mass, vmax;
    for (size_t i = 0; i < sol.states.size(); ++i) {
        const auto& st = sol.states[i];
        ScalarField v = velocity_field(st, s.physics);
        write_csv(dir / snap_name(i), {"x", "rho", "S", "v"},
                  {xs, st.rho.values, st.S.values, v.values});
        times.push_back(st.time);
        mass.push_back(integrate_field(st.rho));
        vmax.push_back(max_abs(v));
    }
    write_csv(dir / "observables.csv", {"t", "mass", "max_v"}, {times, mass, vmax});

    if (!s.trajectory_seeds.empty()) {
        Trajectory tr = bohmian_trajectories(sol, s.trajectory_seeds, s.physics);
        std::vector<std::string> header{"t"};
        std::vector<std::vector<double>> cols{tr.times};
        for (size_t k = 0; k < tr.positions.size(); ++k) {
            header.push_back("x" + std::to_string(k));
            cols.push_back(tr.positions[k]);
        }
        write_csv(dir / "trajectories.csv", header, cols);
    }

    write_meta_file(dir, s, plan.dt, sol.total_steps);
    write_plot_script(dir, snap_name(sol.states.size() - 1), "rho");
    return dir;
}

fs::path run_schrodinger(const ScenarioSpec& s, const fs::path& dir) {
    Grid1D g = make_grid(s);
    ScalarField V = make_potential(s, g);
    MadelungState init = make_initial_state(s, g, V);
    ComplexField psi = inverse_madelung(init.rho, init.S, s.physics);

    double dt_auto = 0.1 * s.physics.mass * g.dx * g.dx / s.physics.hbar;
    double vmax = max_abs(V);
    if (vmax > 0.0) dt_auto = std::min(dt_auto, 0.5 * std::numbers::pi * s.physics.hbar / vmax);
    StepPlan plan = plan_steps(s, g, dt_auto);

    auto xs = xs_of(g);
    std::vector<double> times{0.0}, norms{norm_squared(psi)};
    size_t snap_idx = 0;
    auto dump = [&](const ComplexField& w) {
        std::vector<double> rho(static_cast<size_t>(g.n)), re(static_cast<size_t>(g.n)),
            im(static_cast<size_t>(g.n));
        for (int j = 0; j < g.n; ++j) {
            rho[static_cast<size_t>(j)] = std::norm(w[j]);
            re[static_cast<size_t>(j)] = w[j].real();
            im[static_cast<size_t>(j)] = w[j].imag();
        }
        write_csv(dir / snap_name(snap_idx), {"x", "rho", "re_psi", "im_psi"}, {xs, rho, re, im});
        ++snap_idx;
    };
    dump(psi);
    psi = ssfm_evolve(std::move(psi), V, s.physics, plan.dt, static_cast<int>(plan.steps),
                      [&](int step, const ComplexField& w) {
                          if (step % plan.stride == 0 || step == plan.steps) {
                              dump(w);
                              times.push_back(step * plan.dt);
                              norms.push_back(norm_squared(w));
                          }
                      });
    write_csv(dir / "observables.csv", {"t", "norm"}, {times, norms});
    write_meta_file(dir, s, plan.dt, plan.steps);
    write_plot_script(dir, snap_name(snap_idx - 1), "rho");
    return dir;
}

fs::path run_compare(const ScenarioSpec& s, const fs::path& dir) {
    Grid1D g = make_grid(s);
    ScalarField V = make_potential(s, g);
    MadelungState init = make_initial_state(s, g, V);
    StepPlan plan = plan_steps(s, g, 0.1 * s.physics.mass * g.dx * g.dx / s.physics.hbar);

    IntegrateOptions opts;
    opts.dt = plan.dt;
    opts.snapshot_stride = plan.stride;
    MadelungSolution sol = integrate(init, s.physics, V, s.t_end, opts);
    if (sol.aborted) abort_with_diagnostics(dir, sol.diagnostic);

    ComplexField psi = inverse_madelung(init.rho, init.S, s.physics);
    double guard = max_abs(V) > 0.0 ? 0.5 * std::numbers::pi * s.physics.hbar / max_abs(V) : 1e300;
    double dt_target = std::min({0.5 * plan.dt, guard});

    auto xs = xs_of(g);
    std::vector<double> times, errs, mass, norms;
    times.push_back(0.0);
    errs.push_back(0.0);
    mass.push_back(integrate_field(init.rho));
    norms.push_back(norm_squared(psi));
    write_csv(dir / snap_name(0), {"x", "rho_madelung", "rho_schrodinger"},
              {xs, init.rho.values, init.rho.values});

    for (size_t i = 1; i < sol.states.size(); ++i) {
        const auto& st = sol.states[i];
        double span = st.time - sol.states[i - 1].time;
        int k = std::max(1, static_cast<int>(std::ceil(span / dt_target - 1e-12)));
        psi = ssfm_evolve(std::move(psi), V, s.physics, span / k, k);
        MadelungFields mf = madelung_transform(psi, s.physics);
        write_csv(dir / snap_name(i), {"x", "rho_madelung", "rho_schrodinger"},
                  {xs, st.rho.values, mf.rho.values});
        times.push_back(st.time);
        errs.push_back(rel_l2_diff(st.rho, mf.rho));
        mass.push_back(integrate_field(st.rho));
        norms.push_back(norm_squared(psi));
    }
    write_csv(dir / "error_vs_time.csv", {"t", "rel_l2", "madelung_mass", "schrodinger_norm"},
              {times, errs, mass, norms});
    write_meta_file(dir, s, plan.dt, sol.total_steps,
                    {{"oracle", "split-step spectral"}, {"rel_l2_final", format_g17(errs.back())}});
    write_plot_script(dir, "error_vs_time.csv", "rel_l2");
    return dir;
}

fs::path run_relativistic(const ScenarioSpec& s, const fs::path& dir) {
    if (!s.physics.finite_c())
        throw ValidationError("physics.c: relativistic scenario needs a finite signal speed");
    Grid1D g = make_grid(s);
    ScalarField V = make_potential(s, g);
    MadelungState init = make_initial_state(s, g, V);
    ScalarField v0(g);
    if (s.profile == ProfileKind::wave && s.wave_travel) {
        ScalarField dS = spatial_derivative(init.S, 1);
        for (int j = 0; j < g.n; ++j) v0[j] = dS[j] / s.physics.mass;
    }
    RelFluidState rst(init.rho, v0, 0.0, s.physics.c);

    double dt_cfl = 0.4 * g.dx / s.physics.c;
    double dt_disp = 0.08 * s.physics.mass * g.dx * g.dx / s.physics.hbar;
    StepPlan plan = plan_steps(s, g, std::min(dt_cfl, dt_disp));

    RelSolution sol;
    try {
        sol = rel_integrate(rst, s.physics, V, s.t_end, plan.dt, plan.stride);
    } catch (const NumericalError& e) {
        abort_with_diagnostics(dir, e.what());
    }
    if (sol.aborted) abort_with_diagnostics(dir, sol.diagnostic);

    auto xs = xs_of(g);
    std::vector<double> times;
    for (size_t i = 0; i < sol.states.size(); ++i) {
        const auto& st = sol.states[i];
        write_csv(dir / snap_name(i), {"x", "rho", "v"}, {xs, st.rho.values, st.v.values});
        times.push_back(st.time);
    }
    write_csv(dir / "conserved.csv", {"t", "integral_E", "integral_M"},
              {times, sol.integral_E, sol.integral_M});
    write_meta_file(dir, s, sol.dt, sol.total_steps, {{"c", format_g17(s.physics.c)}});
    write_plot_script(dir, snap_name(sol.states.size() - 1), "rho");
    return dir;
}

fs::path run_nonlocal_study(const ScenarioSpec& s, const fs::path& dir) {
    Grid1D g = make_grid(s);
    ScalarField V(g);
    double k1 = 2.0 * std::numbers::pi / g.length;
    ScalarField lnrho = ScalarField::from_function(g, [&](double x) {
        return s.amplitude * (0.3 * std::cos(k1 * x) + 0.2 * std::sin(k1 * x));
    });
    ScalarField rho(g);
    for (int j = 0; j < g.n; ++j) rho[j] = std::exp(lnrho[j]);

    Kernel base = Kernel::difference_of_gaussians(s.kernel_A, s.kernel_sigma1, s.kernel_B,
                                                  s.kernel_sigma2);
    Kernel scaled = base.rescaled(s.kernel_scale);
    double a2 = interaction_length_sq(scaled);
    PhysicalParams p = s.physics;
    p.a = std::sqrt(a2);

    ScalarField f_exact = nonlocal_free_energy(rho, scaled, V, p);
    ScalarField f_trunc = truncated_free_energy(rho, p, V);
    double resid = l2_norm(f_exact - f_trunc);

    // leading non-local correction vs the exact one
    ScalarField lap = spatial_derivative(lnrho, 2);
    ScalarField lead(g), exact_delta(g);
    for (int j = 0; j < g.n; ++j) {
        lead[j] = -0.5 * p.kT * a2 * lap[j];
        exact_delta[j] = f_exact[j] - p.kT * lnrho[j] - V[j];
    }
    double lead_rel = l2_norm(exact_delta - lead) / l2_norm(lead);
    double func_rel = functional_derivative_mismatch(rho, p, V);

    write_csv(dir / "study.csv", {"kernel_scale", "a2", "residual_l2", "leading_rel_err", "functional_rel_err"},
              {{s.kernel_scale}, {a2}, {resid}, {lead_rel}, {func_rel}});
    write_meta_file(dir, s, 0.0, 0);
    write_plot_script(dir, "study.csv", "residual_l2");
    return dir;
}

fs::path run_retarded_study(const ScenarioSpec& s, const fs::path& dir) {
    if (!s.physics.finite_c())
        throw ValidationError("physics.c: retarded-study needs a finite signal speed");
    Grid1D g = make_grid(s);
    ScalarField V(g);
    PhysicalParams p = s.physics;
    Kernel kern = Kernel::difference_of_gaussians(s.kernel_A, s.kernel_sigma1, s.kernel_B,
                                                  s.kernel_sigma2);
    if (p.a == 0.0) p.a = std::sqrt(interaction_length_sq(kern));

    double pedestal = s.pedestal > 0.0 ? s.pedestal : 1e-6;
    auto rho_fn = [&](double x, double t) {
        return std::exp(-x * x) * (1.0 + 0.1 * std::sin(0.7 * t)) + pedestal;
    };

    double depth = 0.5 * g.length / p.c;
    double dt = s.dt > 0.0 ? s.dt : depth / 64.0;
    int half = static_cast<int>(std::ceil(depth / dt)) + 3;
    int count = 2 * half + 1;
    SpacetimeField hist = SpacetimeField::from_function(g, -half * dt, dt, count, rho_fn);
    int mid = half;

    ScalarField f_ret = retarded_free_energy(hist, kern, p, V, mid, RetardMode::retarded);
    ScalarField f_sym = retarded_free_energy(hist, kern, p, V, mid, RetardMode::symmetric);
    ScalarField f_inst = nonlocal_free_energy(hist.at(mid), kern, V, p);

    // static history: retardation must be irrelevant
    SpacetimeField static_hist(g, -2.0 * dt, dt);
    for (int i = 0; i < 5; ++i) static_hist.push(hist.at(mid));
    ScalarField f_static = retarded_free_energy(static_hist, kern, p, V, 2, RetardMode::retarded);

    PhysicalParams p_fast = p;
    p_fast.c = 1e6;
    SpacetimeField fast_hist = SpacetimeField::from_function(g, -2.0 * dt, dt, 5, rho_fn);
    ScalarField f_fast = retarded_free_energy(fast_hist, kern, p_fast, V, 2, RetardMode::retarded);
    ScalarField f_inst_fast = nonlocal_free_energy(fast_hist.at(2), kern, V, p_fast);

    ScalarField c35 = truncated_retarded_correction(hist, p, mid, CorrectionForm::dalembertian);
    ScalarField cdir = truncated_retarded_correction(hist, p, mid, CorrectionForm::direct_expansion);
    ScalarField c35_static = truncated_retarded_correction(static_hist, p, 2, CorrectionForm::dalembertian);
    ScalarField cdir_static = truncated_retarded_correction(static_hist, p, 2, CorrectionForm::direct_expansion);

    std::ofstream rep(dir / "report.csv");
    rep << "check,value\n";
    rep << "static_vs_instantaneous," << format_g17(max_abs_diff(f_static, f_inst)) << "\n";
    rep << "large_c_vs_instantaneous," << format_g17(max_abs_diff(f_fast, f_inst_fast)) << "\n";
    rep << "retarded_vs_symmetric," << format_g17(max_abs_diff(f_ret, f_sym)) << "\n";
    rep << "eq35_vs_direct_static," << format_g17(max_abs_diff(c35_static, cdir_static)) << "\n";
    rep << "eq35_vs_direct_dynamic," << format_g17(max_abs_diff(c35, cdir)) << "\n";
    rep << "eq35_max," << format_g17(max_abs(c35)) << "\n";
    rep.close();

    auto xs = xs_of(g);
    write_csv(dir / "fields.csv", {"x", "f_retarded", "f_symmetric", "f_instantaneous", "corr_eq35", "corr_direct"},
              {xs, f_ret.values, f_sym.values, f_inst.values, c35.values, cdir.values});
    write_meta_file(dir, s, dt, count, {{"c", format_g17(p.c)}});
    write_plot_script(dir, "fields.csv", "f");
    return dir;
}

} // namespace

std::filesystem::path run_scenario(const RawConfig& cfg,
                                   const std::optional<std::filesystem::path>& out_root) {
    ScenarioSpec s = scenario_from_config(cfg);
    fs::path dir = out_root ? *out_root : fs::path(s.output_dir);
    fs::create_directories(dir);
    switch (s.kind) {
        case ScenarioKind::madelung: return run_madelung(s, dir);
        case ScenarioKind::schrodinger: return run_schrodinger(s, dir);
        case ScenarioKind::compare: return run_compare(s, dir);
        case ScenarioKind::relativistic: return run_relativistic(s, dir);
        case ScenarioKind::nonlocal_study: return run_nonlocal_study(s, dir);
        case ScenarioKind::retarded_study: return run_retarded_study(s, dir);
    }
    throw ValidationError("scenario.name: unknown scenario");
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ValidationError("loglog_slope: need matching vectors of length >= 2");
    double mx = 0, my = 0;
    size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (size_t i = 0; i < n; ++i) {
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double num = 0, den = 0;
    for (size_t i = 0; i < n; ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    return num / den;
}

namespace {

double read_metric_from_csv(const fs::path& file, const std::string& column) {
    std::ifstream in(file);
    if (!in) throw ValidationError("sweep: missing " + file.string());
    std::string header;
    std::getline(in, header);
    std::vector<std::string> cols;
    {
        std::istringstream hs(header);
        std::string tok;
        while (std::getline(hs, tok, ',')) cols.push_back(tok);
    }
    int target = -1;
    for (size_t i = 0; i < cols.size(); ++i)
        if (cols[i] == column) target = static_cast<int>(i);
    if (target < 0) throw ValidationError("sweep: column " + column + " not in " + file.string());
    std::string line, last;
    while (std::getline(in, line))
        if (!line.empty()) last = line;
    std::istringstream ls(last);
    std::string tok;
    for (int i = 0; std::getline(ls, tok, ','); ++i)
        if (i == target) return std::stod(tok);
    throw ValidationError("sweep: no data rows in " + file.string());
}

double conserved_drift_from_run(const ScenarioSpec& s, const fs::path& dir) {
    switch (s.kind) {
        case ScenarioKind::madelung:
        case ScenarioKind::compare: {
            fs::path f = s.kind == ScenarioKind::compare ? dir / "error_vs_time.csv"
                                                         : dir / "observables.csv";
            std::string col = s.kind == ScenarioKind::compare ? "madelung_mass" : "mass";
            double m_end = read_metric_from_csv(f, col);
            // first data row
            std::ifstream in(f);
            std::string header, first;
            std::getline(in, header);
            std::getline(in, first);
            std::istringstream hs(header), fs_(first);
            std::string tok;
            int idx = 0, target = -1;
            while (std::getline(hs, tok, ',')) {
                if (tok == col) target = idx;
                ++idx;
            }
            double m0 = 0;
            for (int i = 0; std::getline(fs_, tok, ','); ++i)
                if (i == target) m0 = std::stod(tok);
            return std::abs(m_end - m0) / std::abs(m0);
        }
        case ScenarioKind::relativistic: {
            double e_end = read_metric_from_csv(dir / "conserved.csv", "integral_E");
            std::ifstream in(dir / "conserved.csv");
            std::string header, first;
            std::getline(in, header);
            std::getline(in, first);
            std::istringstream fs_(first);
            std::string tok;
            double e0 = 0;
            for (int i = 0; std::getline(fs_, tok, ','); ++i)
                if (i == 1) e0 = std::stod(tok);
            return std::abs(e_end - e0) / std::abs(e0);
        }
        default: return 0.0;
    }
}

std::string value_tag(double v) {
    std::ostringstream os;
    os << v;
    std::string s = os.str();
    for (char& ch : s)
        if (ch == '.' || ch == '+') ch = '_';
    return s;
}

} // namespace

SweepResult sweep(const RawConfig& base, const std::string& parameter,
                  const std::vector<double>& values,
                  const std::optional<std::filesystem::path>& out_root) {
    if (values.empty()) throw ValidationError("sweep: need at least one value");
    // the parameter must name a numeric key the schema understands
    {
        RawConfig probe = base;
        probe.set(parameter, format_g17(values.front()));
        scenario_from_config(probe); // throws with the offending key if non-numeric/unknown
    }
    ScenarioSpec base_spec = scenario_from_config(base);
    fs::path root = out_root ? *out_root : fs::path(base_spec.output_dir);
    fs::create_directories(root);

    SweepResult result;
    result.parameter = parameter;

    // Scenario-defined reference for the error metric.
    ScalarField reference_rho;
    bool have_reference = false;
    if (parameter == "scenario.dt" &&
        (base_spec.kind == ScenarioKind::madelung || base_spec.kind == ScenarioKind::compare)) {
        // self-convergence: reference solution at dt_min / 4
        double dt_ref = *std::min_element(values.begin(), values.end()) / 4.0;
        RawConfig refcfg = base;
        refcfg.set("scenario.dt", format_g17(dt_ref));
        ScenarioSpec rs = scenario_from_config(refcfg);
        Grid1D g = make_grid(rs);
        ScalarField V = make_potential(rs, g);
        MadelungState init = make_initial_state(rs, g, V);
        IntegrateOptions opts;
        opts.dt = dt_ref;
        opts.snapshot_stride = 1 << 30;
        MadelungSolution ref = integrate(init, rs.physics, V, rs.t_end, opts);
        if (ref.aborted) throw NumericalError("sweep: reference run aborted: " + ref.diagnostic);
        reference_rho = ref.states.back().rho;
        have_reference = true;
        result.metric_name = "l2_vs_dt_ref";
    } else if (parameter == "physics.c" && base_spec.kind == ScenarioKind::relativistic) {
        // non-relativistic reference: Madelung solution of the same data
        Grid1D g = make_grid(base_spec);
        ScalarField V = make_potential(base_spec, g);
        MadelungState init = make_initial_state(base_spec, g, V);
        IntegrateOptions opts;
        opts.dt = base_spec.dt;
        opts.snapshot_stride = 1 << 30;
        MadelungSolution ref = integrate(init, base_spec.physics, V, base_spec.t_end, opts);
        if (ref.aborted) throw NumericalError("sweep: Madelung reference aborted: " + ref.diagnostic);
        reference_rho = ref.states.back().rho;
        have_reference = true;
        result.metric_name = "l2_vs_madelung";
    } else if (parameter == "scenario.kernel_scale" && base_spec.kind == ScenarioKind::nonlocal_study) {
        result.metric_name = "residual_l2";
    } else {
        result.metric_name = "final_error";
    }

    for (double v : values) {
        RawConfig cfg = base;
        cfg.set(parameter, format_g17(v));
        ScenarioSpec s = scenario_from_config(cfg);
        fs::path run_dir = root / (parameter.substr(parameter.find('.') + 1) + "_" + value_tag(v));
        fs::create_directories(run_dir);
        fs::path dir = run_scenario(cfg, run_dir);

        SweepRow row;
        row.value = v;
        row.run_dir = dir;
        row.conserved_drift = conserved_drift_from_run(s, dir);
        if (s.kind == ScenarioKind::nonlocal_study) {
            row.error_metric = read_metric_from_csv(dir / "study.csv", "residual_l2");
        } else if (have_reference) {
            // terminal density of this run vs the reference
            std::string last_snap;
            size_t idx = 0;
            while (fs::exists(dir / snap_name(idx))) last_snap = snap_name(idx++);
            std::ifstream in(dir / last_snap);
            std::string header, line;
            std::getline(in, header);
            ScalarField rho(reference_rho.grid);
            int j = 0;
            while (std::getline(in, line) && j < rho.size()) {
                std::istringstream ls(line);
                std::string tok;
                std::getline(ls, tok, ','); // x
                std::getline(ls, tok, ','); // rho
                rho[j++] = std::stod(tok);
            }
            row.error_metric = l2_norm(rho - reference_rho);
        } else if (s.kind == ScenarioKind::compare) {
            row.error_metric = read_metric_from_csv(dir / "error_vs_time.csv", "rel_l2");
        }
        result.rows.push_back(row);
    }

    std::vector<double> xs, ys;
    for (const auto& r : result.rows) {
        if (r.error_metric > 0.0) {
            xs.push_back(r.value);
            ys.push_back(r.error_metric);
        }
    }
    if (xs.size() >= 2) result.slope = loglog_slope(xs, ys);

    std::vector<double> vals, errs, drifts;
    for (const auto& r : result.rows) {
        vals.push_back(r.value);
        errs.push_back(r.error_metric);
        drifts.push_back(r.conserved_drift);
    }
    result.summary_csv = root / "sweep_summary.csv";
    write_csv(result.summary_csv, {parameter, result.metric_name, "conserved_drift"},
              {vals, errs, drifts});
    return result;
}

} // namespace qhdw

// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#include "qhdw/madelung.hpp"

#include <cmath>
#include <sstream>

#include "qhdw/interp.hpp"
#include "qhdw/potentials.hpp"
#include "qhdw/spectral.hpp"

namespace qhdw {

MadelungState::MadelungState(ScalarField rho_, ScalarField S_, double t, double winding)
    : rho(std::move(rho_)), S(std::move(S_)), S_winding(winding), time(t) {
    if (!(rho.grid == S.grid)) throw ValidationError("MadelungState: grid mismatch");
    rho.require_finite("MadelungState.rho");
    S.require_finite("MadelungState.S");
    if (field_min(rho) < 0.0) throw ValidationError("MadelungState: density must be >= 0");
}

MadelungRates madelung_rhs(const MadelungState& st, const PhysicalParams& p, const ScalarField& V) {
    const int n = st.rho.size();
    ScalarField dS = spatial_derivative(st.S, 1);
    const double mean_slope = st.S_winding / st.rho.grid.length;

    ScalarField flux(st.rho.grid);
    for (int j = 0; j < n; ++j) flux[j] = st.rho[j] * (dS[j] + mean_slope) / p.mass;

    MadelungRates rates;
    rates.drho_dt = -1.0 * spatial_derivative(flux, 1);

    ScalarField vq = bohm_potential(st.rho, p, BohmForm::quantum);
    rates.dS_dt = ScalarField(st.rho.grid);
    for (int j = 0; j < n; ++j) {
        double u = dS[j] + mean_slope;
        double thermal = p.kT != 0.0 ? p.kT * std::log(std::max(st.rho[j], p.rho_floor)) : 0.0;
        rates.dS_dt[j] = -(u * u / (2.0 * p.mass) + thermal + V[j] + vq[j]);
    }
    dealias_filter(rates.drho_dt);
    dealias_filter(rates.dS_dt);
    if (!rates.drho_dt.all_finite() || !rates.dS_dt.all_finite())
        throw NumericalError("madelung_rhs: non-finite rate at t = " + std::to_string(st.time));
    return rates;
}

ScalarField velocity_field(const MadelungState& st, const PhysicalParams& p) {
    ScalarField v = spatial_derivative(st.S, 1);
    const double mean_slope = st.S_winding / st.rho.grid.length;
    for (int j = 0; j < v.size(); ++j) v[j] = (v[j] + mean_slope) / p.mass;
    return v;
}

ScalarField total_energy_field(const MadelungState& st, const PhysicalParams& p,
                               const ScalarField& V) {
    ScalarField dS = spatial_derivative(st.S, 1);
    const double mean_slope = st.S_winding / st.rho.grid.length;
    ScalarField vq = bohm_potential(st.rho, p, BohmForm::quantum);
    ScalarField out(st.rho.grid);
    for (int j = 0; j < out.size(); ++j) {
        double u = dS[j] + mean_slope;
        double thermal = p.kT != 0.0 ? p.kT * std::log(std::max(st.rho[j], p.rho_floor)) : 0.0;
        out[j] = u * u / (2.0 * p.mass) + thermal + V[j] + vq[j];
    }
    return out;
}

MadelungSolution integrate(const MadelungState& initial, const PhysicalParams& p,
                           const ScalarField& V, double t_end, IntegrateOptions opts) {
    if (!(t_end > initial.time)) throw ValidationError("integrate: t_end must exceed the state time");
    const Grid1D& g = initial.rho.grid;
    double dt = opts.dt > 0.0 ? opts.dt : 0.1 * p.mass * g.dx * g.dx / p.hbar;
    const double span = t_end - initial.time;
    auto steps = static_cast<long long>(std::ceil(span / dt - 1e-12));
    dt = span / static_cast<double>(steps); // land exactly on t_end

    MadelungSolution sol;
    sol.dt = dt;
    sol.snapshot_stride = std::max(1, opts.snapshot_stride);
    sol.total_steps = steps;
    sol.states.push_back(initial);
    if (opts.on_snapshot) opts.on_snapshot(initial);

    const double rho_cap = 10.0 * field_max(initial.rho);
    const int n = g.n;
    MadelungState cur = initial;

    auto stage_state = [&](const MadelungState& base, const MadelungRates& r, double h) {
        MadelungState out = base;
        for (int j = 0; j < n; ++j) {
            out.rho[j] = base.rho[j] + h * r.drho_dt[j];
            out.S[j] = base.S[j] + h * r.dS_dt[j];
        }
        out.time = base.time + h;
        return out;
    };

    for (long long s = 0; s < steps; ++s) {
        try {
            MadelungRates k1 = madelung_rhs(cur, p, V);
            MadelungRates k2 = madelung_rhs(stage_state(cur, k1, 0.5 * dt), p, V);
            MadelungRates k3 = madelung_rhs(stage_state(cur, k2, 0.5 * dt), p, V);
            MadelungRates k4 = madelung_rhs(stage_state(cur, k3, dt), p, V);
            for (int j = 0; j < n; ++j) {
                cur.rho[j] += dt / 6.0 *
                              (k1.drho_dt[j] + 2.0 * k2.drho_dt[j] + 2.0 * k3.drho_dt[j] + k4.drho_dt[j]);
                cur.S[j] += dt / 6.0 * (k1.dS_dt[j] + 2.0 * k2.dS_dt[j] + 2.0 * k3.dS_dt[j] + k4.dS_dt[j]);
            }
            cur.time = initial.time + (s + 1) * dt;
            if (!cur.rho.all_finite() || !cur.S.all_finite())
                throw NumericalError("non-finite state");
            if (field_max(cur.rho) > rho_cap) {
                std::ostringstream os;
                os << "instability detected: max rho " << field_max(cur.rho) << " exceeds 10x initial at t = "
                   << cur.time;
                throw NumericalError(os.str());
            }
        } catch (const NumericalError& e) {
            sol.aborted = true;
            sol.diagnostic = e.what();
            return sol; // states hold the last stable snapshots
        }
        if ((s + 1) % sol.snapshot_stride == 0 || s + 1 == steps) {
            sol.states.push_back(cur);
            if (opts.on_snapshot) opts.on_snapshot(cur);
        }
    }
    return sol;
}

Trajectory bohmian_trajectories(const MadelungSolution& sol, const std::vector<double>& seeds,
                                const PhysicalParams& p) {
    if (sol.states.size() < 2) throw ValidationError("bohmian_trajectories: need at least 2 snapshots");
    if (sol.snapshot_stride > 10)
        throw ValidationError("bohmian_trajectories: snapshot stride " +
                              std::to_string(sol.snapshot_stride) + " too coarse (need <= 10 steps)");
    const Grid1D& g = sol.states.front().rho.grid;
    const double L = g.length;

    std::vector<ScalarField> v;
    v.reserve(sol.states.size());
    for (const auto& st : sol.states) v.push_back(velocity_field(st, p));

    // Midpoint velocity approximated by the snapshot average; the guidance
    // integration is second order in the snapshot spacing.
    std::vector<ScalarField> vmid;
    vmid.reserve(sol.states.size() - 1);
    for (size_t i = 0; i + 1 < sol.states.size(); ++i) {
        ScalarField m(g);
        for (int j = 0; j < g.n; ++j) m[j] = 0.5 * (v[i][j] + v[i + 1][j]);
        vmid.push_back(std::move(m));
    }

    Trajectory tr;
    tr.times.reserve(sol.states.size());
    for (const auto& st : sol.states) tr.times.push_back(st.time);
    tr.positions.assign(seeds.size(), std::vector<double>(sol.states.size()));
    tr.seeded_in_vacuum.assign(seeds.size(), false);

    auto wrap = [L](double x) {
        double y = std::fmod(x + 0.5 * L, L);
        if (y < 0.0) y += L;
        return y - 0.5 * L;
    };

    for (size_t s = 0; s < seeds.size(); ++s) {
        double x = wrap(seeds[s]);
        if (interp_periodic_cubic(sol.states.front().rho, x) < 1e-8) tr.seeded_in_vacuum[s] = true;
        tr.positions[s][0] = x;
        for (size_t i = 0; i + 1 < sol.states.size(); ++i) {
            double h = tr.times[i + 1] - tr.times[i];
            double k1 = interp_periodic_cubic(v[i], x);
            double k2 = interp_periodic_cubic(vmid[i], wrap(x + 0.5 * h * k1));
            double k3 = interp_periodic_cubic(vmid[i], wrap(x + 0.5 * h * k2));
            double k4 = interp_periodic_cubic(v[i + 1], wrap(x + h * k3));
            x = wrap(x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
            if (!std::isfinite(x)) throw NumericalError("bohmian_trajectories: non-finite position");
            tr.positions[s][i + 1] = x;
        }
    }
    return tr;
}

} // namespace qhdw

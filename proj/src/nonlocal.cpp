// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#include "qhdw/nonlocal.hpp"

#include <cmath>
#include <sstream>

#include "qhdw/interp.hpp"
#include "qhdw/potentials.hpp"
#include "qhdw/spectral.hpp"

namespace qhdw {

namespace {

ScalarField log_clamped(const ScalarField& rho, double floor) {
    ScalarField out(rho.grid);
    for (int j = 0; j < out.size(); ++j) out[j] = std::log(std::max(rho[j], floor));
    return out;
}

} // namespace

ScalarField nonlocal_free_energy(const ScalarField& rho, const Kernel& k, const ScalarField& V,
                                 const PhysicalParams& p) {
    ScalarField conv = convolve_periodic(log_clamped(rho, p.rho_floor), k);
    ScalarField out(rho.grid);
    for (int j = 0; j < out.size(); ++j) out[j] = p.kT * conv[j] + V[j];
    return out;
}

ScalarField truncated_free_energy(const ScalarField& rho, const PhysicalParams& p,
                                  const ScalarField& V) {
    ScalarField w = log_clamped(rho, p.rho_floor);
    ScalarField lap = spatial_derivative(w, 2);
    ScalarField out(rho.grid);
    for (int j = 0; j < out.size(); ++j)
        out[j] = p.kT * w[j] + V[j] - 0.5 * p.kT * p.a2() * lap[j];
    return out;
}

ScalarField retarded_free_energy(const SpacetimeField& rho_hist, const Kernel& k,
                                 const PhysicalParams& p, const ScalarField& V, int time_index,
                                 RetardMode mode) {
    const Grid1D& g = rho_hist.grid;
    const int n = g.n;
    const int m = rho_hist.count();
    if (time_index < 0 || time_index >= m)
        throw ValidationError("retarded_free_energy: time index out of range");
    if (!(V.grid == g)) throw ValidationError("retarded_free_energy: potential grid mismatch");

    const double t_eval = rho_hist.time(time_index);
    const double max_delay = p.finite_c() ? (0.5 * g.length) / p.c : 0.0;

    // Cubic interpolation needs one snapshot beyond each stencil end.
    const double t_lo_needed = t_eval - max_delay - rho_hist.dt;
    const double t_hi_needed =
        (mode == RetardMode::symmetric) ? t_eval + max_delay + rho_hist.dt : t_eval + rho_hist.dt;
    if (t_lo_needed < rho_hist.t0 || t_hi_needed > rho_hist.time(m - 1)) {
        std::ostringstream os;
        os << "retarded_free_energy: insufficient history depth; need t in [" << t_lo_needed << ", "
           << t_hi_needed << "] but have [" << rho_hist.t0 << ", " << rho_hist.time(m - 1) << "]";
        throw ValidationError(os.str());
    }

    std::vector<double> weights = sample_kernel_on_grid(k, g);

    // Per-point log histories, then interpolate each (space offset, delay).
    std::vector<std::vector<double>> logs(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(m)));
    for (int i = 0; i < m; ++i) {
        const ScalarField& snap = rho_hist.at(i);
        for (int j = 0; j < n; ++j)
            logs[static_cast<size_t>(j)][static_cast<size_t>(i)] = std::log(std::max(snap[j], p.rho_floor));
    }

    ScalarField out(g);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            double xi = (j <= n / 2) ? j * g.dx : (j - n) * g.dx;
            double delay = p.finite_c() ? std::abs(xi) / p.c : 0.0;
            int src = ((i - j) % n + n) % n;
            const auto& series = logs[static_cast<size_t>(src)];
            double val;
            if (delay == 0.0) {
                val = series[static_cast<size_t>(time_index)];
            } else if (mode == RetardMode::retarded) {
                val = lagrange_cubic_time(series, rho_hist.t0, rho_hist.dt, t_eval - delay);
            } else {
                val = 0.5 * (lagrange_cubic_time(series, rho_hist.t0, rho_hist.dt, t_eval - delay) +
                             lagrange_cubic_time(series, rho_hist.t0, rho_hist.dt, t_eval + delay));
            }
            acc += weights[static_cast<size_t>(j)] * val;
        }
        out[i] = p.kT * acc * g.dx + V[i];
    }
    return out;
}

ScalarField truncated_retarded_correction(const SpacetimeField& rho_hist, const PhysicalParams& p,
                                          int time_index, CorrectionForm form) {
    if (!p.finite_c())
        throw ValidationError("truncated_retarded_correction: needs a finite propagation speed");
    SpacetimeField log_hist(rho_hist.grid, rho_hist.t0, rho_hist.dt);
    for (int i = 0; i < rho_hist.count(); ++i)
        log_hist.push(log_clamped(rho_hist.at(i), p.rho_floor));

    const double half_kta2 = 0.5 * p.kT * p.a2();
    if (form == CorrectionForm::dalembertian)
        return half_kta2 * dalembertian(log_hist, p.c, time_index);

    // Direct expansion of the retarded integral keeps the same sign on the
    // spatial and temporal second-order terms; with m2 = -a^2 this is
    // -(kT a^2 / 2)(lap + c^-2 dtt) ln rho.
    ScalarField lap = spatial_derivative(log_hist.at(time_index), 2);
    ScalarField dtt = second_time_derivative(log_hist, time_index);
    ScalarField out(rho_hist.grid);
    double inv_c2 = 1.0 / (p.c * p.c);
    for (int j = 0; j < out.size(); ++j) out[j] = -half_kta2 * (lap[j] + inv_c2 * dtt[j]);
    return out;
}

double free_energy_functional(const ScalarField& rho, const PhysicalParams& p,
                              const ScalarField& V) {
    ScalarField w = log_clamped(rho, p.rho_floor);
    ScalarField g = spatial_derivative(w, 1);
    double acc = 0.0;
    for (int j = 0; j < rho.size(); ++j) {
        double r = std::max(rho[j], p.rho_floor);
        acc += r * (p.kT * w[j] + V[j] + 0.5 * p.kT * p.a2() * g[j] * g[j]);
    }
    return acc * rho.grid.dx;
}

ScalarField functional_derivative_numeric(const ScalarField& rho, const PhysicalParams& p,
                                          const ScalarField& V) {
    const double h = 1e-6 * field_max(rho);
    if (field_min(rho) - h <= p.rho_floor)
        throw ValidationError("functional_derivative_numeric: perturbation would drive rho below "
                              "the density floor; raise the field or shrink the domain");
    ScalarField out(rho.grid);
    ScalarField work = rho;
    const double dx = rho.grid.dx;
    for (int j = 0; j < rho.size(); ++j) {
        work[j] = rho[j] + h;
        double fp = free_energy_functional(work, p, V);
        work[j] = rho[j] - h;
        double fm = free_energy_functional(work, p, V);
        work[j] = rho[j];
        out[j] = (fp - fm) / (2.0 * h * dx);
    }
    return out;
}

double functional_derivative_mismatch(const ScalarField& rho, const PhysicalParams& p,
                                      const ScalarField& V) {
    ScalarField numeric = functional_derivative_numeric(rho, p, V);
    ScalarField analytic = mu_thermo(rho, p, V) + mu_nonlocal_log(rho, p);
    double shift = field_mean(numeric) - field_mean(analytic);
    ScalarField centered_ref = analytic;
    double ref_mean = field_mean(analytic);
    ScalarField resid(rho.grid);
    for (int j = 0; j < rho.size(); ++j) {
        resid[j] = numeric[j] - analytic[j] - shift;
        centered_ref[j] = analytic[j] - ref_mean;
    }
    return l2_norm(resid) / l2_norm(centered_ref);
}

} // namespace qhdw

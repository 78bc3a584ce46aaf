// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#include "qhdw/schrodinger.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "qhdw/spectral.hpp"

namespace qhdw {

namespace {

std::vector<double> kinetic_phase_table(const Grid1D& g, const PhysicalParams& p, double dt) {
    std::vector<double> phase(static_cast<size_t>(g.n));
    for (int j = 0; j < g.n; ++j) {
        int m = (j <= g.n / 2) ? j : j - g.n;
        double k = 2.0 * std::numbers::pi * m / g.length;
        phase[static_cast<size_t>(j)] = -p.hbar * k * k * dt / (2.0 * p.mass);
    }
    return phase;
}

} // namespace

ComplexField ssfm_evolve(ComplexField psi, const ScalarField& Vcl, const PhysicalParams& p,
                         double dt, int steps,
                         const std::function<void(int, const ComplexField&)>& observer) {
    if (!(dt > 0.0)) throw ValidationError("ssfm_evolve: dt must be positive");
    if (!(psi.grid == Vcl.grid)) throw ValidationError("ssfm_evolve: grid mismatch");
    psi.require_finite("ssfm_evolve");
    double vmax = max_abs(Vcl);
    if (dt * vmax / p.hbar > std::numbers::pi)
        throw ValidationError("ssfm_evolve: dt max|V|/hbar exceeds pi (potential phase aliasing); "
                              "reduce dt");

    const int n = psi.size();
    std::vector<std::complex<double>> half_v(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j)
        half_v[static_cast<size_t>(j)] = std::polar(1.0, -Vcl[j] * dt / (2.0 * p.hbar));
    std::vector<double> kin = kinetic_phase_table(psi.grid, p, dt);
    std::vector<std::complex<double>> kin_factor(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) kin_factor[static_cast<size_t>(j)] = std::polar(1.0, kin[static_cast<size_t>(j)]);

    std::vector<std::complex<double>>& v = psi.values;
    for (int s = 0; s < steps; ++s) {
        for (int j = 0; j < n; ++j) v[static_cast<size_t>(j)] *= half_v[static_cast<size_t>(j)];
        detail::fft(v, false);
        for (int j = 0; j < n; ++j) v[static_cast<size_t>(j)] *= kin_factor[static_cast<size_t>(j)];
        detail::fft(v, true);
        for (int j = 0; j < n; ++j) v[static_cast<size_t>(j)] *= half_v[static_cast<size_t>(j)];
        if (observer) observer(s + 1, psi);
    }
    return psi;
}

MadelungFields madelung_transform(const ComplexField& psi, const PhysicalParams& p) {
    psi.require_finite("madelung_transform");
    const int n = psi.size();
    MadelungFields out{ScalarField(psi.grid), ScalarField(psi.grid), 0.0, 0};
    const double two_pi = 2.0 * std::numbers::pi;
    double prev = std::arg(psi[0]); // anchor: principal branch at x = -L/2
    double unwrapped = prev;
    std::vector<double> full(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        double r2 = std::norm(psi[j]);
        out.rho[j] = r2;
        if (r2 < p.rho_floor) ++out.vacuum_count;
        double th = std::arg(psi[j]);
        if (j > 0) {
            double d = th - prev;
            d -= two_pi * std::round(d / two_pi); // nearest-branch continuation
            unwrapped += d;
        }
        prev = th;
        full[static_cast<size_t>(j)] = unwrapped;
    }
    // phase advance closing the loop back to x = -L/2
    double seam = std::arg(psi[0]) - prev;
    seam -= two_pi * std::round(seam / two_pi);
    double total = (unwrapped + seam) - full[0];
    out.S_winding = p.hbar * total;
    // keep only the periodic part in S
    for (int j = 0; j < n; ++j)
        out.S[j] = p.hbar * full[static_cast<size_t>(j)] - out.S_winding * j / n;
    return out;
}

ComplexField inverse_madelung(const ScalarField& rho, const ScalarField& S,
                              const PhysicalParams& p, double S_winding) {
    if (!(rho.grid == S.grid)) throw ValidationError("inverse_madelung: grid mismatch");
    if (field_min(rho) < 0.0) throw ValidationError("inverse_madelung: density must be >= 0");
    ComplexField psi(rho.grid);
    const int n = rho.size();
    for (int j = 0; j < n; ++j) {
        double full = S[j] + S_winding * j / n;
        psi[j] = std::polar(std::sqrt(rho[j]), full / p.hbar);
    }
    return psi;
}

double norm_squared(const ComplexField& psi) {
    double s = 0.0;
    for (const auto& v : psi.values) s += std::norm(v);
    return s * psi.grid.dx;
}

double energy_expectation(const ComplexField& psi, const ScalarField& V, const PhysicalParams& p) {
    ComplexField dpsi = spatial_derivative(psi);
    double s = 0.0;
    for (int j = 0; j < psi.size(); ++j)
        s += 0.5 * p.hbar * p.hbar / p.mass * std::norm(dpsi[j]) + V[j] * std::norm(psi[j]);
    return s * psi.grid.dx;
}

namespace {

// H psi through the same spectral kinetic operator the dynamics uses.
ScalarField apply_hamiltonian(const ScalarField& psi, const ScalarField& V,
                              const PhysicalParams& p) {
    ScalarField lap = spatial_derivative(psi, 2);
    ScalarField out(psi.grid);
    const double kin = -0.5 * p.hbar * p.hbar / p.mass;
    for (int j = 0; j < psi.size(); ++j) out[j] = kin * lap[j] + V[j] * psi[j];
    return out;
}

// PCG on (H + sigma) z = b with the Fourier-diagonal kinetic preconditioner
// (hbar^2 k^2 / 2m + sigma + mean V)^-1.
ScalarField solve_shifted_h(const ScalarField& b, const ScalarField& V, const PhysicalParams& p,
                            double sigma, double tol) {
    const Grid1D& g = b.grid;
    const int n = g.n;
    const double vbar = field_mean(V);
    auto precond = [&](const ScalarField& r) {
        std::vector<std::complex<double>> buf(r.values.begin(), r.values.end());
        detail::fft(buf, false);
        for (int j = 0; j < n; ++j) {
            int m = (j <= n / 2) ? j : j - n;
            double k = 2.0 * std::numbers::pi * m / g.length;
            double diag = 0.5 * p.hbar * p.hbar * k * k / p.mass + sigma + vbar;
            buf[static_cast<size_t>(j)] /= diag;
        }
        detail::fft(buf, true);
        ScalarField out(g);
        for (int j = 0; j < n; ++j) out[j] = buf[static_cast<size_t>(j)].real();
        return out;
    };
    auto apply = [&](const ScalarField& x) {
        ScalarField hx = apply_hamiltonian(x, V, p);
        for (int j = 0; j < n; ++j) hx[j] += sigma * x[j];
        return hx;
    };
    auto dot = [&](const ScalarField& a, const ScalarField& c) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += a[j] * c[j];
        return s;
    };

    ScalarField x(g); // zero start
    ScalarField r = b;
    ScalarField z = precond(r);
    ScalarField d = z;
    double rz = dot(r, z);
    double b2 = std::sqrt(dot(b, b));
    for (int it = 0; it < 400; ++it) {
        ScalarField ad = apply(d);
        double alpha = rz / dot(d, ad);
        for (int j = 0; j < n; ++j) {
            x[j] += alpha * d[j];
            r[j] -= alpha * ad[j];
        }
        if (std::sqrt(dot(r, r)) < tol * b2) break;
        z = precond(r);
        double rz_new = dot(r, z);
        double beta = rz_new / rz;
        rz = rz_new;
        for (int j = 0; j < n; ++j) d[j] = z[j] + beta * d[j];
    }
    return x;
}

} // namespace

GroundState discrete_ground_state(const Grid1D& g, const ScalarField& V, const PhysicalParams& p) {
    const int n = g.n;
    // Dense symmetric eigensolve for a robust starting pair; sizes here are
    // a few hundred, so this is cheap. The kinetic block is the closed-form
    // circulant of the spectral Laplacian, exactly symmetric by construction.
    std::vector<double> row(static_cast<size_t>(n), 0.0);
    for (int m = 0; m < n; ++m) {
        double acc = 0.0;
        for (int j = 0; j <= n / 2; ++j) {
            int mm = j;
            double k = 2.0 * std::numbers::pi * mm / g.length;
            double w = (j == 0 || j == n / 2) ? 1.0 : 2.0;
            acc += w * (-k * k) * std::cos(2.0 * std::numbers::pi * j * m / n);
        }
        row[static_cast<size_t>(m)] = acc / n;
    }
    Eigen::MatrixXd H(n, n);
    const double kin_pref = -0.5 * p.hbar * p.hbar / p.mass;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) H(r, c) = kin_pref * row[static_cast<size_t>((r - c + n) % n)];
    for (int c = 0; c < n; ++c) H(c, c) += V[c];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (H + H.transpose()));
    if (solver.info() != Eigen::Success)
        throw NumericalError("discrete_ground_state: eigensolve failed");
    Eigen::VectorXd v = solver.eigenvectors().col(0);
    if (v.sum() < 0.0) v = -v;

    ScalarField psi(g);
    for (int j = 0; j < n; ++j) psi[j] = v(j);

    // Inverse-power polish through the FFT-applied operator, so the
    // pointwise identity H psi = E psi holds at the same floating-point
    // floor as the evolution that consumes it.
    double sigma = 1.0 + std::max(0.0, -field_min(V));
    for (int it = 0; it < 6; ++it) {
        psi = solve_shifted_h(psi, V, p, sigma, 1e-15);
        double nrm2 = 0.0;
        for (int j = 0; j < n; ++j) nrm2 += psi[j] * psi[j];
        double norm = std::sqrt(nrm2 * g.dx);
        for (int j = 0; j < n; ++j) psi[j] /= norm;
    }

    GroundState gs;
    ScalarField hpsi = apply_hamiltonian(psi, V, p);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < n; ++j) {
        num += psi[j] * hpsi[j];
        den += psi[j] * psi[j];
    }
    gs.energy = num / den;
    double resid = 0.0;
    for (int j = 0; j < n; ++j) resid = std::max(resid, std::abs(hpsi[j] - gs.energy * psi[j]));
    gs.residual = resid;
    gs.psi = ComplexField(g);
    for (int j = 0; j < n; ++j) {
        if (!(psi[j] > 0.0))
            throw NumericalError("discrete_ground_state: ground eigenvector not strictly positive");
        gs.psi[j] = psi[j];
    }
    return gs;
}

} // namespace qhdw

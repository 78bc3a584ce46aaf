// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "qhdw/errors.hpp"

namespace qhdw {

/// Uniform periodic 1D grid on [-L/2, L/2). Point count must be a power of
/// two (>= 8) so spectral transforms stay exact and cheap.
struct Grid1D {
    int n = 0;
    double length = 0.0;
    double dx = 0.0;

    Grid1D() = default;
    Grid1D(int n_, double length_);

    double x(int j) const { return -0.5 * length + j * dx; }

    bool operator==(const Grid1D& o) const { return n == o.n && length == o.length; }
};

/// Real sampled field on a Grid1D. Plain value type; operations elsewhere
/// treat instances as immutable snapshots.
struct ScalarField {
    Grid1D grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const Grid1D& g) : grid(g), values(static_cast<size_t>(g.n), 0.0) {}
    ScalarField(const Grid1D& g, std::vector<double> v);

    template <class F>
    static ScalarField from_function(const Grid1D& g, F&& f) {
        ScalarField out(g);
        for (int j = 0; j < g.n; ++j) out.values[static_cast<size_t>(j)] = f(g.x(j));
        return out;
    }

    double& operator[](int j) { return values[static_cast<size_t>(j)]; }
    double operator[](int j) const { return values[static_cast<size_t>(j)]; }
    int size() const { return grid.n; }

    bool all_finite() const;
    void require_finite(const char* what) const;
};

/// Complex sampled field (wavefunctions).
struct ComplexField {
    Grid1D grid;
    std::vector<std::complex<double>> values;

    ComplexField() = default;
    explicit ComplexField(const Grid1D& g) : grid(g), values(static_cast<size_t>(g.n), 0.0) {}

    template <class F>
    static ComplexField from_function(const Grid1D& g, F&& f) {
        ComplexField out(g);
        for (int j = 0; j < g.n; ++j) out.values[static_cast<size_t>(j)] = f(g.x(j));
        return out;
    }

    std::complex<double>& operator[](int j) { return values[static_cast<size_t>(j)]; }
    const std::complex<double>& operator[](int j) const { return values[static_cast<size_t>(j)]; }
    int size() const { return grid.n; }

    bool all_finite() const;
    void require_finite(const char* what) const;
};

/// Time-stamped history of a scalar field on a fixed grid with uniform
/// time step. Second time derivatives need interior 5-point stencils, so
/// consumers require at least 5 snapshots.
struct SpacetimeField {
    Grid1D grid;
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<ScalarField> snapshots;

    SpacetimeField() = default;
    SpacetimeField(const Grid1D& g, double t0_, double dt_);

    void push(const ScalarField& f);
    int count() const { return static_cast<int>(snapshots.size()); }
    double time(int i) const { return t0 + i * dt; }
    const ScalarField& at(int i) const { return snapshots[static_cast<size_t>(i)]; }

    template <class F>
    static SpacetimeField from_function(const Grid1D& g, double t0_, double dt_, int count, F&& f) {
        SpacetimeField out(g, t0_, dt_);
        for (int i = 0; i < count; ++i) {
            double t = t0_ + i * dt_;
            out.push(ScalarField::from_function(g, [&](double x) { return f(x, t); }));
        }
        return out;
    }
};

// -- small field algebra helpers used across modules and tests --

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);

double field_mean(const ScalarField& f);
double field_min(const ScalarField& f);
double field_max(const ScalarField& f);
double max_abs(const ScalarField& f);
double max_abs_diff(const ScalarField& a, const ScalarField& b);
/// Discrete integral sum(f) * dx (the trapezoidal rule on a periodic grid).
double integrate_field(const ScalarField& f);
/// sqrt(sum(f^2) * dx)
double l2_norm(const ScalarField& f);
double rel_l2_diff(const ScalarField& a, const ScalarField& b);

/// max(f, floor) pointwise; used before logs and square roots.
ScalarField clamp_floor(const ScalarField& f, double floor);

} // namespace qhdw

// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#include "qhdw/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qhdw {

namespace {
bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
} // namespace

Grid1D::Grid1D(int n_, double length_) : n(n_), length(length_) {
    if (n < 8 || !is_power_of_two(n))
        throw ValidationError("Grid1D: point count must be a power of two >= 8, got " + std::to_string(n));
    if (!(length > 0.0) || !std::isfinite(length))
        throw ValidationError("Grid1D: domain length must be positive and finite");
    dx = length / n;
}

ScalarField::ScalarField(const Grid1D& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != g.n)
        throw ValidationError("ScalarField: value count does not match grid");
}

bool ScalarField::all_finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

void ScalarField::require_finite(const char* what) const {
    if (!all_finite()) throw ValidationError(std::string(what) + ": field has non-finite values");
}

bool ComplexField::all_finite() const {
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

void ComplexField::require_finite(const char* what) const {
    if (!all_finite()) throw ValidationError(std::string(what) + ": field has non-finite values");
}

SpacetimeField::SpacetimeField(const Grid1D& g, double t0_, double dt_) : grid(g), t0(t0_), dt(dt_) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ValidationError("SpacetimeField: time step must be positive");
}

void SpacetimeField::push(const ScalarField& f) {
    if (!(f.grid == grid)) throw ValidationError("SpacetimeField: snapshot grid mismatch");
    snapshots.push_back(f);
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    ScalarField out(a.grid);
    for (int j = 0; j < a.size(); ++j) out[j] = a[j] + b[j];
    return out;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    ScalarField out(a.grid);
    for (int j = 0; j < a.size(); ++j) out[j] = a[j] - b[j];
    return out;
}

ScalarField operator*(double s, const ScalarField& a) {
    ScalarField out(a.grid);
    for (int j = 0; j < a.size(); ++j) out[j] = s * a[j];
    return out;
}

double field_mean(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s / f.size();
}

double field_min(const ScalarField& f) { return *std::min_element(f.values.begin(), f.values.end()); }
double field_max(const ScalarField& f) { return *std::max_element(f.values.begin(), f.values.end()); }

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (int j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

double integrate_field(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return s * f.grid.dx;
}

double l2_norm(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.values) s += v * v;
    return std::sqrt(s * f.grid.dx);
}

double rel_l2_diff(const ScalarField& a, const ScalarField& b) {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < a.size(); ++j) {
        double d = a[j] - b[j];
        num += d * d;
        den += b[j] * b[j];
    }
    return std::sqrt(num / den);
}

ScalarField clamp_floor(const ScalarField& f, double floor) {
    ScalarField out(f.grid);
    for (int j = 0; j < f.size(); ++j) out[j] = std::max(f[j], floor);
    return out;
}

} // namespace qhdw

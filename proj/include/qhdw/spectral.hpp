// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "qhdw/grid.hpp"
#include "qhdw/kernel.hpp"

namespace qhdw {

/// Spectral differentiation is the default and is exact to round-off for
/// band-limited fields; the 4th-order central-difference mode exists to
/// cross-check and to expose order of accuracy in convergence tests.
enum class DerivMode { spectral, fd4 };

ScalarField spatial_derivative(const ScalarField& f, int order, DerivMode mode = DerivMode::spectral);

/// First spectral derivative of a complex field (wavefunction gradients).
ComplexField spatial_derivative(const ComplexField& f);

/// 4th-order central second time derivative of a history at snapshot
/// `time_index` (needs two snapshots on each side).
ScalarField second_time_derivative(const SpacetimeField& hist, int time_index);

/// (1/c^2) d2/dt2 - d2/dx2 at the given snapshot; spatial part spectral,
/// temporal part the 4th-order stencil above.
ScalarField dalembertian(const SpacetimeField& hist, double c, int time_index);

/// Circular convolution with the grid-sampled, renormalized kernel:
/// (u * f)_i = sum_j u(xi_j) f(x_i - xi_j) dx. Linear in f; preserves the
/// field mean exactly for unit kernels.
ScalarField convolve_periodic(const ScalarField& f, const Kernel& k);

/// Same, with precomputed weights from sample_kernel_on_grid (shared with
/// the retarded evaluator so the static limit matches bit-for-bit).
ScalarField convolve_periodic(const ScalarField& f, const std::vector<double>& weights);

/// High-order exponential low-pass: multiplies mode k by
/// exp(-36 (|k|/k_max)^16), i.e. the identity on resolved scales and a
/// hard cut at the grid scale. Time steppers apply it to their rates to
/// break the aliasing loop that grid-scale density ripples would otherwise
/// feed through the 1/rho nonlinearity of the quantum potential.
void dealias_filter(ScalarField& f);

namespace detail {
/// In-place FFT helpers (power-of-two sizes), backed by FFTW with cached
/// plans; safe for concurrent callers.
void fft(std::vector<std::complex<double>>& data, bool inverse);
} // namespace detail

} // namespace qhdw

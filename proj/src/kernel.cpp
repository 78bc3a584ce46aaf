// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#include "qhdw/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qhdw/quadrature.hpp"

namespace qhdw {

namespace {

// Unit-mass Gaussian densities.
double gauss1(double r, double sigma) {
    double z = r / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double gauss3(double r, double sigma) {
    double z = r / sigma;
    double norm = std::pow(2.0 * std::numbers::pi * sigma * sigma, -1.5);
    return norm * std::exp(-0.5 * z * z);
}

// One-sided Gaussian tail mass: int_R^inf of the 1D unit Gaussian.
double gauss1_tail(double R, double sigma) { return 0.5 * std::erfc(R / (sigma * std::sqrt(2.0))); }

} // namespace

Kernel Kernel::difference_of_gaussians(double A, double sigma1, double B, double sigma2, int dimension) {
    if (std::abs((A - B) - 1.0) > 1e-12)
        throw ValidationError("Kernel: difference-of-Gaussians weights must satisfy A - B = 1");
    if (!(sigma1 > 0.0) || !(sigma2 > 0.0))
        throw ValidationError("Kernel: Gaussian widths must be positive");
    if (dimension != 1 && dimension != 3)
        throw ValidationError("Kernel: dimension must be 1 or 3");
    Kernel k;
    k.family_ = Family::dog;
    k.dim_ = dimension;
    k.A_ = A;
    k.B_ = B;
    k.s1_ = sigma1;
    k.s2_ = sigma2;
    return k;
}

Kernel Kernel::tabulated(std::vector<double> radial_samples, double spacing) {
    if (radial_samples.size() < 3) throw ValidationError("Kernel: need at least 3 radial samples");
    if (!(spacing > 0.0)) throw ValidationError("Kernel: sample spacing must be positive");
    Kernel k;
    k.family_ = Family::tabulated;
    k.dim_ = 1;
    k.samples_ = std::move(radial_samples);
    k.spacing_ = spacing;
    // Renormalize to unit mass over the line: 2 * trapz over r >= 0.
    double mass = 0.0;
    for (size_t i = 0; i + 1 < k.samples_.size(); ++i)
        mass += 0.5 * (k.samples_[i] + k.samples_[i + 1]) * spacing;
    mass *= 2.0;
    if (!(std::abs(mass) > 0.0)) throw ValidationError("Kernel: tabulated samples have zero mass");
    for (double& v : k.samples_) v /= mass;
    return k;
}

double Kernel::value(double r) const {
    r = std::abs(r);
    if (family_ == Family::dog)
        return dim_ == 1 ? A_ * gauss1(r, s1_) - B_ * gauss1(r, s2_)
                         : A_ * gauss3(r, s1_) - B_ * gauss3(r, s2_);
    double t = r / spacing_;
    auto i = static_cast<size_t>(t);
    if (i + 1 >= samples_.size()) return 0.0;
    double w = t - static_cast<double>(i);
    return (1.0 - w) * samples_[i] + w * samples_[i + 1];
}

double Kernel::support_radius() const {
    if (family_ == Family::dog) return 12.0 * std::max(s1_, s2_);
    return spacing_ * static_cast<double>(samples_.size() - 1);
}

double Kernel::second_moment() const {
    double R = support_radius();
    if (dim_ == 1) {
        auto f = [this](double r) { return r * r * value(r); };
        return 2.0 * adaptive_simpson(f, 0.0, R, 1e-11, 1e-16);
    }
    auto f = [this](double r) { return r * r * r * r * value(r); };
    return 4.0 * std::numbers::pi * adaptive_simpson(f, 0.0, R, 1e-11, 1e-16);
}

double Kernel::tail_mass_outside(double R) const {
    if (family_ == Family::dog) {
        if (dim_ != 1) throw ValidationError("Kernel: tail mass is defined for 1D kernels");
        return 2.0 * (std::abs(A_) * gauss1_tail(R, s1_) + std::abs(B_) * gauss1_tail(R, s2_));
    }
    double tail = 0.0;
    for (size_t i = 0; i + 1 < samples_.size(); ++i) {
        double r = spacing_ * static_cast<double>(i);
        if (r >= R) tail += std::abs(0.5 * (samples_[i] + samples_[i + 1])) * spacing_;
    }
    return 2.0 * tail;
}

Kernel Kernel::rescaled(double s) const {
    if (family_ != Family::dog)
        throw ValidationError("Kernel: rescaling is supported for the parametric family only");
    if (!(s > 0.0)) throw ValidationError("Kernel: scale factor must be positive");
    return difference_of_gaussians(A_, s * s1_, B_, s * s2_, dim_);
}

double interaction_length_sq(const Kernel& k) {
    double m2 = k.second_moment();
    if (m2 >= 0.0) {
        std::ostringstream os;
        os << "repulsive kernel: second moment " << m2 << " >= 0 violates the attraction condition";
        throw ValidationError(os.str());
    }
    return -m2;
}

std::vector<double> sample_kernel_on_grid(const Kernel& k, const Grid1D& g) {
    if (k.dimension() != 1)
        throw ValidationError("sample_kernel_on_grid: grid sampling needs a 1D kernel");
    double tail = k.tail_mass_outside(0.5 * g.length);
    if (tail >= 1e-12) {
        std::ostringstream os;
        os << "kernel tail mass " << tail << " outside L/2 = " << 0.5 * g.length
           << " exceeds 1e-12; enlarge the domain or narrow the kernel";
        throw ValidationError(os.str());
    }
    std::vector<double> w(static_cast<size_t>(g.n));
    for (int j = 0; j < g.n; ++j) {
        double xi = (j <= g.n / 2) ? j * g.dx : (j - g.n) * g.dx;
        w[static_cast<size_t>(j)] = k.value(xi);
    }
    double mass = 0.0;
    for (double v : w) mass += v;
    mass *= g.dx;
    if (!(std::abs(mass) > 0.0)) throw ValidationError("sample_kernel_on_grid: sampled mass is zero");
    for (double& v : w) v /= mass;
    return w;
}

} // namespace qhdw

// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#include "qhdw/params.hpp"

#include <string>

#include "qhdw/errors.hpp"

namespace qhdw {

void PhysicalParams::validate() const {
    std::string bad;
    auto flag = [&](const char* name) {
        if (!bad.empty()) bad += ", ";
        bad += name;
    };
    if (!(hbar > 0.0) || !std::isfinite(hbar)) flag("hbar");
    if (!(mass > 0.0) || !std::isfinite(mass)) flag("mass");
    if (!(kT >= 0.0) || !std::isfinite(kT)) flag("kT");
    if (!(c > 0.0)) flag("c"); // infinity is a valid sentinel
    if (!(a >= 0.0) || !std::isfinite(a)) flag("a");
    if (!(rho_floor > 0.0) || !std::isfinite(rho_floor)) flag("rho_floor");
    if (!bad.empty()) throw ValidationError("PhysicalParams: invalid value for " + bad);
}

} // namespace qhdw

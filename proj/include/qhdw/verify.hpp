// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qhdw/grid.hpp"

namespace qhdw {

/// One acceptance check: pass iff tol_lo <= measured <= tol_hi.
struct CheckRow {
    std::string id;
    std::string name;
    double measured = 0.0;
    double tol_lo = 0.0;
    double tol_hi = 0.0;
    bool pass = false;
    std::string note;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckRow> rows;
    double seconds = 0.0;
    bool all_pass() const;
};

/// Band-limited strictly positive density exp(sum of a few random
/// harmonics); deterministic in the seed.
ScalarField random_positive_field(const Grid1D& g, std::uint64_t seed, int modes = 3,
                                  double amplitude = 0.4);

SuiteResult verify_identities();
SuiteResult verify_oracle();
SuiteResult verify_covariant();

/// identities + oracle + covariant + harness checks (runtime budget and
/// bit-identical scenario reruns).
std::vector<SuiteResult> verify_all();

/// Suites by CLI name: all | identities | oracle | covariant.
std::vector<SuiteResult> verify_named(const std::string& suite);

bool all_pass(const std::vector<SuiteResult>& suites);
void print_report(std::ostream& os, const std::vector<SuiteResult>& suites);

} // namespace qhdw

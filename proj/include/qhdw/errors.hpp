// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qhdw {

/// Bad input: violated precondition, invalid configuration, malformed file.
/// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Failure detected while computing: divergence, non-finite values,
/// non-converging iteration. The CLI maps this to exit code 3.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace qhdw

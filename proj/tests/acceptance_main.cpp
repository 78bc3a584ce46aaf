// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: runs every verification criterion at its pinned
// tolerance and prints one pass/fail line per criterion.
#include <iostream>

#include "qhdw/verify.hpp"

int main() {
    try {
        auto suites = qhdw::verify_all();
        qhdw::print_report(std::cout, suites);
        bool ok = qhdw::all_pass(suites);
        std::cout << (ok ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES above") << "\n";
        return ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "acceptance suite crashed: " << e.what() << "\n";
        return 2;
    }
}

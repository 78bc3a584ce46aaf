// SPDX-FileCopyrightText: Copyright (c) 2026 The qhdw authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qhdw {

/// Write a CSV table: mandatory header row, floating point with 17
/// significant digits so reruns round-trip bit-for-bit.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

/// key = value lines.
void write_meta(const std::filesystem::path& path,
                const std::vector<std::pair<std::string, std::string>>& entries);

std::string format_g17(double v);

/// FNV-1a 64-bit hash of a byte string (config hashing, rerun checks).
std::uint64_t fnv1a64(const std::string& bytes);
std::string read_file(const std::filesystem::path& path);
std::uint64_t hash_file(const std::filesystem::path& path);
/// Combined hash of every regular file in a directory (sorted by name).
std::uint64_t hash_directory(const std::filesystem::path& dir);

} // namespace qhdw

// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace inquire {

std::string read_file(const std::filesystem::path& path);  // throws IoError

/// Write via a sibling temp file and rename, so readers never observe a
/// partial file. Parent directories are created.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Like write_file_atomic, but leaves the file (and its mtime) untouched when
/// the content is already identical. Returns true if bytes were written.
bool write_if_changed(const std::filesystem::path& path, std::string_view content);

/// Lines without their terminators; a trailing newline does not yield an
/// empty final line.
std::vector<std::string_view> split_lines(std::string_view text);

std::string sha256_hex(std::string_view data);

}  // namespace inquire

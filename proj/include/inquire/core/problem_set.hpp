// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "inquire/core/types.hpp"

namespace inquire {

using ProblemSet = std::vector<Problem>;

nlohmann::ordered_json problem_to_json(const Problem& p);
Problem problem_from_json(const nlohmann::json& j);  // throws ParseError

/// Invariant violations of one problem (gold shape, non-empty fields).
std::vector<std::string> validate_problem(const Problem& p);

/// One JSON record per line. Rejects duplicate ids and invalid problems.
ProblemSet parse_problem_set(std::string_view text);
std::string serialize_problem_set(const ProblemSet& problems);

ProblemSet read_problem_set(const std::filesystem::path& path);

const Problem* find_problem(const ProblemSet& problems, std::string_view id);

}  // namespace inquire

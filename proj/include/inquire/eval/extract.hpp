// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "inquire/core/types.hpp"

namespace inquire::eval {

/// Integer following the last answer marker in `text`.
///
/// The marker is the word "Answer" (any case) with an optional colon, e.g.
/// "Answer: 6", "Answer 6", "**Final answer:** $1,200". Thousands separators,
/// a leading sign and a currency sign are accepted; decimals are not
/// integers and do not match. When several lines carry a marker the last one
/// wins, and within that line the last marker wins.
std::optional<Integer> extract_math_answer(std::string_view text);

/// Contents of the last ``` fenced block (info string dropped). An opening
/// fence left unclosed at the end of the text still counts and runs to the
/// end.
std::optional<std::string> extract_code_block(std::string_view text);

}  // namespace inquire::eval

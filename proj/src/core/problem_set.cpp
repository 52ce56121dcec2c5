// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/core/problem_set.hpp"

#include <set>

#include "inquire/core/errors.hpp"
#include "inquire/core/io.hpp"

namespace inquire {

nlohmann::ordered_json problem_to_json(const Problem& p) {
  nlohmann::ordered_json j;
  j["id"] = p.id;
  j["domain"] = to_string(p.domain);
  j["statement"] = p.statement;
  if (const auto* m = std::get_if<MathGold>(&p.gold)) {
    j["gold"] = {{"answer", to_string(m->answer)}};
  } else {
    const auto& c = std::get<CodingGold>(p.gold);
    j["gold"] = {{"entry_point", c.entry_point}, {"canonical_tests", c.canonical_tests}};
  }
  j["source"] = p.source;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : p.metadata) j["metadata"][k] = v;
  return j;
}

Problem problem_from_json(const nlohmann::json& j) {
  try {
    Problem p;
    p.id = j.at("id").get<std::string>();
    p.domain = parse_domain(j.at("domain").get<std::string>());
    p.statement = j.at("statement").get<std::string>();
    const auto& g = j.at("gold");
    if (p.domain == Domain::math) {
      const auto& a = g.is_object() ? g.at("answer") : g;
      if (a.is_number_integer()) {
        p.gold = MathGold{Integer(a.get<std::int64_t>())};
      } else if (a.is_string()) {
        p.gold = MathGold{parse_integer(a.get<std::string>())};
      } else {
        throw ParseError("math gold must be an integer");
      }
    } else {
      p.gold = CodingGold{g.at("entry_point").get<std::string>(),
                          g.at("canonical_tests").get<std::string>()};
    }
    p.source = j.value("source", std::string{});
    if (j.contains("metadata")) {
      for (const auto& [k, v] : j.at("metadata").items()) {
        p.metadata[k] = v.is_string() ? v.get<std::string>() : v.dump();
      }
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("problem schema violation: ") + e.what());
  }
}

std::vector<std::string> validate_problem(const Problem& p) {
  std::vector<std::string> out;
  if (p.id.empty()) out.push_back("empty id");
  if (p.statement.empty()) out.push_back("empty statement");
  const bool math_gold = std::holds_alternative<MathGold>(p.gold);
  if (p.domain == Domain::math && !math_gold) out.push_back("math problem without integer gold");
  if (p.domain == Domain::coding) {
    if (math_gold) {
      out.push_back("coding problem without test suite");
    } else {
      const auto& c = std::get<CodingGold>(p.gold);
      if (c.entry_point.empty()) out.push_back("coding problem with empty entry point");
      if (c.canonical_tests.empty()) out.push_back("coding problem with empty test suite");
    }
  }
  return out;
}

ProblemSet parse_problem_set(std::string_view text) {
  ProblemSet out;
  std::set<std::string> ids;
  std::size_t line_no = 0;
  for (std::string_view line : split_lines(text)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    Problem p;
    try {
      p = problem_from_json(j);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
    if (auto v = validate_problem(p); !v.empty()) throw ParseError(v.front(), line_no);
    if (!ids.insert(p.id).second) throw ParseError("duplicate problem id '" + p.id + "'", line_no);
    out.push_back(std::move(p));
  }
  return out;
}

std::string serialize_problem_set(const ProblemSet& problems) {
  std::string out;
  for (const auto& p : problems) {
    out += problem_to_json(p).dump();
    out += '\n';
  }
  return out;
}

ProblemSet read_problem_set(const std::filesystem::path& path) {
  return parse_problem_set(read_file(path));
}

const Problem* find_problem(const ProblemSet& problems, std::string_view id) {
  for (const auto& p : problems) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

}  // namespace inquire

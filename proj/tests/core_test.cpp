// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "inquire/core/config.hpp"
#include "inquire/core/errors.hpp"
#include "inquire/core/history.hpp"
#include "inquire/core/io.hpp"
#include "inquire/core/problem_set.hpp"
#include "support/test_support.hpp"

using namespace inquire;

namespace {

ConversationHistory make(std::initializer_list<std::pair<Role, Tag>> shape) {
  ConversationHistory h;
  h.problem_id = "p1";
  for (auto [role, tag] : shape) h.append(role, tag, "x");
  return h;
}

}  // namespace

TEST_CASE("validate_history: minimal greeting is valid") {
  CHECK(validate_history(make({{Role::teacher, Tag::greeting}})).empty());
}

TEST_CASE("validate_history: two student messages in a row") {
  const auto v = validate_history(
      make({{Role::teacher, Tag::greeting}, {Role::student, Tag::question}, {Role::student, Tag::question}}));
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "alternation violated at index 2");
}

TEST_CASE("validate_history: pre-assessment pair before the first exchange") {
  CHECK(validate_history(make({{Role::teacher, Tag::greeting},
                               {Role::student, Tag::assessment_solution},
                               {Role::teacher, Tag::assessment_feedback},
                               {Role::student, Tag::question},
                               {Role::teacher, Tag::answer}}))
            .empty());
}

TEST_CASE("validate_history: reports every violation") {
  SUBCASE("empty") { CHECK(validate_history({}) == std::vector<std::string>{"missing greeting at index 0"}); }
  SUBCASE("no greeting") {
    const auto v = validate_history(make({{Role::student, Tag::question}}));
    CHECK(std::find(v.begin(), v.end(), "missing greeting at index 0") != v.end());
  }
  SUBCASE("role/tag mismatch") {
    const auto v = validate_history(make({{Role::teacher, Tag::greeting}, {Role::teacher, Tag::question}}));
    CHECK(std::find(v.begin(), v.end(), "role/tag mismatch at index 1") != v.end());
  }
  SUBCASE("unpaired assessment") {
    const auto v = validate_history(make({{Role::teacher, Tag::greeting},
                                          {Role::student, Tag::assessment_solution},
                                          {Role::student, Tag::question}}));
    CHECK(v == std::vector<std::string>{"unpaired assessment_solution at index 1"});
  }
  SUBCASE("feedback without solution") {
    const auto v = validate_history(make({{Role::teacher, Tag::greeting}, {Role::teacher, Tag::assessment_feedback}}));
    CHECK(v == std::vector<std::string>{"unpaired assessment_feedback at index 1"});
  }
  SUBCASE("turn index gap") {
    auto h = make({{Role::teacher, Tag::greeting}, {Role::student, Tag::question}});
    h.messages[1].turn_index = 5;
    CHECK(validate_history(h) == std::vector<std::string>{"turn_index mismatch at index 1"});
  }
  SUBCASE("second greeting") {
    const auto v = validate_history(make({{Role::teacher, Tag::greeting}, {Role::teacher, Tag::greeting}}));
    CHECK(std::find(v.begin(), v.end(), "extra greeting at index 1") != v.end());
  }
}

TEST_CASE("transcript round trip is identity and canonical over random histories") {
  std::mt19937_64 rng(20261014);
  for (int i = 0; i < 1000; ++i) {
    const ConversationHistory h = testing::random_history(rng);
    REQUIRE(validate_history(h).empty());
    const std::string once = serialize_transcript(h);
    const ConversationHistory back = parse_transcript(once);
    REQUIRE(back == h);
    REQUIRE(serialize_transcript(back) == once);
  }
}

TEST_CASE("transcript record layout") {
  ConversationHistory h;
  h.problem_id = "gsm-1";
  h.append(Role::teacher, Tag::greeting, "Hi there! I'm your math tutor. How can I help you today?");
  CHECK(serialize_transcript(h) ==
        "{\"problem_id\":\"gsm-1\",\"turn_index\":0,\"role\":\"teacher\",\"tag\":\"greeting\","
        "\"content\":\"Hi there! I'm your math tutor. How can I help you today?\"}\n");
}

TEST_CASE("transcript parse errors name the line") {
  const std::string good = R"({"problem_id":"p","turn_index":0,"role":"teacher","tag":"greeting","content":"hi"})";
  SUBCASE("unknown tag") {
    const std::string bad = good + "\n" +
                            R"({"problem_id":"p","turn_index":1,"role":"student","tag":"musing","content":"?"})";
    try {
      parse_transcript(bad);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(std::string(e.what()).find("unknown tag 'musing'") != std::string::npos);
    }
  }
  SUBCASE("broken JSON") {
    try {
      parse_transcript(good + "\n{not json\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("missing field") {
    CHECK_THROWS_AS(parse_transcript(R"({"problem_id":"p","role":"teacher","tag":"greeting","content":"hi"})"),
                    ParseError);
  }
  SUBCASE("empty") { CHECK_THROWS_AS(parse_transcript(""), ParseError); }
}

TEST_CASE("problem set records") {
  const std::string text =
      R"({"id":"m1","domain":"math","statement":"2+2?","gold":{"answer":"123456789012345678901234567890"}})"
      "\n"
      R"({"id":"c1","domain":"coding","statement":"def f(): ...","gold":{"entry_point":"f","canonical_tests":"assert f() is None"},"source":"HumanEval"})"
      "\n";
  const ProblemSet set = parse_problem_set(text);
  REQUIRE(set.size() == 2);
  CHECK(to_string(set[0].math_gold().answer) == "123456789012345678901234567890");
  CHECK(set[1].coding_gold().entry_point == "f");
  CHECK(parse_problem_set(serialize_problem_set(set)) == set);

  SUBCASE("duplicate ids rejected") {
    CHECK_THROWS_AS(parse_problem_set(text + std::string(R"({"id":"m1","domain":"math","statement":"x","gold":1})")),
                    ParseError);
  }
  SUBCASE("coding problem needs tests") {
    CHECK_THROWS_AS(
        parse_problem_set(R"({"id":"c","domain":"coding","statement":"x","gold":{"entry_point":"f","canonical_tests":""}})"),
        ParseError);
  }
  SUBCASE("math gold must be integer") {
    CHECK_THROWS_AS(parse_problem_set(R"({"id":"m","domain":"math","statement":"x","gold":{"answer":"1.5"}})"),
                    ParseError);
  }
}

TEST_CASE("run config parsing and validation") {
  testing::TempDir dir;
  write_file_atomic(dir / "s.json", R"({"rules":[{"response":"ok"}]})");
  nlohmann::json doc = {
      {"run_id", "r"},
      {"endpoints", {{"student", {{"kind", "scripted"}, {"script", "s.json"}}}}},
  };
  RunConfig cfg = parse_run_config(doc, dir.path());
  CHECK(cfg.sampling.temperature == doctest::Approx(0.3));
  CHECK(cfg.sampling.max_tokens == 2048);
  CHECK(cfg.n_student_turns == 6);
  CHECK(cfg.eval_k == 5);
  CHECK(cfg.exchanges == 3);
  CHECK_FALSE(cfg.t_assess.has_value());
  CHECK(cfg.judge_sampling.temperature == 0.0);
  CHECK(cfg.endpoint("guide").model_name == "scripted-student");
  CHECK_THROWS_AS(cfg.endpoint("judge"), ConfigError);

  SUBCASE("t_assess range") {
    doc["t_assess"] = 7;
    CHECK_THROWS_AS(parse_run_config(doc, dir.path()), ConfigError);
    doc["t_assess"] = 0;
    CHECK_THROWS_AS(parse_run_config(doc, dir.path()), ConfigError);
    doc["t_assess"] = -1;
    CHECK_FALSE(parse_run_config(doc, dir.path()).t_assess.has_value());
    doc["t_assess"] = 6;
    CHECK(parse_run_config(doc, dir.path()).t_assess == 6);
  }
  SUBCASE("guided runs need m >= 2") {
    doc["candidates"] = 1;
    CHECK_THROWS_AS(parse_run_config(doc, dir.path()).validate(true), ConfigError);
  }
  SUBCASE("digest tracks every field, including script contents") {
    const std::string base = config_digest(cfg);
    CHECK(config_digest(parse_run_config(doc, dir.path())) == base);
    auto changed = doc;
    changed["eval_k"] = 4;
    CHECK(config_digest(parse_run_config(changed, dir.path())) != base);
    write_file_atomic(dir / "s.json", R"({"rules":[{"response":"different"}]})");
    CHECK(config_digest(parse_run_config(doc, dir.path())) != base);
  }
  SUBCASE("unknown mode") {
    doc["mode"] = "socratic";
    CHECK_THROWS_AS(parse_run_config(doc, dir.path()), ConfigError);
  }
}

TEST_CASE("sha256 known vector") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

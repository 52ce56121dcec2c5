// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <httplib.h>

#include <chrono>
#include <thread>

#include "inquire/core/errors.hpp"
#include "inquire/core/io.hpp"
#include "inquire/eval/extract.hpp"
#include "inquire/eval/grading.hpp"
#include "inquire/eval/sandbox.hpp"
#include "support/extraction_fixtures.hpp"
#include "support/test_support.hpp"

using namespace inquire;
using namespace inquire::eval;
using nlohmann::json;

namespace {

SandboxLimits fast_limits(double timeout_s = 5.0) {
  SandboxLimits l;
  l.wall_clock_timeout_s = timeout_s;
  return l;
}

std::shared_ptr<gateway::Backend> student_script(const std::vector<std::string>& responses) {
  return std::make_shared<gateway::ScriptedBackend>(
      json{{"rules", {{{"role", "student"}, {"purpose", "eval"}, {"responses", responses}}}}});
}

const CodingGold& add_gold() {
  static const CodingGold gold = testing::coding_problem("c").coding_gold();
  return gold;
}

}  // namespace

TEST_CASE("math answer extraction fixtures") {
  const auto& fixtures = testing::math_fixtures();
  REQUIRE(fixtures.size() >= 20);
  for (const auto& f : fixtures) {
    CAPTURE(f.text);
    const auto got = extract_math_answer(f.text);
    if (f.expected) {
      REQUIRE(got.has_value());
      CHECK(inquire::to_string(*got) == *f.expected);
    } else {
      CHECK_FALSE(got.has_value());
    }
  }
}

TEST_CASE("code block extraction fixtures") {
  const auto& fixtures = testing::code_fixtures();
  REQUIRE(fixtures.size() >= 10);
  for (const auto& f : fixtures) {
    CAPTURE(f.name);
    const auto got = extract_code_block(f.text);
    CHECK(got == f.expected);
  }
}

TEST_CASE("last fenced block wins for any number of blocks") {
  for (int n = 1; n <= 6; ++n) {
    std::string text;
    for (int i = 0; i < n; ++i) text += "prose " + std::to_string(i) + "\n```\nblock" + std::to_string(i) + "\n```\n";
    CHECK(extract_code_block(text) == "block" + std::to_string(n - 1) + "\n");
  }
}

TEST_CASE("math grading") {
  Grader grader;
  const Problem p = testing::math_problem("m", 6);
  const auto ok = grader.grade("work\nAnswer: 6", p);
  CHECK(ok.correct);
  CHECK(ok.failure_reason == FailureReason::none);
  CHECK(std::get<Integer>(ok.extracted) == 6);
  const auto wrong = grader.grade("Answer: 7", p);
  CHECK_FALSE(wrong.correct);
  CHECK(wrong.failure_reason == FailureReason::wrong_answer);
  const auto none = grader.grade("I think it is six", p);
  CHECK(none.failure_reason == FailureReason::no_extraction);
  CHECK(std::holds_alternative<std::monostate>(none.extracted));
  CHECK(grader.grade("work\nAnswer: 6", p) == ok);
}

TEST_CASE("verdict and record json round trip") {
  EvalRecord r;
  r.problem_id = "p";
  r.t = 3;
  r.k = 3;
  SampleVerdict a{"Answer: 6", Integer(6), true, FailureReason::none, ""};
  SampleVerdict b{"```\nx\n```", std::string("x\n"), false, FailureReason::test_failure, "AssertionError"};
  SampleVerdict c{"?", std::monostate{}, false, FailureReason::no_extraction, ""};
  r.samples = {a, b, c};
  r.pass = true;
  CHECK(eval_record_from_json(json::parse(to_json(r).dump())) == r);
  json bad = json::parse(to_json(a).dump());
  bad["failure_reason"] = "wrong_answer";
  CHECK_THROWS_AS(sample_verdict_from_json(bad), ParseError);
  bad["failure_reason"] = "exploded";
  CHECK_THROWS_AS(sample_verdict_from_json(bad), ParseError);
}

TEST_CASE("compose_program") {
  CodingGold g{"add", "assert add(1, 2) == 3\n"};
  CHECK(compose_program("def add(a, b):\n    return a + b\n", g) ==
        "def add(a, b):\n    return a + b\n\n\nassert add(1, 2) == 3\n");
  CodingGold he{"add", "def check(candidate):\n    assert candidate(1, 2) == 3\n"};
  CHECK(compose_program("x = 1", he).ends_with("\ncheck(add)\n"));
  CodingGold called{"add", "def check(candidate):\n    assert candidate(1, 2) == 3\n\ncheck(add)\n"};
  CHECK(compose_program("x = 1", called) == "x = 1\n\n\n" + called.canonical_tests);
}

TEST_CASE("sandboxed code tests") {
  Grader grader(fast_limits());
  SUBCASE("correct solution passes") {
    const auto v = grader.run_code_tests("def add(a, b):\n    return a + b\n", add_gold());
    CHECK(v.correct);
    CHECK(v.failure_reason == FailureReason::none);
  }
  SUBCASE("wrong value is a test failure") {
    const auto v = grader.run_code_tests("def add(a, b):\n    return a - b\n", add_gold());
    CHECK_FALSE(v.correct);
    CHECK(v.failure_reason == FailureReason::test_failure);
    CHECK(v.detail.find("AssertionError") != std::string::npos);
  }
  SUBCASE("exception is a runtime error") {
    const auto v = grader.run_code_tests("def add(a, b):\n    raise ValueError('no')\n", add_gold());
    CHECK(v.failure_reason == FailureReason::runtime_error);
    CHECK(v.detail.find("ValueError") != std::string::npos);
  }
  SUBCASE("syntax error is a runtime error") {
    const auto v = grader.run_code_tests("def add(a, b)\n    return a + b\n", add_gold());
    CHECK(v.failure_reason == FailureReason::runtime_error);
  }
  SUBCASE("empty source violates the contract") {
    CHECK_THROWS_AS(grader.run_code_tests("", add_gold()), ContractError);
  }
  SUBCASE("graded from a completion") {
    const Problem p = testing::coding_problem("c");
    CHECK(grader.grade("```python\ndef add(a, b):\n    return a + b\n```", p).correct);
    CHECK(grader.grade("no code here", p).failure_reason == FailureReason::no_extraction);
    CHECK(grader.grade("```\n\n```", p).failure_reason == FailureReason::no_extraction);
  }
  SUBCASE("per-test counts") {
    const auto all = grader.count_tests("def add(a, b):\n    return a + b\n", add_gold());
    CHECK(all.passed == 3);
    CHECK(all.total == 3);
    CHECK(all.first_failure == FailureReason::none);
    // Correct only when b == 2 among (1,2), (-1,1), (10,5).
    const auto some = grader.count_tests("def add(a, b):\n    return a + 2\n", add_gold());
    CHECK(some.passed == 1);
    CHECK(some.total == 3);
    CHECK(some.first_failure == FailureReason::test_failure);
  }
}

TEST_CASE("sandbox terminates an infinite loop") {
  Grader grader(fast_limits(2.0));
  const auto start = std::chrono::steady_clock::now();
  const auto v = grader.run_code_tests("def add(a, b):\n    while True:\n        pass\n", add_gold());
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(v.failure_reason == FailureReason::timeout);
  CHECK(elapsed < 3.0);
}

TEST_CASE("sandbox kills the whole process group on timeout") {
  testing::TempDir dir;
  const auto marker = dir / "survivor";
  const std::string program =
      "import os, time, subprocess, sys\n"
      "subprocess.Popen([sys.executable, '-c', 'import time; time.sleep(3); open(" +
      json(marker.string()).dump() + ", \"w\").write(\"x\")'])\n"
      "time.sleep(60)\n";
  SandboxLimits limits = fast_limits(1.0);
  const auto r = execute_program(program, limits);
  CHECK(r.timed_out);
  std::this_thread::sleep_for(std::chrono::milliseconds(3500));
  CHECK_FALSE(std::filesystem::exists(marker));
}

TEST_CASE("sandbox denies network access") {
  httplib::Server server;
  server.Get("/", [](const httplib::Request&, httplib::Response& res) { res.set_content("reachable", "text/plain"); });
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  const std::string program =
      "import urllib.request\n"
      "body = urllib.request.urlopen('http://127.0.0.1:" + std::to_string(port) + "/', timeout=2).read()\n"
      "assert body == b'reachable'\n";

  SandboxLimits open = fast_limits();
  open.deny_network = false;
  const auto allowed = execute_program(program, open);

  const auto denied = execute_program(program, fast_limits());
  server.stop();
  t.join();

  CHECK(allowed.exit_code == 0);
  CHECK_FALSE(denied.timed_out);
  CHECK(denied.exit_code != 0);
  CHECK(denied.wall_seconds <= 5.0 + 1.0);
}

TEST_CASE("sandbox enforces the memory cap") {
  SandboxLimits limits = fast_limits();
  limits.memory_bytes = std::size_t{256} * 1024 * 1024;
  const auto r = execute_program("x = bytearray(1024 * 1024 * 1024)\n", limits);
  CHECK(r.exit_code != 0);
  CHECK(r.stderr_text.find("MemoryError") != std::string::npos);
}

TEST_CASE("sandbox isolates the working directory") {
  const auto r = execute_program("import os\nprint(os.getcwd())\nprint(sorted(os.listdir('.')))\n", fast_limits());
  REQUIRE(r.exit_code == 0);
  const auto lines = split_lines(r.stdout_text);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].find("inquire-sbx-") != std::string_view::npos);
  CHECK(lines[0].ends_with("/work"));
  CHECK(lines[1] == "['solution.py']");
  CHECK_FALSE(std::filesystem::exists(std::string(lines[0])));
}

TEST_CASE("missing interpreter is a configuration error") {
  SandboxLimits limits = fast_limits();
  limits.interpreter = {"definitely-not-an-interpreter-xyz"};
  CHECK_THROWS_AS(execute_program("print(1)", limits), ConfigError);
  limits.interpreter = {"/nonexistent/python3"};
  CHECK_THROWS_AS(execute_program("print(1)", limits), ConfigError);
}

TEST_CASE("pass_at_k examples") {
  Grader grader;
  const Problem p = testing::math_problem("p", 6);
  ConversationHistory h;
  h.problem_id = "p";
  h.append(Role::teacher, Tag::greeting, "Hi there! I'm your math tutor.");
  SamplingParams sp;

  gateway::ModelClient some("s", student_script({"Answer: 3", "Answer: 5", "Answer: 6", "Answer: 2", "Answer: 9"}),
                            nullptr);
  const EvalRecord r = pass_at_k(some, h, p, 5, sp, grader, 1);
  CHECK(r.pass);
  CHECK(r.k == 5);
  CHECK(r.samples.size() == 5);
  CHECK(r.samples[2].correct);
  CHECK(correct_fraction(r) == doctest::Approx(0.2));

  gateway::ModelClient none("s", student_script({"Answer: 3", "Answer: 5", "Answer: 7", "Answer: 2", "Answer: 9"}),
                            nullptr);
  CHECK_FALSE(pass_at_k(none, h, p, 5, sp, grader, 1).pass);
  CHECK_THROWS_AS(pass_at_k(none, h, p, 0, sp, grader, 1), ContractError);
  CHECK_THROWS_AS(pass_at_k(none, h, p, 6, sp, grader, 1), ScriptExhaustedError);
}

TEST_CASE("pass is the OR of sample verdicts for every pattern up to k = 5") {
  Grader grader;
  const Problem p = testing::math_problem("p", 6);
  ConversationHistory h;
  h.problem_id = "p";
  h.append(Role::teacher, Tag::greeting, "hi");
  int checked = 0;
  for (int k = 1; k <= 5; ++k) {
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      std::vector<std::string> responses;
      for (int i = 0; i < k; ++i) responses.push_back((mask >> i) & 1u ? "Answer: 6" : "Answer: 5");
      gateway::ModelClient student("s", student_script(responses), nullptr);
      const EvalRecord r = pass_at_k(student, h, p, k, {}, grader, 1);
      bool oracle = false;
      for (int i = 0; i < k; ++i) oracle = oracle || ((mask >> i) & 1u);
      CHECK(r.pass == oracle);
      for (int i = 0; i < k; ++i) CHECK(r.samples[static_cast<std::size_t>(i)].correct == (((mask >> i) & 1u) != 0));
      // Prefix property: pass at any k' >= k over the same verdict stream.
      if (r.pass) {
        for (int k2 = k; k2 <= 5; ++k2) {
          std::vector<std::string> longer = responses;
          while (static_cast<int>(longer.size()) < k2) longer.push_back("Answer: 5");
          gateway::ModelClient s2("s", student_script(longer), nullptr);
          CHECK(pass_at_k(s2, h, p, k2, {}, grader, 1).pass);
        }
      }
      ++checked;
    }
  }
  CHECK(checked == 2 + 4 + 8 + 16 + 32);
}

TEST_CASE("mean pass over a scripted problem set") {
  Grader grader;
  json rules = json::array();
  std::vector<Problem> problems;
  // Problems 0..3 have one correct sample at index i; 4..9 have none.
  std::vector<bool> expected_pass;
  for (int i = 0; i < 10; ++i) {
    const std::string id = "q" + std::to_string(i);
    problems.push_back(testing::math_problem(id, 6, "Problem " + id + ": what is 2 + 4?"));
    std::vector<std::string> responses(5, "Answer: 1");
    if (i < 4) responses[static_cast<std::size_t>(i)] = "Answer: 6";
    expected_pass.push_back(i < 4);
    rules.push_back({{"problem_id", id}, {"responses", responses}});
  }
  gateway::ModelClient student("s", std::make_shared<gateway::ScriptedBackend>(json{{"rules", rules}}), nullptr);
  std::vector<EvalRecord> records;
  for (const auto& p : problems) {
    ConversationHistory h;
    h.problem_id = p.id;
    h.append(Role::teacher, Tag::greeting, "hi");
    records.push_back(pass_at_k(student, h, p, 5, {}, grader, 1));
  }
  int recount = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].pass == expected_pass[i]);
    recount += expected_pass[i] ? 1 : 0;
  }
  CHECK(mean_pass(records) == doctest::Approx(recount / 10.0).epsilon(1e-12));
  CHECK(mean_pass(records) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(mean_pass(std::vector<EvalRecord>{}) == 0.0);
}

TEST_CASE("endpoint failures mark samples without aborting the record") {
  Grader grader;
  const Problem p = testing::math_problem("p", 6);
  ConversationHistory h;
  h.problem_id = "p";
  h.append(Role::teacher, Tag::greeting, "hi");
  auto flaky = std::make_shared<gateway::FunctionBackend>(
      [](const gateway::ChatRequest&, const gateway::CallContext& ctx) -> std::string {
        if (ctx.sample_index == 1) throw EndpointError("down");
        return ctx.sample_index == 2 ? "Answer: 6" : "Answer: 0";
      });
  gateway::ModelClient student("s", flaky, nullptr);
  const EvalRecord r = pass_at_k(student, h, p, 3, {}, grader, 2);
  CHECK(r.pass);
  CHECK(r.t == 2);
  CHECK(r.samples[1].failure_reason == FailureReason::runtime_error);
  CHECK_FALSE(r.samples[1].correct);

  auto dead = std::make_shared<gateway::FunctionBackend>(
      [](const gateway::ChatRequest&, const gateway::CallContext&) -> std::string { throw EndpointError("down"); });
  gateway::ModelClient gone("s2", dead, nullptr);
  CHECK_THROWS_AS(pass_at_k(gone, h, p, 3, {}, grader, 1), EndpointError);
}

TEST_CASE("coding pass_at_k grades samples in parallel") {
  Grader grader(fast_limits());
  const Problem p = testing::coding_problem("c");
  ConversationHistory h;
  h.problem_id = "c";
  h.append(Role::teacher, Tag::greeting, "Hi there! I'm your coding tutor. How can I help you today?");
  gateway::ModelClient student(
      "s",
      student_script({"```python\ndef add(a, b):\n    return a - b\n```", "no code",
                      "```python\ndef add(a, b):\n    return a + b\n```"}),
      nullptr);
  const EvalRecord r = pass_at_k(student, h, p, 3, {}, grader, 1);
  CHECK(r.pass);
  CHECK(r.samples[0].failure_reason == FailureReason::test_failure);
  CHECK(r.samples[1].failure_reason == FailureReason::no_extraction);
  CHECK(r.samples[2].correct);
}

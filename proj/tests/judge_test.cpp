// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <random>

#include "inquire/core/errors.hpp"
#include "inquire/core/io.hpp"
#include "inquire/judge/analytics.hpp"
#include "inquire/judge/judge.hpp"
#include "inquire/judge/report.hpp"
#include "support/test_support.hpp"

using namespace inquire;
using namespace inquire::judge;
using nlohmann::json;

namespace {

std::shared_ptr<gateway::Backend> replies(std::vector<std::string> texts) {
  // Reply i to the i-th attempt: attempts are told apart by how many re-asks
  // the request carries.
  return std::make_shared<gateway::FunctionBackend>(
      [texts = std::move(texts)](const gateway::ChatRequest& r, const gateway::CallContext&) {
        const std::size_t attempt = (r.messages.size() - 1) / 2;
        return texts[std::min(attempt, texts.size() - 1)];
      });
}

VerdictError::Reason reason_of(std::string_view text, VerdictKind kind) {
  try {
    parse_judge_verdict(text, kind);
  } catch (const VerdictError& e) {
    CHECK(e.raw() == text);
    return e.reason();
  }
  FAIL("expected VerdictError");
  return VerdictError::Reason::no_json;
}

}  // namespace

TEST_CASE("judge verdict parsing") {
  CHECK(parse_judge_verdict(R"({"progress": 0.62, "justification": "setup correct"})", VerdictKind::progress) ==
        Verdict{0.62, "setup correct"});
  CHECK(reason_of(R"({"similarity": 0.6, "justification": "close"})", VerdictKind::similarity) ==
        VerdictError::Reason::invalid);
  CHECK(parse_judge_verdict("```json\n{\"similarity\": 0.75, \"justification\": \"same\"}\n```", VerdictKind::similarity)
            .score == 0.75);
  CHECK(parse_judge_verdict(R"({"similarity": 1, "justification": "same"})", VerdictKind::similarity).score == 1.0);
  CHECK(reason_of(R"({"progress": "0.5", "justification": "x"})", VerdictKind::progress) ==
        VerdictError::Reason::invalid);
  CHECK(reason_of(R"({"progress": 1.2, "justification": "x"})", VerdictKind::progress) == VerdictError::Reason::invalid);
  CHECK(reason_of(R"({"progress": -0.1, "justification": "x"})", VerdictKind::progress) == VerdictError::Reason::invalid);
  CHECK(reason_of(R"({"progress": true, "justification": "x"})", VerdictKind::progress) == VerdictError::Reason::invalid);
  CHECK(reason_of(R"({"progress": 0.5})", VerdictKind::progress) == VerdictError::Reason::invalid);
  CHECK(reason_of(R"({"progress": 0.5, "justification": ""})", VerdictKind::progress) == VerdictError::Reason::invalid);
  CHECK(reason_of(R"({"similarity": 0.5, "justification": "x"})", VerdictKind::progress) ==
        VerdictError::Reason::invalid);
  CHECK(reason_of("I would rate this 0.5.", VerdictKind::progress) == VerdictError::Reason::no_json);
  CHECK(reason_of("{progress: 0.5}", VerdictKind::progress) == VerdictError::Reason::no_json);
  CHECK(reason_of("", VerdictKind::progress) == VerdictError::Reason::no_json);
  // Braces inside strings and a broken object before the real one.
  CHECK(parse_judge_verdict(R"(Note {oops. {"progress": 0.25, "justification": "uses {x} and \"y}\""})",
                            VerdictKind::progress)
            .justification == "uses {x} and \"y}\"");
  CHECK(parse_judge_verdict(R"({"progress": 0.0, "justification": "a", "extra": {"n": 1}} trailing)",
                            VerdictKind::progress)
            .score == 0.0);
}

TEST_CASE("valid payloads survive arbitrary wrappers") {
  std::mt19937_64 rng(5);
  const std::vector<std::string> prefixes = {"", "Here is my evaluation:\n", "```json\n", "```\n", "Sure! ",
                                             "**Verdict**\n\n", "The JSON follows.\n```json\n"};
  const std::vector<std::string> suffixes = {"", "\n```", "\nLet me know if you need more.", "\n\n---", " :)"};
  for (int trial = 0; trial < 500; ++trial) {
    const double score = kSimilarityAnchors[rng() % 5];
    const bool similarity = rng() % 2 == 0;
    const double value = similarity ? score : static_cast<double>(rng() % 1001) / 1000.0;
    json payload = {{similarity ? "similarity" : "progress", value}, {"justification", "because " + std::to_string(trial)}};
    std::string prose;
    for (char c : testing::random_text(rng)) {
      if (c != '{' && c != '}') prose += c;
    }
    const std::string text = prefixes[rng() % prefixes.size()] + prose + "\n" + payload.dump(rng() % 2 ? 2 : -1) +
                             suffixes[rng() % suffixes.size()] + prose;
    CAPTURE(text);
    const Verdict v = parse_judge_verdict(text, similarity ? VerdictKind::similarity : VerdictKind::progress);
    CHECK(v.score == value);
    CHECK(v.justification == "because " + std::to_string(trial));
  }
}

TEST_CASE("progress judge") {
  const Problem p = testing::math_problem("p", 18, "Three bags of six apples. How many apples?");
  const JudgeOptions opt;

  SUBCASE("passthrough") {
    gateway::ModelClient judge("j", replies({R"({"progress": 0.75, "justification": "nearly there"})"}), nullptr);
    const auto r = judge_progress(judge, p, "Should I multiply?", opt, 1);
    REQUIRE(r.verdict);
    CHECK(r.verdict->score == 0.75);
    CHECK(r.calls == 1);
    CHECK_FALSE(r.gold_echo);
  }
  SUBCASE("prose then valid JSON") {
    gateway::ModelClient judge(
        "j", replies({"Thinking about it... {\"progress\": 0.5, \"justification\": \"halfway\"} done"}), nullptr);
    CHECK(judge_progress(judge, p, "q", opt, 1).verdict->score == 0.5);
  }
  SUBCASE("malformed then valid on re-ask") {
    gateway::ModelClient judge("j", replies({"no json here", R"({"progress": 0.25, "justification": "setup"})"}), nullptr);
    const auto r = judge_progress(judge, p, "q", opt, 1);
    CHECK(r.calls == 2);
    CHECK(r.verdict->score == 0.25);
  }
  SUBCASE("always malformed is judged-missing after three calls") {
    auto backend = std::make_shared<gateway::FunctionBackend>(
        [](const gateway::ChatRequest& r, const gateway::CallContext&) {
          if (r.messages.size() > 1) CHECK(r.messages.back().content == "Return only the JSON object.");
          return std::string("I refuse to use JSON.");
        });
    gateway::ModelClient judge("j", backend, nullptr);
    const auto r = judge_progress(judge, p, "q", opt, 1);
    CHECK(r.missing());
    CHECK(r.calls == 3);
    CHECK(judge.backend_calls() == 3);
    CHECK(r.raw.size() == 3);
  }
  SUBCASE("gold echo in the justification is flagged") {
    gateway::ModelClient judge("j", replies({R"({"progress": 1.0, "justification": "gets 18 correctly"})"}), nullptr);
    CHECK(judge_progress(judge, p, "q", opt, 1).gold_echo);
  }
  SUBCASE("request carries the gold and the student's turn at temperature 0") {
    auto backend = std::make_shared<gateway::FunctionBackend>(
        [](const gateway::ChatRequest& r, const gateway::CallContext& ctx) {
          CHECK(r.sampling.temperature == 0.0);
          CHECK(ctx.purpose == "judge_progress");
          CHECK(r.system_prompt.find("strict and consistent math grader") != std::string::npos);
          CHECK(r.messages[0].content.find("Gold answer:\n18") != std::string::npos);
          CHECK(r.messages[0].content.find("Should I multiply?") != std::string::npos);
          return std::string(R"({"progress": 0.5, "justification": "ok"})");
        });
    gateway::ModelClient judge("j", backend, nullptr);
    CHECK_FALSE(judge_progress(judge, p, "Should I multiply?", opt, 2).missing());
  }
  SUBCASE("endpoint failure is judged-missing") {
    gateway::ModelClient judge("j", std::make_shared<gateway::FunctionBackend>(
                                        [](const gateway::ChatRequest&, const gateway::CallContext&) -> std::string {
                                          throw EndpointError("down");
                                        }),
                               nullptr);
    CHECK(judge_progress(judge, p, "q", opt, 1).missing());
  }
}

TEST_CASE("similarity judge and matrix shape") {
  const Problem p = testing::math_problem("p", 6);
  // Faithful judge: identical responses are the same intent, otherwise unrelated
  // unless they share the word "split".
  auto faithful = std::make_shared<gateway::FunctionBackend>([](const gateway::ChatRequest& r, const gateway::CallContext&) {
    const std::string& u = r.messages[0].content;
    const auto a = u.substr(u.find("Response A:\n") + 12, u.find("\n\nResponse B:\n") - u.find("Response A:\n") - 12);
    const auto b = u.substr(u.find("Response B:\n") + 12);
    double s = a == b ? 1.0 : (a.find("split") != std::string::npos && b.find("split") != std::string::npos ? 0.5 : 0.0);
    return json{{"similarity", s}, {"justification", "intent"}}.dump();
  });
  gateway::ModelClient judge("j", faithful, nullptr);
  const JudgeOptions opt;
  CHECK(judge_similarity(judge, p, "How do I add?", "How do I add?", opt, 1).verdict->score == 1.0);
  CHECK(judge_similarity(judge, p, "How do I add?", "What is a prime?", opt, 1).verdict->score == 0.0);

  const std::vector<std::string> qa = {"split the sum?", "How do I add?", "Is it 6?"};
  const std::vector<std::string> qb = {"How do I add?", "split it?"};
  std::vector<std::vector<double>> m(qa.size(), std::vector<double>(qb.size()));
  for (std::size_t a = 0; a < qa.size(); ++a) {
    for (std::size_t b = 0; b < qb.size(); ++b) {
      const auto r = judge_similarity(judge, p, qa[a], qb[b], opt, static_cast<int>(a) + 1);
      REQUIRE(r.verdict);
      m[a][b] = r.verdict->score;
    }
  }
  CHECK(m.size() == 3);
  for (const auto& row : m) {
    CHECK(row.size() == 2);
    for (double v : row) CHECK(std::find(std::begin(kSimilarityAnchors), std::end(kSimilarityAnchors), v) != std::end(kSimilarityAnchors));
  }
  CHECK(m[0][1] == 0.5);
  CHECK(m[1][0] == 1.0);
}

TEST_CASE("turn efficiency") {
  const std::vector<double> reference = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  const std::vector<double> candidate = {0.3, 0.5, 0.6, 0.65, 0.7, 0.7};
  const auto e = turn_efficiency(reference, candidate);
  CHECK(e.saved == 3);
  CHECK(e.reached);
  CHECK(e.candidate_turn == 3);
  CHECK(e.reference_turn == 6);
  CHECK(turn_efficiency(reference, reference).saved == 0);
  const auto flat = turn_efficiency(reference, {0.1, 0.1, 0.1, 0.1, 0.1, 0.1});
  CHECK(flat.saved == 0);
  CHECK_FALSE(flat.reached);
  CHECK_THROWS_AS(turn_efficiency(reference, {0.1}), ContractError);
  // Self-comparison is zero for any curve, including plateaus.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> x(static_cast<std::size_t>(1 + rng() % 8));
    for (auto& v : x) v = static_cast<double>(rng() % 5) / 4.0;
    CHECK(turn_efficiency(x, x).saved == 0);
  }
}

TEST_CASE("leak audit") {
  ProblemSet problems = {testing::math_problem("m1", 42), testing::math_problem("m2", 1200),
                         testing::coding_problem("c1")};
  auto history = [](const std::string& id, const std::vector<std::string>& teacher_turns) {
    ConversationHistory h;
    h.problem_id = id;
    h.append(Role::teacher, Tag::greeting, "Hi there!");
    for (const auto& t : teacher_turns) {
      h.append(Role::student, Tag::question, "Is it 42? Maybe 1200? ```x```");
      h.append(Role::teacher, Tag::answer, t);
    }
    return h;
  };
  CHECK(leak_audit({history("m1", {"the answer is 42"})}, problems).size() == 1);
  CHECK(leak_audit({history("m1", {"try 420 first"})}, problems).empty());
  CHECK(leak_audit({history("m1", {"about 4.2 or 42.5"})}, problems).empty());
  CHECK(leak_audit({history("m1", {"it is 42."})}, problems).size() == 1);
  CHECK(leak_audit({history("m2", {"so 1,200 in total"})}, problems).size() == 1);
  CHECK(leak_audit({history("m2", {"so 11,200 in total"})}, problems).empty());

  // Seeded corpus: three leaking teacher turns among clean ones.
  std::vector<ConversationHistory> corpus = {
      history("m1", {"think about pairs", "it must be 42", "recheck"}),
      history("m2", {"sum the parts", "that gives 1200 apples"}),
      history("c1", {"use a loop", "like this:\n```python\nreturn a + b\n```"}),
      history("m1", {"multiply 6 by 7 to see"}),
  };
  const auto flags = leak_audit(corpus, problems);
  REQUIRE(flags.size() == 3);
  CHECK(flags[0] == LeakFlag{"m1", 4, Tag::answer, "gold_integer"});
  CHECK(flags[2].kind == "code_fence");
}

TEST_CASE("curve aggregation and CSV recount") {
  std::mt19937_64 rng(11);
  const int n = 6;
  std::vector<CurveSummary> summaries;
  std::vector<std::vector<std::vector<bool>>> tables;
  for (const std::string label : {"unguided", "cot"}) {
    std::vector<std::vector<eval::EvalRecord>> curves;
    std::vector<std::vector<bool>> table;
    for (int p = 0; p < 10; ++p) {
      std::vector<eval::EvalRecord> curve;
      std::vector<bool> row;
      for (int t = 1; t <= n; ++t) {
        eval::EvalRecord r;
        r.problem_id = "p" + std::to_string(p);
        r.t = t;
        r.k = 5;
        r.pass = rng() % 3 == 0;
        row.push_back(r.pass);
        curve.push_back(r);
      }
      curves.push_back(curve);
      table.push_back(row);
    }
    summaries.push_back(summarize_curves(label, curves, n));
    tables.push_back(table);
    std::shuffle(curves.begin(), curves.end(), rng);
    CHECK(summarize_curves(label, curves, n).mean_pass == summaries.back().mean_pass);
  }
  const std::string csv = pass_curves_csv(summaries);
  const auto lines = split_lines(csv);
  REQUIRE(lines.size() == 1 + 2 * n);
  CHECK(lines[0] == "method,turn,mean_pass,n_problems");
  for (std::size_t m = 0; m < 2; ++m) {
    for (int t = 1; t <= n; ++t) {
      int passed = 0;
      for (const auto& row : tables[m]) passed += row[static_cast<std::size_t>(t - 1)] ? 1 : 0;
      char expected[64];
      std::snprintf(expected, sizeof expected, "%s,%d,%.6f,10", m == 0 ? "unguided" : "cot", t, passed / 10.0);
      CHECK(lines[1 + m * n + static_cast<std::size_t>(t - 1)] == expected);
    }
  }
  CHECK(pass_curves_csv(summaries) == csv);

  std::vector<Series> series;
  for (const auto& s : summaries) series.push_back({s.label, {s.mean_pass.begin(), s.mean_pass.end()}});
  const std::string svg = svg_line_chart("Pass@5 by turn", "mean pass", series, csv);
  CHECK(svg.starts_with("<svg"));
  CHECK(std::count(svg.begin(), svg.end(), '\n') > 10);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg == svg_line_chart("Pass@5 by turn", "mean pass", series, csv));
  CHECK(turn_efficiency_csv(summaries[0], {summaries[0]}).find(",0,") != std::string::npos);
}

TEST_CASE("heatmap and positions rendering") {
  SimilarityMatrix m;
  m.mean = {{1.0, std::nullopt}, {0.25, 0.5}};
  m.n_judged = {{2, 0}, {2, 1}};
  m.n_missing = {{0, 2}, {0, 1}};
  CHECK(heatmap_csv(m) ==
        "turn_a,turn_b,mean_similarity,n_judged,n_missing\n1,1,1.000000,2,0\n1,2,,0,2\n2,1,0.250000,2,0\n2,2,0.500000,1,1\n");
  const std::string svg = svg_heatmap("similarity", "unguided turn", "guided turn", m.mean, heatmap_csv(m));
  CHECK(std::count(svg.begin(), svg.end(), '\n') > 8);
  CHECK(svg.find(">-</text>") != std::string::npos);
  CHECK(positions_csv({{1.0, 1.0}, {0.0, 1.0}}) == "t_assess,turn,mean_pass\n1,1,1.000000\n1,2,1.000000\n2,1,0.000000\n2,2,1.000000\n");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

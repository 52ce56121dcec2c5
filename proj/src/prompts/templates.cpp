// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/prompts/templates.hpp"

#include "inquire/core/errors.hpp"

namespace inquire::prompts {

namespace {

constexpr std::string_view kMathQuestionUnguided =
    "You are an AI assistant tasked with solving math problems. To help you improve your skills, "
    "your math tutor has posed the following problem:\n\n---*PROBLEM*---\n\n"
    "To help you in solving this problem, you may ask the tutor any question relevant to the task "
    "(clarification questions, requirement questions, methodology questions etc.). Think about how "
    "you would solve the problem, and what you still need to know in order to complete the "
    "question. Do not solve the problem directly, do not ask the tutor for any solutions -- the "
    "tutor has been instructed not to provide you with any direct answers. Keep your questions "
    "concise and to the point.";

constexpr std::string_view kMathQuestionCot =
    "You are an AI assistant tasked with solving math problems. To help you improve your skills, "
    "your math tutor has posed the following problem:\n\n---*PROBLEM*---\n\n"
    "To help you in solving this problem, you may ask the tutor any question relevant to the task "
    "(clarification questions, requirement questions, methodology questions etc.). Think about how "
    "you would solve the problem, and what you still need to know in order to complete the "
    "question. Do not solve the problem directly, do not ask the tutor for any solutions -- the "
    "tutor has been instructed not to provide you with any direct answers. Keep your questions "
    "concise and to the point. Before you pose a question to the tutor, break down what you know "
    "and what you still need to know. Think step-by-step, think of what is the best question to as "
    "the tutor to help you solve the problem.";

constexpr std::string_view kMathAnswer =
    "You are a AI assistant that specializes in solving math problems. Read the question carefully "
    "and provide an answer to the best of your ability. The answer is guaranteed to be a single "
    "integer. Provide your answer using the format 'Answer <answer integer>'. Below is a simple "
    "example: \n\nQuestion: what is 3 + 3? \n\n[your response]\nAnswer: 6";

constexpr std::string_view kMathTeacher =
    "You are an expert AI math tutor, specializing in helping student solve math problems. The "
    "user is currently tasked with completing this question:\n\n---*PROBLEM*---\n\n"
    "You task is to answer any questions the student may have, but DO NOT PROVIDE THE CORRECT "
    "ANSWER DIRECTLY. If the student asks you whether an answer is correct, do not respond. Keep "
    "your responses short and concise.";

constexpr std::string_view kCodingQuestionUnguided =
    "You are an AI assistant tasked with solving Python coding problems. To help you improve your "
    "skills, your coding tutor has posed the following problem:\n\n--- *PROBLEM* ---\n\n"
    "To help you in solving this problem, you may ask the tutor any question relevant to the task "
    "(clarification quesitons, implementation questions, requirement questions, etc.). Think about "
    "how you would implement the function, and whether you have any knowledge blind spots. Do not "
    "solve the problem directly, do not ask the tutor for any solutions -- the tutor has been "
    "instructed not to provide you with any direct answers. Keep your questions concise and to the "
    "point.";

constexpr std::string_view kCodingQuestionCot =
    "You are an AI assistant tasked with solving Python coding problems. To help you improve your "
    "skills, your coding tutor has posed the following problem:\n\n--- *PROBLEM* ---\n\n"
    "To help you in solving this problem, you may ask the tutor any question relevant to the task "
    "(clarification questions, implementation questions, requirement questions, etc.). Think about "
    "how you would implement the function, and whether you have any knowledge blind spots. Do not "
    "solve the problem directly, do not ask the tutor for any solutions -- the tutor has been "
    "instructed not to provide you with any direct answers. Before you pose a question to the "
    "tutor, break down what you know and what you still need to know. Think step-by-step, think of "
    "what is the best question to as the tutor to help you solve the problem.";

constexpr std::string_view kCodingAnswer =
    "You are a Python coding assistant. You will be given Python coding problems that involve "
    "writing functions to solve problems, and you will attempt to solve them to the best of your "
    "ability. Should a function signature and docstring be given to you, follow the requirements in "
    "the docstring carefully and complete the Python function. ONLY output ONE function by "
    "continuing the docstring, and do not rewrite the docstring! If you are given a textual "
    "description, return a Python function that implements the necessary requirements. You may "
    "import any additional libraries. Format the output code snippet as a single markdown block. "
    "The example below illustrates the expected output formatting:\n\n"
    "```python\n\ndef is_even(int: number) -> bool: \n    return number \n```\n\n"
    "MAKE SURE YOU FOLLOW THE REQUIRED MARKDOWN STYLE CODE FORMATTING!";

constexpr std::string_view kCodingTeacher =
    "You are an expert AI assistant specializing in Python programming. The user is currently "
    "tasked with completing this function:\n\n--- *PROBLEM* ---\n\n"
    "You task is to answer any questions the user may have, but DO NOT PROVIDE THE CORRECT "
    "IMPLEMENTATION DIRECTLY. Even the student want you to revise an implementation, PROVIDE ONLY "
    "TEXTUAL INSTRUCTIONS, NOT CODE. Keep you responses short and concise.";

// `student_solution` and `eval_summary` are filled by the assessment step.
constexpr std::string_view kMathAssessment =
    "---*PROBLEM*---\nStudent attempt (for analysis only):\n{student_solution}\n"
    "Evaluation summary (compact): {eval_summary}\n"
    "Provide concise, actionable feedback without giving the final numeric answer.";

constexpr std::string_view kCodingAssessment =
    "You are an expert Python tutor. You will be given:\n- the problem statement,\n"
    "- one student attempt (code),\n- and a compact summary of test outcomes.\n\n"
    "Your job: provide concise, actionable feedback. DO NOT provide code or patches.";

constexpr std::string_view kMathJudgeProgress =
    "You are a strict and consistent math grader.\n"
    "Your task is to evaluate how much progress a student's reasoning shows toward solving a math "
    "problem.\n\n"
    "You must estimate a single real-valued score between 0 and 1:\n"
    "- 0.0 → completely wrong or irrelevant reasoning.\n"
    "- 0.25 → only the setup or an initial idea is correct.\n"
    "- 0.50 → roughly halfway; some correct derivations but key steps missing or incorrect.\n"
    "- 0.75 → nearly correct; only small arithmetic or algebraic mistakes.\n"
    "- 1.0 → fully correct and complete solution.\n\n"
    "Guidelines:\n"
    "- Use intermediate values (e.g., 0.62) if progress lies between anchor points.\n"
    "- Be strict but fair: reward correct logical steps that meaningfully advance toward the right "
    "answer.\n"
    "- Ignore minor stylistic differences (notation, units, variable names) if mathematically "
    "equivalent.\n"
    "- Do not reward irrelevant or circular reasoning.\n"
    "- If the final answer matches the gold answer but reasoning is absent or wrong, do NOT give "
    "1.0; cap the score to reflect weak progress.\n"
    "- The gold answer is provided only as a reference for what constitutes a correct solution; do "
    "NOT copy it or include it in your output.\n"
    "- Ensure \"progress\" is a numeric value (not a string) in [0, 1].\n"
    "- Return only valid JSON—nothing else—and include a short justification (≤ 30 "
    "words).\n"
    "- Do not repeat the problem text or add extra commentary.";

constexpr std::string_view kCodingJudgeProgress =
    "You are a strict and consistent code evaluator.\n"
    "Your task is to estimate how far a student's code has progressed toward a correct and "
    "complete solution to a programming problem.\n\n"
    "You must output a single real-valued score between 0 and 1:\n\n"
    "- 0.0 → The code is completely wrong, unrelated, or does not compile.\n"
    "- 0.25 → The code sets up part of the structure or variables correctly but lacks core "
    "logic.\n"
    "- 0.50 → The main idea is partially correct; some logic is right, but important parts "
    "are missing or incorrect.\n"
    "- 0.75 → The code is mostly correct; only minor mistakes, syntax errors, or missing edge "
    "cases.\n"
    "- 1.0 → The code is fully correct and would pass all test cases.\n\n"
    "Guidelines:\n"
    "- Use intermediate values (e.g., 0.62) if the progress lies between anchor points.\n"
    "- Focus on *functional correctness*, not style or formatting.\n"
    "- Reward correct reasoning, algorithm structure, and edge-case handling.\n"
    "- Ignore small syntax errors if the intended logic is clear.\n"
    "- Be strict about incorrect logic or wrong outputs.\n"
    "- The gold solution is provided only as a reference for what constitutes a complete and "
    "correct solution.\n"
    "- Do NOT copy or grade the gold solution itself.\n"
    "- Ensure \"progress\" is a numeric value (not a string).\n"
    "- Return only valid JSON — nothing else.\n"
    "- Return a short justification (≤ 30 words) for the score.\n"
    "- Do not repeat the prompt or include extra commentary.";

constexpr std::string_view kMathJudgeSimilarity =
    "You are a careful and consistent evaluator. Given a math problem and two student responses "
    "(each may include reasoning plus a question), your task is to identify the core mathematical "
    "question being asked in each response and rate how similar those questions are.\n\n"
    "Score ONLY by the intent of the question/sub-goal (not wording or style):\n"
    "- What quantity or relation is sought?\n"
    "- Which sub-step of the solution is being advanced?\n"
    "- What information is requested to proceed?\n\n"
    "Use ONE of these allowed similarity scores with the exact meaning:\n"
    "- 0.00 → Unrelated or incompatible question intents.\n"
    "- 0.25 → Only loosely related (both about the problem but target different aspects).\n"
    "- 0.50 → Related but not the same (same high-level topic, different sub-step or target).\n"
    "- 0.75 → Nearly the same intent (minor scope or variable differences; answer path is the "
    "same).\n"
    "- 1.00 → Same question intent (mathematically equivalent; differ only in "
    "phrasing/notation).\n\n"
    "Rules:\n"
    "- Focus on mathematical intent, not surface form.\n"
    "- If torn between two anchors, choose the LOWER one (be conservative).\n"
    "- Return strict JSON only.\n\n"
    "Output schema:\n"
    "{\n"
    "  \"similarity\": 0.0 | 0.25 | 0.5 | 0.75 | 1.0,\n"
    "  \"justification\": \"≤ 20 words explaining the anchor choice\"\n"
    "}";

constexpr std::string_view kCodingJudgeSimilarity =
    "You are a precise and consistent evaluator. Given a programming problem and two model "
    "responses (each may include reasoning plus a question), determine how similar the core "
    "programming question or debugging goal is in both responses.\n\n"
    "Score ONLY by intent (not code formatting or verbosity):\n"
    "- What behavior/logic do they seek to understand/implement/fix?\n"
    "- Which step of the solution or debugging process is targeted?\n\n"
    "Use ONE of these allowed similarity scores with the exact meaning:\n"
    "- 0.00 → Unrelated or incompatible intents.\n"
    "- 0.25 → Loosely related (both about the task, different concerns).\n"
    "- 0.50 → Related but not the same (same area, different sub-goal or artifact).\n"
    "- 0.75 → Nearly the same (minor scope or API differences; same actionable goal).\n"
    "- 1.00 → Same question intent (equivalent request/goal; only phrasing differs).\n\n"
    "Rules:\n"
    "- Judge the intended question/goal, not the surrounding explanation.\n"
    "- If uncertain between two anchors, choose the LOWER one (be conservative).\n"
    "- Return strict JSON only.\n\n"
    "Output schema:\n"
    "{\n"
    "  \"similarity\": 0.0 | 0.25 | 0.5 | 0.75 | 1.0,\n"
    "  \"justification\": \"≤ 20 words explaining the anchor choice\"\n"
    "}";

constexpr std::string_view kMathGreeting = "Hi there! I'm your math tutor. How can I help you today?";
constexpr std::string_view kCodingGreeting = "Hi there! I'm your coding tutor. How can I help you today?";

}  // namespace

std::string_view student_question_template(Domain d, Mode m) {
  if (d == Domain::math) return m == Mode::unguided ? kMathQuestionUnguided : kMathQuestionCot;
  return m == Mode::unguided ? kCodingQuestionUnguided : kCodingQuestionCot;
}

std::string_view student_answer_template(Domain d) { return d == Domain::math ? kMathAnswer : kCodingAnswer; }
std::string_view teacher_template(Domain d) { return d == Domain::math ? kMathTeacher : kCodingTeacher; }
std::string_view assessment_template(Domain d) {
  return d == Domain::math ? kMathAssessment : kCodingAssessment;
}
std::string_view judge_progress_template(Domain d) {
  return d == Domain::math ? kMathJudgeProgress : kCodingJudgeProgress;
}
std::string_view judge_similarity_template(Domain d) {
  return d == Domain::math ? kMathJudgeSimilarity : kCodingJudgeSimilarity;
}
std::string_view greeting(Domain d) { return d == Domain::math ? kMathGreeting : kCodingGreeting; }

std::string substitute_problem(std::string_view tmpl, Domain d, std::string_view statement) {
  const std::string_view marker = d == Domain::math ? kMathPlaceholder : kCodingPlaceholder;
  const auto pos = tmpl.find(marker);
  if (pos == std::string_view::npos) throw ConfigError("template has no problem placeholder");
  std::string out;
  out.reserve(tmpl.size() + statement.size());
  out.append(tmpl.substr(0, pos));
  out.append(statement);
  out.append(tmpl.substr(pos + marker.size()));
  return out;
}

std::vector<gateway::ChatMessage> render_history(const ConversationHistory& h, Role perspective) {
  std::vector<gateway::ChatMessage> out;
  out.reserve(h.messages.size());
  for (const auto& m : h.messages) {
    out.push_back({m.role == perspective ? gateway::Speaker::assistant : gateway::Speaker::user, m.content});
  }
  return out;
}

gateway::ChatRequest answer_request(const Problem& p, const ConversationHistory& h,
                                    const SamplingParams& sampling) {
  gateway::ChatRequest r;
  r.system_prompt = std::string(student_answer_template(p.domain));
  r.messages = render_history(h, Role::student);
  r.messages.push_back({gateway::Speaker::user,
                        p.domain == Domain::math ? "Question: " + p.statement : p.statement});
  r.sampling = sampling;
  r.sampling.n = 1;
  return r;
}

}  // namespace inquire::prompts

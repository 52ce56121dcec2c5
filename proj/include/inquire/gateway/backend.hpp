// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "inquire/core/config.hpp"
#include "inquire/gateway/chat.hpp"

namespace inquire::gateway {

class Backend {
 public:
  virtual ~Backend() = default;
  /// One completion. Implementations must be safe for concurrent calls.
  virtual std::string complete(const ChatRequest& request, const CallContext& ctx) = 0;
};

/// Deterministic backend driven by an ordered rule list.
///
/// Script document:
///
///     {"rules": [
///        {"role": "teacher", "purpose": "answer", "turn": 2,
///         "history_contains": "HINT", "response": "..."},
///        {"role": "student", "purpose": "eval", "responses": ["Answer: 3", ...]}
///     ]}
///
/// Every field except `response`/`responses` is an optional filter. The first
/// rule whose filters all hold answers; `responses` is indexed by
/// sample_index. No matching rule is a ScriptExhaustedError.
///
/// Filters: role, purpose, problem_id, turn, sample_index (exact);
/// history_contains / history_lacks (substring of any / no request message),
/// system_contains, last_contains (final message). String filters accept
/// either a string or an array that must all hold.
class ScriptedBackend : public Backend {
 public:
  explicit ScriptedBackend(const nlohmann::json& script);
  std::string complete(const ChatRequest& request, const CallContext& ctx) override;

 private:
  struct Rule;
  std::vector<std::shared_ptr<const Rule>> rules_;
};

/// Backend delegating to a callable; used for embedding and tests.
class FunctionBackend : public Backend {
 public:
  using Fn = std::function<std::string(const ChatRequest&, const CallContext&)>;
  explicit FunctionBackend(Fn fn) : fn_(std::move(fn)) {}
  std::string complete(const ChatRequest& request, const CallContext& ctx) override {
    return fn_(request, ctx);
  }

 private:
  Fn fn_;
};

/// OpenAI-compatible `POST {base_url}/chat/completions` with bearer auth taken
/// from the configured environment variable. Retries transport errors, 429 and
/// 5xx per the endpoint's RetryPolicy.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(EndpointConfig cfg);
  std::string complete(const ChatRequest& request, const CallContext& ctx) override;

  /// HTTP requests issued so far, retries included.
  long attempts() const noexcept { return attempts_.load(); }

  static nlohmann::json request_body(const std::string& model, const ChatRequest& request,
                                     const CallContext& ctx);

 private:
  EndpointConfig cfg_;
  std::string host_;
  std::string path_prefix_;
  std::atomic<long> attempts_{0};
};

std::shared_ptr<Backend> make_backend(const EndpointConfig& cfg);

}  // namespace inquire::gateway

// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <memory>
#include <semaphore>
#include <string>
#include <vector>

#include "inquire/core/config.hpp"
#include "inquire/gateway/backend.hpp"
#include "inquire/gateway/cache.hpp"

namespace inquire::gateway {

/// Process-wide call counters, summed over every ModelClient.
struct GlobalCounters {
  static long backend_calls();
  static long cache_hits();
  static void reset();
};

/// Completion access for one model role: cache in front of a backend, with a
/// bound on concurrent backend requests.
class ModelClient {
 public:
  ModelClient(std::string model_name, std::shared_ptr<Backend> backend,
              std::shared_ptr<ResponseCache> cache, int max_in_flight = 8);

  /// Builds the backend from `cfg`.
  ModelClient(const EndpointConfig& cfg, std::shared_ptr<ResponseCache> cache);

  /// One completion, cached under (model, request, ctx.sample_index).
  std::string complete(const ChatRequest& request, const CallContext& ctx);

  /// `n` completions with sample indices 0..n-1, in index order. Failures are
  /// rethrown as EndpointError carrying the failing sample index; scripted
  /// exhaustion propagates unchanged.
  std::vector<std::string> sample_n(const ChatRequest& request, int n, CallContext ctx);

  const std::string& model_name() const { return model_name_; }
  long backend_calls() const noexcept { return backend_calls_.load(); }
  long cache_hits() const noexcept { return cache_hits_.load(); }

 private:
  std::string model_name_;
  std::shared_ptr<Backend> backend_;
  std::shared_ptr<ResponseCache> cache_;
  std::unique_ptr<std::counting_semaphore<4096>> in_flight_;
  std::atomic<long> backend_calls_{0};
  std::atomic<long> cache_hits_{0};
};

}  // namespace inquire::gateway

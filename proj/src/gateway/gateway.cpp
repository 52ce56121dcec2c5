// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/gateway/gateway.hpp"

#include <algorithm>

#include "inquire/core/errors.hpp"

namespace inquire::gateway {

namespace {
std::atomic<long> g_backend_calls{0};
std::atomic<long> g_cache_hits{0};
}  // namespace

long GlobalCounters::backend_calls() { return g_backend_calls.load(); }
long GlobalCounters::cache_hits() { return g_cache_hits.load(); }
void GlobalCounters::reset() {
  g_backend_calls = 0;
  g_cache_hits = 0;
}

ModelClient::ModelClient(std::string model_name, std::shared_ptr<Backend> backend,
                         std::shared_ptr<ResponseCache> cache, int max_in_flight)
    : model_name_(std::move(model_name)),
      backend_(std::move(backend)),
      cache_(cache ? std::move(cache) : std::make_shared<ResponseCache>()),
      in_flight_(std::make_unique<std::counting_semaphore<4096>>(std::clamp(max_in_flight, 1, 4096))) {}

ModelClient::ModelClient(const EndpointConfig& cfg, std::shared_ptr<ResponseCache> cache)
    : ModelClient(cfg.model_name, make_backend(cfg), std::move(cache), cfg.max_in_flight) {}

std::string ModelClient::complete(const ChatRequest& request, const CallContext& ctx) {
  if (request.messages.empty()) throw ContractError("ChatRequest.messages must be non-empty");
  const CacheKey key = CacheKey::of(model_name_, request, ctx.sample_index);
  bool computed = false;
  std::string text = cache_->get_or_compute(
      key,
      [&] {
        in_flight_->acquire();
        struct Release {
          std::counting_semaphore<4096>* s;
          ~Release() { s->release(); }
        } release{in_flight_.get()};
        ++backend_calls_;
        ++g_backend_calls;
        return backend_->complete(request, ctx);
      },
      &computed);
  if (!computed) {
    ++cache_hits_;
    ++g_cache_hits;
  }
  return text;
}

std::vector<std::string> ModelClient::sample_n(const ChatRequest& request, int n, CallContext ctx) {
  if (n < 1) throw ContractError("sample_n requires n >= 1");
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ctx.sample_index = i;
    try {
      out.push_back(complete(request, ctx));
    } catch (const EndpointError& e) {
      throw EndpointError(std::string(e.what()) + " (sample " + std::to_string(i) + ")", i);
    }
  }
  return out;
}

}  // namespace inquire::gateway

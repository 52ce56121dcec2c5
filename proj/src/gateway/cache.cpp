// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/gateway/cache.hpp"

#include <nlohmann/json.hpp>

#include "inquire/core/config.hpp"
#include "inquire/core/errors.hpp"
#include "inquire/core/io.hpp"

namespace inquire::gateway {

namespace fs = std::filesystem;

CacheKey CacheKey::of(const std::string& model_name, const ChatRequest& request, int sample_index) {
  nlohmann::ordered_json j;
  j["model"] = model_name;
  j["system"] = request.system_prompt;
  j["messages"] = nlohmann::ordered_json::array();
  for (const auto& m : request.messages) {
    j["messages"].push_back({to_string(m.speaker), m.content});
  }
  j["temperature"] = request.sampling.temperature;
  j["max_tokens"] = request.sampling.max_tokens;
  j["sample_index"] = sample_index;
  return CacheKey{sha256_hex(j.dump())};
}

ResponseCache::ResponseCache(std::optional<fs::path> dir) : dir_(std::move(dir)) {
  if (dir_) fs::create_directories(*dir_);
}

std::optional<std::string> ResponseCache::get(const CacheKey& key) {
  {
    std::lock_guard lock(mu_);
    if (auto it = memory_.find(key.digest); it != memory_.end()) return it->second;
  }
  if (!dir_) return std::nullopt;
  const fs::path file = *dir_ / key.digest;
  std::error_code ec;
  if (!fs::exists(file, ec)) return std::nullopt;
  std::string text = read_file(file);
  std::lock_guard lock(mu_);
  memory_.emplace(key.digest, text);
  return text;
}

void ResponseCache::put(const CacheKey& key, const std::string& text) {
  if (dir_) write_file_atomic(*dir_ / key.digest, text);
  std::lock_guard lock(mu_);
  memory_[key.digest] = text;
}

std::string ResponseCache::get_or_compute(const CacheKey& key,
                                          const std::function<std::string()>& compute,
                                          bool* computed) {
  if (computed) *computed = false;
  if (auto hit = get(key)) return *hit;

  std::promise<std::string> promise;
  std::shared_future<std::string> pending;
  bool owner = false;
  {
    std::lock_guard lock(mu_);
    if (auto it = memory_.find(key.digest); it != memory_.end()) return it->second;
    if (auto it = in_flight_.find(key.digest); it != in_flight_.end()) {
      pending = it->second;
    } else {
      pending = promise.get_future().share();
      in_flight_.emplace(key.digest, pending);
      owner = true;
    }
  }
  if (!owner) return pending.get();

  try {
    std::string text = compute();
    put(key, text);
    promise.set_value(text);
    if (computed) *computed = true;
  } catch (...) {
    promise.set_exception(std::current_exception());
  }
  {
    std::lock_guard lock(mu_);
    in_flight_.erase(key.digest);
  }
  return pending.get();
}

}  // namespace inquire::gateway

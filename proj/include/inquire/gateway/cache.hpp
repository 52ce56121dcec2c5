// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <functional>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "inquire/gateway/chat.hpp"

namespace inquire::gateway {

struct CacheKey {
  std::string digest;  // lowercase hex SHA-256

  static CacheKey of(const std::string& model_name, const ChatRequest& request, int sample_index);
  friend bool operator==(const CacheKey&, const CacheKey&) = default;
};

/// Content-addressed completion cache: one file per key under `dir`, holding
/// the completion text. Without a directory, entries live in memory only.
///
/// Lookups and inserts are atomic per key. Concurrent misses on the same key
/// are coalesced so the backend is called once.
class ResponseCache {
 public:
  explicit ResponseCache(std::optional<std::filesystem::path> dir = std::nullopt);

  std::optional<std::string> get(const CacheKey& key);
  void put(const CacheKey& key, const std::string& text);

  /// Returns the cached text, or runs `compute`, stores and returns its
  /// result. `*computed` is set to whether `compute` ran in this call.
  std::string get_or_compute(const CacheKey& key, const std::function<std::string()>& compute,
                             bool* computed = nullptr);

  const std::optional<std::filesystem::path>& dir() const { return dir_; }

 private:
  std::optional<std::filesystem::path> dir_;
  std::mutex mu_;
  std::unordered_map<std::string, std::string> memory_;
  std::map<std::string, std::shared_future<std::string>> in_flight_;
};

}  // namespace inquire::gateway

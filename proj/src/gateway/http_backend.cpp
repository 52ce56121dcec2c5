// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include <httplib.h>

#include <cstdlib>
#include <thread>

#include "inquire/core/errors.hpp"
#include "inquire/gateway/backend.hpp"

namespace inquire::gateway {

using nlohmann::json;

namespace {

bool retryable_status(int status) { return status == 429 || status >= 500; }

}  // namespace

HttpBackend::HttpBackend(EndpointConfig cfg) : cfg_(std::move(cfg)) {
  const std::string& url = cfg_.base_url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("base_url needs a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  host_ = url.substr(0, path_start);
  path_prefix_ = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

json HttpBackend::request_body(const std::string& model, const ChatRequest& request,
                               const CallContext& ctx) {
  json messages = json::array();
  if (!request.system_prompt.empty()) {
    messages.push_back({{"role", "system"}, {"content", request.system_prompt}});
  }
  for (const auto& m : request.messages) {
    messages.push_back({{"role", std::string(to_string(m.speaker))}, {"content", m.content}});
  }
  json body = {{"model", model},
               {"messages", messages},
               {"temperature", request.sampling.temperature},
               {"max_tokens", request.sampling.max_tokens}};
  if (request.sampling.seed) body["seed"] = *request.sampling.seed + ctx.sample_index;
  return body;
}

std::string HttpBackend::complete(const ChatRequest& request, const CallContext& ctx) {
  const std::string body = request_body(cfg_.model_name, request, ctx).dump();
  httplib::Headers headers;
  if (!cfg_.api_key_env.empty()) {
    if (const char* key = std::getenv(cfg_.api_key_env.c_str()); key != nullptr && *key != '\0') {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
  }
  const auto timeout = std::chrono::duration<double>(cfg_.request_timeout_s);
  std::string last_error;
  for (int attempt = 1; attempt <= cfg_.retry.max_attempts; ++attempt) {
    if (attempt > 1) std::this_thread::sleep_for(cfg_.retry.delay_after(attempt - 1));
    ++attempts_;
    httplib::Client client(host_);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    client.set_write_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    auto res = client.Post(path_prefix_ + "/chat/completions", headers, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 500);
      if (retryable_status(res->status)) continue;
      throw EndpointError(cfg_.model_name + ": " + last_error, ctx.sample_index);
    }
    try {
      const json j = json::parse(res->body);
      const auto& content = j.at("choices").at(0).at("message").at("content");
      return content.is_null() ? std::string{} : content.get<std::string>();
    } catch (const json::exception& e) {
      throw EndpointError(cfg_.model_name + ": malformed completion response: " + e.what(),
                          ctx.sample_index);
    }
  }
  throw EndpointError(cfg_.model_name + ": giving up after " +
                          std::to_string(cfg_.retry.max_attempts) + " attempts; " + last_error,
                      ctx.sample_index);
}

}  // namespace inquire::gateway

// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace inquire {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or inconsistent configuration. Maps to CLI exit status 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed record text. `line()` is 1-based; 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Transport failure after the retry policy is exhausted, or a non-retryable
/// HTTP status.
class EndpointError : public Error {
 public:
  EndpointError(const std::string& what, int sample_index = -1)
      : Error(what), sample_index_(sample_index) {}
  int sample_index() const noexcept { return sample_index_; }

 private:
  int sample_index_;
};

/// A scripted endpoint has no rule for the requested key. Never retried.
class ScriptExhaustedError : public Error {
 public:
  using Error::Error;
};

/// Contract violation detected at runtime (empty input where non-empty is
/// required, mismatched lengths, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace inquire

// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "inquire/core/config.hpp"

namespace inquire::cli {

namespace fs = std::filesystem;

enum class Stage { filter, interact, sweep, collect, judge, report };

std::string_view to_string(Stage s);

struct UnitStatus {
  std::string status;  // complete | failed
  std::string completed_at;
  std::string error;
};

struct StageRecord {
  std::string status = "pending";  // pending | partial | complete | failed
  std::string completed_at;
  std::map<std::string, UnitStatus> units;  // problem id, or "<group>/<problem id>"
};

/// Run lifecycle record kept as <run_dir>/manifest.json. A unit marked
/// complete has all its artifacts on disk.
struct RunManifest {
  std::string run_id;
  std::string config_digest;
  std::string label;
  std::string created_at;
  nlohmann::ordered_json config;
  std::map<std::string, StageRecord> stages;

  StageRecord& stage(Stage s) { return stages[std::string(to_string(s))]; }
  bool unit_complete(Stage s, const std::string& unit) const;

  nlohmann::ordered_json to_json() const;
  static RunManifest from_json(const nlohmann::ordered_json& j);  // ParseError
};

fs::path manifest_path(const fs::path& run_dir);
std::optional<RunManifest> load_manifest(const fs::path& run_dir);

/// Writes only when the serialized bytes differ.
void save_manifest(const fs::path& run_dir, const RunManifest& m);

/// Opens the run dir for `cfg`: creates the manifest on first use and refuses
/// (ConfigError) when an existing manifest carries a different digest.
RunManifest open_run(const RunConfig& cfg);

/// Exclusive advisory lock on <run_dir>/.lock for the lifetime of the object.
/// Throws IoError when another process holds it.
class RunLock {
 public:
  explicit RunLock(const fs::path& run_dir);
  ~RunLock();
  RunLock(const RunLock&) = delete;
  RunLock& operator=(const RunLock&) = delete;

 private:
  int fd_ = -1;
};

/// UTC, second resolution, e.g. 2026-10-14T09:30:00Z.
std::string utc_timestamp();

}  // namespace inquire::cli

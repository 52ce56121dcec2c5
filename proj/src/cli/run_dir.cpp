// Copyright 2026 The Inquire Authors
// SPDX-License-Identifier: Apache-2.0

#include "inquire/cli/run_dir.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>

#include "inquire/core/errors.hpp"
#include "inquire/core/io.hpp"

namespace inquire::cli {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::filter: return "filter";
    case Stage::interact: return "interact";
    case Stage::sweep: return "sweep";
    case Stage::collect: return "collect";
    case Stage::judge: return "judge";
    case Stage::report: return "report";
  }
  return "?";
}

bool RunManifest::unit_complete(Stage s, const std::string& unit) const {
  const auto st = stages.find(std::string(to_string(s)));
  if (st == stages.end()) return false;
  const auto u = st->second.units.find(unit);
  return u != st->second.units.end() && u->second.status == "complete";
}

ordered_json RunManifest::to_json() const {
  ordered_json j;
  j["run_id"] = run_id;
  j["config_digest"] = config_digest;
  j["label"] = label;
  j["created_at"] = created_at;
  j["config"] = config;
  ordered_json st = ordered_json::object();
  for (const auto& [name, rec] : stages) {
    ordered_json r;
    r["status"] = rec.status;
    r["completed_at"] = rec.completed_at;
    ordered_json units = ordered_json::object();
    for (const auto& [id, u] : rec.units) {
      ordered_json uj;
      uj["status"] = u.status;
      uj["completed_at"] = u.completed_at;
      if (!u.error.empty()) uj["error"] = u.error;
      units[id] = uj;
    }
    r["units"] = units;
    st[name] = r;
  }
  j["stages"] = st;
  return j;
}

RunManifest RunManifest::from_json(const ordered_json& j) {
  try {
    RunManifest m;
    m.run_id = j.at("run_id").get<std::string>();
    m.config_digest = j.at("config_digest").get<std::string>();
    m.label = j.value("label", std::string{});
    m.created_at = j.value("created_at", std::string{});
    m.config = j.value("config", ordered_json::object());
    for (const auto& [name, r] : j.at("stages").items()) {
      StageRecord rec;
      rec.status = r.at("status").get<std::string>();
      rec.completed_at = r.value("completed_at", std::string{});
      for (const auto& [id, u] : r.at("units").items()) {
        rec.units[id] = {u.at("status").get<std::string>(), u.value("completed_at", std::string{}),
                         u.value("error", std::string{})};
      }
      m.stages[name] = rec;
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
}

fs::path manifest_path(const fs::path& run_dir) { return run_dir / "manifest.json"; }

std::optional<RunManifest> load_manifest(const fs::path& run_dir) {
  const fs::path p = manifest_path(run_dir);
  if (!fs::exists(p)) return std::nullopt;
  try {
    return RunManifest::from_json(ordered_json::parse(read_file(p)));
  } catch (const json::parse_error& e) {
    throw ParseError(p.string() + ": " + e.what());
  }
}

void save_manifest(const fs::path& run_dir, const RunManifest& m) {
  write_if_changed(manifest_path(run_dir), m.to_json().dump(2) + "\n");
}

RunManifest open_run(const RunConfig& cfg) {
  const std::string digest = config_digest(cfg);
  if (auto existing = load_manifest(cfg.run_dir)) {
    if (existing->config_digest != digest) {
      throw ConfigError("run dir " + cfg.run_dir.string() + " was started with config digest " +
                        existing->config_digest + " but the current config digests to " + digest +
                        "; refusing to mix configs in one run dir (use a new run_dir)");
    }
    return *existing;
  }
  RunManifest m;
  m.run_id = cfg.run_id;
  m.config_digest = digest;
  m.label = cfg.label();
  m.created_at = utc_timestamp();
  m.config = to_json(cfg);
  m.config.erase("run_dir");
  fs::create_directories(cfg.run_dir);
  save_manifest(cfg.run_dir, m);
  return m;
}

RunLock::RunLock(const fs::path& run_dir) {
  fs::create_directories(run_dir);
  const fs::path p = run_dir / ".lock";
  fd_ = ::open(p.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw IoError("cannot open " + p.string() + ": " + std::strerror(errno));
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw IoError("run dir " + run_dir.string() + " is locked by another process");
  }
}

RunLock::~RunLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace inquire::cli

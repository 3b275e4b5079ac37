#pragma once

// Append-only run registry: one JSON object per line.

#include <cstdint>
#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "subsum/io.hpp"

namespace subsum {

struct RunRecord {
  std::string run_id;          // digest of (command, params, input_digest, seed)
  std::string command;
  Json params = Json::object();
  std::string input_digest;
  std::uint64_t seed = 0;
  Json outcome = Json::object();
  std::string outcome_digest;  // digest of the outcome alone
  double wall_time_ms = 0;

  Json to_json() const;
  static RunRecord from_json(const Json& j);
  friend bool operator==(const RunRecord& a, const RunRecord& b);
};

// Fills run_id and outcome_digest from the other fields.
RunRecord make_record(std::string command, Json params, std::string input_digest, std::uint64_t seed, Json outcome,
                      double wall_time_ms);

class Registry {
 public:
  explicit Registry(std::filesystem::path path) : path_(std::move(path)) {}

  // One write(2) of a full line on an O_APPEND descriptor. StorageError on failure.
  void append(const RunRecord& record);
  std::vector<RunRecord> read_all() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
};

}  // namespace subsum

#include "subsum/registry.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>

#include "subsum/error.hpp"

namespace subsum {

Json RunRecord::to_json() const {
  return Json{{"run_id", run_id},   {"command", command}, {"params", params},
              {"input_digest", input_digest}, {"seed", seed}, {"outcome", outcome},
              {"outcome_digest", outcome_digest}, {"wall_time_ms", wall_time_ms}};
}

RunRecord RunRecord::from_json(const Json& j) {
  try {
    RunRecord r;
    r.run_id = j.at("run_id").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.params = j.at("params");
    r.input_digest = j.at("input_digest").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.outcome = j.at("outcome");
    r.outcome_digest = j.at("outcome_digest").get<std::string>();
    r.wall_time_ms = j.at("wall_time_ms").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::StorageError, std::string("malformed registry record: ") + e.what());
  }
}

bool operator==(const RunRecord& a, const RunRecord& b) { return a.to_json() == b.to_json(); }

RunRecord make_record(std::string command, Json params, std::string input_digest, std::uint64_t seed, Json outcome,
                      double wall_time_ms) {
  RunRecord r;
  r.command = std::move(command);
  r.params = std::move(params);
  r.input_digest = std::move(input_digest);
  r.seed = seed;
  r.outcome = std::move(outcome);
  r.wall_time_ms = wall_time_ms;
  Json key{{"command", r.command}, {"params", r.params}, {"input_digest", r.input_digest}, {"seed", r.seed}};
  r.run_id = fnv1a_hex(key.dump());
  r.outcome_digest = fnv1a_hex(r.outcome.dump());
  return r;
}

void Registry::append(const RunRecord& record) {
  std::string line = record.to_json().dump() + "\n";
  std::lock_guard<std::mutex> lock(mutex_);
  int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) fail(ErrorKind::StorageError, path_.string() + ": " + std::strerror(errno));
  const char* p = line.data();
  std::size_t left = line.size();
  while (left > 0) {
    ssize_t w = ::write(fd, p, left);
    if (w < 0 && errno == EINTR) continue;
    if (w <= 0) {
      int err = errno;
      ::close(fd);
      fail(ErrorKind::StorageError, path_.string() + ": " + std::strerror(err));
    }
    p += w;
    left -= static_cast<std::size_t>(w);
  }
  if (::close(fd) != 0) fail(ErrorKind::StorageError, path_.string() + ": " + std::strerror(errno));
}

std::vector<RunRecord> Registry::read_all() const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::vector<RunRecord> out;
  std::ifstream in(path_);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::StorageError, path_.string() + ": unreadable record");
    }
    out.push_back(RunRecord::from_json(j));
  }
  return out;
}

}  // namespace subsum

#ifndef ADSLATE_COMMANDS_HPP_
#define ADSLATE_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "adslate/model.hpp"

namespace adslate {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitMismatch = 2;

enum class Engine { kDp, kPath, kBoth };
Engine ParseEngine(std::string_view text);

struct SolveArgs {
  std::filesystem::path instance;
  ObjectiveMode mode = ObjectiveMode::kRevenueRanked;
  Engine engine = Engine::kPath;
  std::optional<std::string> mask;  // overrides the file's mask bits
  bool allow_empty = false;
  bool json = false;
  bool dump_network = false;
};

struct CheckArgs {
  std::optional<std::filesystem::path> fixture_dir;
  std::uint64_t seed = 1;
  int random_instances = 200;
  bool json = false;
};

struct BenchArgs {
  int count = 5000;
  int positions = 12;
  int max_ads = 77;
  std::uint64_t seed = 1;
  ObjectiveMode mode = ObjectiveMode::kRevenueRanked;
  bool json = false;
};

struct ColGenArgs {
  std::filesystem::path problem;
  std::size_t max_iters = 100;
  double tolerance = 1e-9;
  bool exact = false;  // also solve the fully enumerated master
  bool json = false;
};

// Per-query wall time of rank + build + solve on generated workloads.
struct BenchReport {
  int count = 0;
  int positions = 0;
  int max_ads = 0;
  std::uint64_t seed = 0;
  double mean_bidders = 0.0;
  double value_sum = 0.0;
  std::uint64_t slate_digest = 0;  // FNV-1a over every returned slate
  double mean_us = 0.0;
  double median_us = 0.0;
  double p99_us = 0.0;
  double total_seconds = 0.0;
};

BenchReport RunBench(const BenchArgs& args);

// Each returns a process exit code. Errors are reported on `err`.
int CmdSolve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int CmdCheck(const CheckArgs& args, std::ostream& out, std::ostream& err);
int CmdBench(const BenchArgs& args, std::ostream& out, std::ostream& err);
int CmdColGen(const ColGenArgs& args, std::ostream& out, std::ostream& err);

}  // namespace adslate

#endif  // ADSLATE_COMMANDS_HPP_

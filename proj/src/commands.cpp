#include "adslate/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <vector>

#include "adslate/colgen.hpp"
#include "adslate/dp_solver.hpp"
#include "adslate/generator.hpp"
#include "adslate/instance_io.hpp"
#include "adslate/oracle.hpp"
#include "adslate/path_solver.hpp"
#include "json.hpp"

namespace adslate {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kAgreementTol = 1e-9;

double MicrosSince(Clock::time_point start) {
  return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
}

class Fnv1a {
 public:
  void Add(std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      hash_ ^= (word >> (8 * b)) & 0xffu;
      hash_ *= 0x100000001b3ull;
    }
  }
  void Add(const Slate& slate) {
    Add(slate.size());
    for (int r : slate.ranks) Add(static_cast<std::uint64_t>(r));
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

std::string Hex(std::uint64_t value) {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << value;
  return out.str();
}

std::string Full(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

json SlateJson(const QueryInstance& instance, const SlateSolution& solution) {
  json members = json::array();
  for (std::size_t p = 0; p < solution.slate.size(); ++p) {
    const int rank = solution.slate.ranks[p];
    members.push_back({{"position", p + 1},
                       {"rank", rank + 1},
                       {"id", instance.bidders[rank].id},
                       {"price", solution.prices[p]}});
  }
  return members;
}

void WriteSlateText(std::ostream& out, const QueryInstance& instance,
                    const SlateSolution& solution) {
  if (solution.slate.empty()) out << "  (empty slate)\n";
  for (std::size_t p = 0; p < solution.slate.size(); ++p) {
    const int rank = solution.slate.ranks[p];
    out << "  position " << p + 1 << ": rank " << rank + 1 << " ("
        << instance.bidders[rank].id << ") price " << Full(solution.prices[p])
        << '\n';
  }
}

std::vector<ObjectiveMode> ModesFor(const QueryInstance& instance) {
  std::vector<ObjectiveMode> modes;
  if (instance.AllUnitQuality()) modes.push_back(ObjectiveMode::kBidRanked);
  modes.push_back(ObjectiveMode::kRevenueRanked);
  modes.push_back(ObjectiveMode::kHybrid);
  return modes;
}

std::optional<Mask> NontrivialMask(const QueryInstance& instance) {
  Mask mask = Mask::FromInstance(instance);
  if (mask.Trivial()) return std::nullopt;
  return mask;
}

}  // namespace

Engine ParseEngine(std::string_view text) {
  if (text == "dp") return Engine::kDp;
  if (text == "path") return Engine::kPath;
  if (text == "both") return Engine::kBoth;
  throw ValidationError("unknown engine '" + std::string(text) +
                        "' (expected dp|path|both)");
}

int CmdSolve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  try {
    Document doc = LoadDocument(args.instance);
    auto* loaded = std::get_if<QueryInstance>(&doc);
    if (loaded == nullptr) {
      err << args.instance.string() << ": expected a single query instance\n";
      return kExitInvalid;
    }
    QueryInstance& instance = *loaded;
    if (args.mask) {
      const Mask mask = Mask::FromBitstring(*args.mask);
      CheckMask(instance, mask);
      for (std::size_t r = 0; r < instance.size(); ++r) {
        instance.bidders[r].excludable = mask.excludable[r];
      }
    }
    const std::optional<Mask> mask = NontrivialMask(instance);
    const SolveOptions options{args.allow_empty};

    std::optional<SlateSolution> dp;
    std::optional<SlateSolution> path;
    double dp_us = 0.0;
    double path_us = 0.0;
    if (args.engine != Engine::kPath) {
      const auto start = Clock::now();
      dp = SolveBackward(instance, args.mode, mask, options);
      dp_us = MicrosSince(start);
    }
    if (args.engine != Engine::kDp) {
      const auto start = Clock::now();
      path = SolveSlate(instance, args.mode, mask, options);
      path_us = MicrosSince(start);
    }
    const bool agree =
        !(dp && path) || ApproxEqual(dp->value, path->value, kAgreementTol);
    const SlateSolution& shown = path ? *path : *dp;

    if (args.json) {
      json report = {{"mode", std::string(ToString(args.mode))},
                     {"slate", SlateJson(instance, shown)},
                     {"value", shown.value}};
      if (dp) report["dp"] = {{"value", dp->value}, {"micros", dp_us}};
      if (path) report["path"] = {{"value", path->value}, {"micros", path_us}};
      if (dp && path) report["agree"] = agree;
      if (args.dump_network) {
        std::ostringstream edges;
        WriteEdgeList(edges, BuildNetwork(instance, args.mode, mask));
        report["network"] = edges.str();
      }
      out << report.dump(2) << '\n';
    } else {
      out << "mode: " << ToString(args.mode) << '\n';
      if (mask) out << "mask: " << mask->ToBitstring() << '\n';
      out << "slate:\n";
      WriteSlateText(out, instance, shown);
      out << "value: " << Full(shown.value) << '\n';
      if (dp) out << "dp: " << Full(dp->value) << " (" << dp_us << " us)\n";
      if (path) out << "path: " << Full(path->value) << " (" << path_us << " us)\n";
      if (args.dump_network) {
        out << "network:\n";
        WriteEdgeList(out, BuildNetwork(instance, args.mode, mask));
      }
    }
    if (!agree) {
      err << "dp and path engines disagree: " << Full(dp->value) << " vs "
          << Full(path->value) << '\n';
      return kExitMismatch;
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

namespace {

struct CheckTally {
  std::size_t instances = 0;
  std::size_t comparisons = 0;
  std::size_t mismatches = 0;
  Fnv1a digest;
  json failures = json::array();
};

// Solver values against the oracle for one (instance, mode, mask).
void CompareOne(const QueryInstance& instance, ObjectiveMode mode,
                const std::optional<Mask>& mask, const std::string& label,
                CheckTally& tally, json* record) {
  const OracleResult oracle = EnumerateBest(instance, mode, mask);
  const SlateSolution path = SolveSlate(instance, mode, mask);
  bool ok = ApproxEqual(path.value, oracle.best.value, kAgreementTol);
  std::optional<double> dp_value;
  if (!mask) {
    dp_value = SolveBackward(instance, mode).value;
    ok = ok && ApproxEqual(*dp_value, oracle.best.value, kAgreementTol);
  }
  ++tally.comparisons;
  tally.digest.Add(oracle.best.slate);
  tally.digest.Add(path.slate);
  if (record != nullptr) {
    (*record)["mode"] = std::string(ToString(mode));
    (*record)["oracle"] = oracle.best.value;
    (*record)["path"] = path.value;
    if (dp_value) (*record)["dp"] = *dp_value;
    if (mask) (*record)["mask"] = mask->ToBitstring();
    (*record)["ok"] = ok;
  }
  if (!ok) {
    ++tally.mismatches;
    tally.failures.push_back({{"case", label},
                              {"mode", std::string(ToString(mode))},
                              {"oracle", oracle.best.value},
                              {"path", path.value}});
  }
}

}  // namespace

int CmdCheck(const CheckArgs& args, std::ostream& out, std::ostream& err) {
  CheckTally tally;
  json fixtures = json::array();
  try {
    if (args.fixture_dir) {
      std::vector<std::filesystem::path> files;
      for (const auto& entry : std::filesystem::directory_iterator(*args.fixture_dir)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& file : files) {
        const std::string name = file.filename().string();
        Document doc = LoadDocument(file);
        if (const auto* instance = std::get_if<QueryInstance>(&doc)) {
          if (instance->size() > kOracleMaxBidders) continue;
          ++tally.instances;
          for (ObjectiveMode mode : ModesFor(*instance)) {
            json record = {{"file", name}};
            CompareOne(*instance, mode, NontrivialMask(*instance), name, tally,
                       &record);
            fixtures.push_back(std::move(record));
          }
        } else {
          const auto& problem = std::get<ColGenProblem>(doc);
          const ColGenResult run = RunColGen(problem, 1000);
          const MasterSolution exact =
              SolveMasterLp(EnumerateAllColumns(problem), problem);
          const bool ok = run.converged &&
                          ApproxEqual(run.master.objective, exact.objective, 1e-6);
          ++tally.comparisons;
          if (!ok) {
            ++tally.mismatches;
            tally.failures.push_back({{"case", name},
                                      {"colgen", run.master.objective},
                                      {"exact", exact.objective}});
          }
          fixtures.push_back({{"file", name},
                              {"colgen", run.master.objective},
                              {"exact", exact.objective},
                              {"iterations", run.log.size()},
                              {"ok", ok}});
        }
      }
    }

    InstanceGenerator gen(args.seed);
    for (int i = 0; i < args.random_instances; ++i) {
      GeneratorConfig config;
      config.max_bidders = 10;
      config.max_positions = 4;
      config.unit_quality = i % 3 == 0;
      const QueryInstance instance = gen.Next(config);
      const Mask mask = gen.NextMask(instance.size());
      ++tally.instances;
      const std::string label = "random#" + std::to_string(i);
      for (ObjectiveMode mode : ModesFor(instance)) {
        CompareOne(instance, mode, std::nullopt, label, tally, nullptr);
        CompareOne(instance, mode, mask, label + "/masked", tally, nullptr);
      }
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  if (args.json) {
    json report = {{"seed", args.seed},
                   {"random_instances", args.random_instances},
                   {"instances", tally.instances},
                   {"comparisons", tally.comparisons},
                   {"mismatches", tally.mismatches},
                   {"digest", Hex(tally.digest.value())},
                   {"fixtures", fixtures},
                   {"failures", tally.failures}};
    out << report.dump(2) << '\n';
  } else {
    out << "instances: " << tally.instances << '\n'
        << "comparisons: " << tally.comparisons << '\n'
        << "mismatches: " << tally.mismatches << '\n'
        << "digest: " << Hex(tally.digest.value()) << '\n';
    for (const auto& failure : tally.failures) out << "FAIL " << failure.dump() << '\n';
  }
  return tally.mismatches == 0 ? kExitOk : kExitMismatch;
}

BenchReport RunBench(const BenchArgs& args) {
  if (args.count < 1 || args.positions < 1 || args.max_ads < 1) {
    throw ValidationError("bench count, positions and max_ads must be >= 1");
  }
  InstanceGenerator gen(args.seed);
  GeneratorConfig config;
  config.min_bidders = 1;
  config.max_bidders = args.max_ads;
  config.min_positions = config.max_positions = args.positions;
  config.unit_quality = args.mode == ObjectiveMode::kBidRanked;
  std::vector<RawInstance> workload;
  workload.reserve(args.count);
  for (int i = 0; i < args.count; ++i) workload.push_back(gen.NextRaw(config));

  BenchReport report;
  report.count = args.count;
  report.positions = args.positions;
  report.max_ads = args.max_ads;
  report.seed = args.seed;
  std::vector<double> micros;
  micros.reserve(args.count);
  Fnv1a digest;
  std::size_t total_bidders = 0;
  const auto bench_start = Clock::now();
  for (const RawInstance& raw : workload) {
    const auto start = Clock::now();
    const QueryInstance instance =
        ValidateAndRank(raw.bidders, raw.ctr, raw.positions, raw.min_bid);
    const SlateSolution solution = SolveSlate(instance, args.mode);
    micros.push_back(MicrosSince(start));
    report.value_sum += solution.value;
    digest.Add(solution.slate);
    total_bidders += raw.bidders.size();
  }
  report.total_seconds = MicrosSince(bench_start) * 1e-6;
  report.slate_digest = digest.value();
  report.mean_bidders = static_cast<double>(total_bidders) / args.count;

  double sum = 0.0;
  for (double t : micros) sum += t;
  report.mean_us = sum / args.count;
  std::sort(micros.begin(), micros.end());
  report.median_us = micros[micros.size() / 2];
  const auto p99 = static_cast<std::size_t>(std::ceil(0.99 * micros.size())) - 1;
  report.p99_us = micros[std::min(p99, micros.size() - 1)];
  return report;
}

int CmdBench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  BenchReport report;
  try {
    report = RunBench(args);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  std::ostringstream timing;
  timing << "mean " << report.mean_us << " us, median " << report.median_us
         << " us, p99 " << report.p99_us << " us over " << report.count
         << " queries (" << report.total_seconds << " s)\n";
  if (args.json) {
    // stdout carries only seed-determined content; wall times go to stderr.
    json doc = {{"count", report.count},
                {"positions", report.positions},
                {"max_ads", report.max_ads},
                {"seed", report.seed},
                {"mode", std::string(ToString(args.mode))},
                {"mean_bidders", report.mean_bidders},
                {"value_sum", report.value_sum},
                {"slate_digest", Hex(report.slate_digest)}};
    out << doc.dump(2) << '\n';
    err << timing.str();
  } else {
    out << "queries: " << report.count << " (m = " << report.positions
        << ", n uniform on [1, " << report.max_ads << "], mean n "
        << report.mean_bidders << ")\n"
        << "slate digest: " << Hex(report.slate_digest) << '\n'
        << timing.str();
  }
  return kExitOk;
}

int CmdColGen(const ColGenArgs& args, std::ostream& out, std::ostream& err) {
  try {
    Document doc = LoadDocument(args.problem);
    const auto* problem = std::get_if<ColGenProblem>(&doc);
    if (problem == nullptr) {
      err << args.problem.string() << ": expected a colgen envelope\n";
      return kExitInvalid;
    }
    const ColGenResult run = RunColGen(*problem, args.max_iters, args.tolerance);
    std::optional<MasterSolution> exact;
    if (args.exact) exact = SolveMasterLp(EnumerateAllColumns(*problem), *problem);

    json columns = json::array();
    for (std::size_t c = 0; c < run.pool.size(); ++c) {
      if (run.master.x[c] <= 0.0) continue;
      const Column& column = run.pool[c];
      const QueryInstance& instance = problem->queries[column.query].instance;
      json ids = json::array();
      for (int r : column.slate.ranks) ids.push_back(instance.bidders[r].id);
      columns.push_back({{"query", column.query},
                         {"slate", ids},
                         {"x", run.master.x[c]},
                         {"objective_coef", column.objective}});
    }
    json budget_duals = json::object();
    for (std::size_t b = 0; b < problem->budget_count(); ++b) {
      budget_duals[problem->budgets[b].bidder_id] = run.master.budget_duals[b];
    }
    std::ostringstream log;
    WriteIterationLog(log, run.log);

    if (args.json) {
      json report = {{"objective", run.master.objective},
                     {"converged", run.converged},
                     {"pool_size", run.pool.size()},
                     {"columns", columns},
                     {"budget_duals", budget_duals},
                     {"volume_duals", run.master.volume_duals},
                     {"log", log.str()}};
      if (exact) report["exact_objective"] = exact->objective;
      out << report.dump(2) << '\n';
    } else {
      out << log.str();
      out << "objective: " << Full(run.master.objective)
          << (run.converged ? "" : " (iteration cap reached)") << '\n';
      if (exact) out << "exact objective: " << Full(exact->objective) << '\n';
      out << "columns in use:\n";
      for (const auto& column : columns) out << "  " << column.dump() << '\n';
      out << "budget duals: " << budget_duals.dump() << '\n';
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const SimplexError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

}  // namespace adslate

#include "adslate/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "adslate/path_solver.hpp"

namespace adslate {

InstanceGenerator::InstanceGenerator(std::uint64_t seed) : engine_(seed) {}

// The standard distributions are implementation-defined; map raw engine
// output by hand so streams match across standard libraries.
double InstanceGenerator::Uniform(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

double InstanceGenerator::LogUniform(double lo, double hi) {
  return std::exp(Uniform(std::log(lo), std::log(hi)));
}

int InstanceGenerator::UniformInt(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

bool InstanceGenerator::Coin(double p_true) { return Uniform(0.0, 1.0) < p_true; }

double InstanceGenerator::PositionFactor(int position) {
  return 1.0 / (1.0 + 0.3 * (position - 1));
}

RawInstance InstanceGenerator::NextRaw(const GeneratorConfig& config) {
  RawInstance raw;
  const int n = UniformInt(config.min_bidders, config.max_bidders);
  raw.positions = UniformInt(config.min_positions, config.max_positions);
  raw.min_bid = config.min_bid;
  raw.ctr = CtrMatrix(n, raw.positions);
  raw.bidders.reserve(n);
  for (int j = 0; j < n; ++j) {
    Bidder b;
    b.id = "ad" + std::to_string(j);
    b.bid = LogUniform(0.1, 10.0);
    b.quality = config.unit_quality ? 1.0 : LogUniform(0.5, 2.0);
    b.utility_factor = Uniform(-0.5, 1.0);
    b.hybrid_weight = Uniform(-0.25, 0.5);
    const double base = Uniform(0.05, 0.3);
    for (int p = 1; p <= raw.positions; ++p) {
      raw.ctr(j, p - 1) = base * PositionFactor(p);
    }
    raw.bidders.push_back(std::move(b));
  }
  return raw;
}

QueryInstance InstanceGenerator::Next(const GeneratorConfig& config) {
  RawInstance raw = NextRaw(config);
  return ValidateAndRank(std::move(raw.bidders), raw.ctr, raw.positions,
                         raw.min_bid);
}

Mask InstanceGenerator::NextMask(std::size_t n, double p_excludable) {
  Mask mask;
  mask.excludable.reserve(n);
  for (std::size_t j = 0; j < n; ++j) mask.excludable.push_back(Coin(p_excludable));
  return mask;
}

Slate InstanceGenerator::NextSlate(const QueryInstance& instance) {
  const int n = static_cast<int>(instance.size());
  const int k = UniformInt(1, std::min(n, instance.positions));
  std::vector<int> ranks(n);
  std::iota(ranks.begin(), ranks.end(), 0);
  // Partial Fisher-Yates on our own stream.
  for (int i = 0; i < k; ++i) std::swap(ranks[i], ranks[UniformInt(i, n - 1)]);
  Slate slate;
  slate.ranks.assign(ranks.begin(), ranks.begin() + k);
  std::sort(slate.ranks.begin(), slate.ranks.end());
  return slate;
}

ColGenProblem InstanceGenerator::NextColGenProblem(int queries, int bidders,
                                                   int positions,
                                                   double tightness,
                                                   ColumnObjective objective) {
  std::vector<std::string> ids;
  for (int b = 0; b < bidders; ++b) ids.push_back("b" + std::to_string(b));

  std::vector<ColGenQuery> query_list;
  std::vector<char> used(bidders, 0);
  for (int q = 0; q < queries; ++q) {
    const int n = UniformInt(std::min(2, bidders), bidders);
    std::vector<int> pool(bidders);
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < n; ++i) std::swap(pool[i], pool[UniformInt(i, bidders - 1)]);
    GeneratorConfig config;
    config.min_bidders = config.max_bidders = n;
    config.min_positions = config.max_positions = positions;
    RawInstance raw = NextRaw(config);
    for (int i = 0; i < n; ++i) {
      raw.bidders[i].id = ids[pool[i]];
      used[pool[i]] = 1;
    }
    ColGenQuery query;
    query.instance = ValidateAndRank(std::move(raw.bidders), raw.ctr,
                                     raw.positions, raw.min_bid);
    query.volume = Uniform(5.0, 20.0);
    query_list.push_back(std::move(query));
  }

  std::vector<Budget> budgets;
  for (int b = 0; b < bidders; ++b) {
    if (used[b] && (budgets.empty() || Coin(0.75))) budgets.push_back({ids[b], 0.0});
  }
  // Provisional infinite budgets let us price the unconstrained optimum.
  for (Budget& budget : budgets) budget.amount = std::numeric_limits<double>::infinity();
  ColGenProblem problem =
      MakeColGenProblem(std::move(query_list), budgets, objective);
  std::vector<double> spend(budgets.size(), 0.0);
  const std::vector<double> no_duals(budgets.size(), 0.0);
  for (std::size_t q = 0; q < problem.query_count(); ++q) {
    const PricingSubproblem sub = MakePricingSubproblem(problem, q, no_duals);
    const SlateSolution best = SolveSlate(sub.instance, sub.mode, sub.mask);
    const Column column = SlateColumn(problem, q, best.slate);
    for (std::size_t b = 0; b < budgets.size(); ++b) {
      spend[b] += problem.queries[q].volume * column.cost[b];
    }
  }
  for (std::size_t b = 0; b < budgets.size(); ++b) {
    problem.budgets[b].amount = spend[b] > 0.0
                                    ? tightness * spend[b] * Uniform(0.5, 1.5)
                                    : Uniform(0.05, 0.5);
  }
  return problem;
}

}  // namespace adslate

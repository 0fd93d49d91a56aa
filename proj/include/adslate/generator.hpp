#ifndef ADSLATE_GENERATOR_HPP_
#define ADSLATE_GENERATOR_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "adslate/colgen.hpp"
#include "adslate/mask.hpp"
#include "adslate/model.hpp"

namespace adslate {

// Unranked instance data, as it would arrive from an auction front end.
struct RawInstance {
  std::vector<Bidder> bidders;
  CtrMatrix ctr;
  int positions = 0;
  double min_bid = 0.0;
};

struct GeneratorConfig {
  int min_bidders = 1;
  int max_bidders = 10;
  int min_positions = 1;
  int max_positions = 4;
  bool unit_quality = false;
  double min_bid = 0.05;
};

// Seeded synthetic workload:
//   bid      log-uniform on [0.1, 10]
//   quality  log-uniform on [0.5, 2] (or 1 with unit_quality)
//   ctr      base_j * PositionFactor(p), base_j uniform on [0.05, 0.3]
//   rho      uniform on [-0.5, 1]
//   mu       uniform on [-0.25, 0.5]
// The stream depends only on the seed and the sequence of calls.
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed);

  double Uniform(double lo, double hi);
  double LogUniform(double lo, double hi);
  int UniformInt(int lo, int hi);  // inclusive
  bool Coin(double p_true);

  RawInstance NextRaw(const GeneratorConfig& config);
  QueryInstance Next(const GeneratorConfig& config);
  Mask NextMask(std::size_t n, double p_excludable = 0.5);
  // A slate of random length 1..min(n, m) with uniformly chosen ranks.
  Slate NextSlate(const QueryInstance& instance);

  // `queries` queries over a shared pool of `bidders` advertisers (ids
  // "b0".."b<k>"). Roughly three quarters of the advertisers get a budget
  // near `tightness` times what the unconstrained-optimal slates would
  // charge them; the rest are unbudgeted.
  ColGenProblem NextColGenProblem(int queries, int bidders, int positions,
                                  double tightness,
                                  ColumnObjective objective);

  static double PositionFactor(int position);

 private:
  std::mt19937_64 engine_;
};

}  // namespace adslate

#endif  // ADSLATE_GENERATOR_HPP_

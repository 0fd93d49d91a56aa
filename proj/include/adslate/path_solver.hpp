#ifndef ADSLATE_PATH_SOLVER_HPP_
#define ADSLATE_PATH_SOLVER_HPP_

#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "adslate/mask.hpp"
#include "adslate/model.hpp"

namespace adslate {

namespace internal {
class TransitionTable;
}

// Node N_{rank,layer} with the network's own 1-based numbering: ranks
// 1..n are real ads, rank n+1 is the padding chain, (0,0) is the source
// and (n+1, m+1) the sink.
struct NodeId {
  int rank = 0;
  int layer = 0;

  bool operator==(const NodeId&) const = default;
  auto operator<=>(const NodeId&) const = default;
};

struct NetworkEdge {
  NodeId from;
  NodeId to;
  double cost = 0.0;
};

// Layered DAG whose source-to-sink paths are the admissible slates. Arcs
// are not stored: successor ranges are derived on demand from the mask,
// and costs from the objective mode.
class SlateNetwork {
 public:
  SlateNetwork(const QueryInstance& instance, ObjectiveMode mode,
               const std::optional<Mask>& mask);
  ~SlateNetwork();
  SlateNetwork(SlateNetwork&&) noexcept;
  SlateNetwork& operator=(SlateNetwork&&) noexcept;

  int bidders() const { return n_; }
  int positions() const { return m_; }
  ObjectiveMode mode() const { return mode_; }
  NodeId source() const { return {0, 0}; }
  NodeId sink() const { return {n_ + 1, m_ + 1}; }
  int chain_rank() const { return n_ + 1; }

  // Number of nodes in the unfiltered network, terminals included.
  int NodeCount() const;

  // Highest real rank (1-based) allowed to open the slate.
  int LastFirstRank() const { return first_clear_ > n_ ? n_ : first_clear_; }
  // Source may step straight onto the padding chain (empty slate).
  bool SourceReachesChain() const { return first_clear_ > n_; }
  // Highest real successor rank (1-based) of real rank i.
  int LastSuccessor(int i) const {
    return next_clear_[i - 1] > n_ ? n_ : next_clear_[i - 1];
  }
  // Real rank i may be followed by padding.
  bool MayPad(int i) const { return next_clear_[i - 1] > n_; }

  double Cost(NodeId from, NodeId to) const;

  // Arcs leaving nodes reachable from the source, ordered by origin
  // (layer, rank) and then destination rank. Without a mask this is the
  // complete network.
  std::vector<NetworkEdge> Edges() const;

  const internal::TransitionTable& transitions() const { return *table_; }

 private:
  int n_;
  int m_;
  ObjectiveMode mode_;
  // 1-based rank of the first clear mask bit at or after the start, and
  // strictly after each rank; n+1 when there is none.
  int first_clear_;
  std::vector<int> next_clear_;
  std::unique_ptr<internal::TransitionTable> table_;
};

SlateNetwork BuildNetwork(const QueryInstance& instance, ObjectiveMode mode,
                          const std::optional<Mask>& mask = std::nullopt);

struct PathResult {
  std::vector<NodeId> nodes;  // source first, sink last
  double value = 0.0;
};

// Longest source-to-sink path by one pass of relaxation in (layer, rank)
// order. Equal-value predecessors resolve to the smaller rank.
PathResult LongestPath(const SlateNetwork& network, SolveOptions options = {});

SlateSolution SolveSlate(const QueryInstance& instance, ObjectiveMode mode,
                         const std::optional<Mask>& mask = std::nullopt,
                         SolveOptions options = {});

// Strips source, sink and padding nodes.
Slate DecodePath(const PathResult& path, int bidders);

// One line per arc: "(i,p) -> (j,q) : cost". With with_costs = false the
// " : cost" suffix is omitted.
void WriteEdgeList(std::ostream& out, const SlateNetwork& network,
                   bool with_costs = true);
std::string FormatNode(NodeId node);

}  // namespace adslate

#endif  // ADSLATE_PATH_SOLVER_HPP_

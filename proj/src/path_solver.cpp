#include "adslate/path_solver.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "transition.hpp"

namespace adslate {

SlateNetwork::SlateNetwork(const QueryInstance& instance, ObjectiveMode mode,
                           const std::optional<Mask>& mask)
    : n_(static_cast<int>(instance.size())),
      m_(instance.positions),
      mode_(mode),
      first_clear_(n_ + 1),
      next_clear_(n_, n_ + 1) {
  CheckMode(instance, mode);
  if (mask) {
    CheckMask(instance, *mask);
    int next = n_ + 1;
    for (int rank = n_; rank >= 1; --rank) {
      next_clear_[rank - 1] = next;
      if (!mask->excludable[rank - 1]) next = rank;
    }
    first_clear_ = next;
  }
  table_ = std::make_unique<internal::TransitionTable>(instance, mode);
}

SlateNetwork::~SlateNetwork() = default;
SlateNetwork::SlateNetwork(SlateNetwork&&) noexcept = default;
SlateNetwork& SlateNetwork::operator=(SlateNetwork&&) noexcept = default;

int SlateNetwork::NodeCount() const {
  int count = 2;
  for (int p = 1; p <= m_; ++p) {
    const int lowest = p < n_ + 1 ? p : n_ + 1;
    count += n_ + 2 - lowest;
  }
  return count;
}

double SlateNetwork::Cost(NodeId from, NodeId to) const {
  if (from == source() || from.rank == chain_rank()) return 0.0;
  if (from.layer == m_) return table_->Terminal(from.rank - 1);
  if (to.rank == chain_rank()) return table_->ToDummy(from.rank - 1, from.layer);
  return table_->Interior(from.rank - 1, to.rank - 1, from.layer);
}

namespace {

// Visits arcs of the filtered network in (layer, origin rank, destination
// rank) order, skipping origins `live` rejects.
template <typename Live, typename Visit>
void ForEachArc(const SlateNetwork& net, bool include_empty, Live&& live,
                Visit&& visit) {
  const int n = net.bidders();
  const int m = net.positions();
  const int chain = net.chain_rank();
  for (int j = 1; j <= net.LastFirstRank(); ++j) visit(net.source(), NodeId{j, 1});
  if (include_empty && net.SourceReachesChain()) {
    visit(net.source(), NodeId{chain, 1});
  }
  for (int p = 1; p <= m; ++p) {
    for (int i = p; i <= n; ++i) {
      const NodeId from{i, p};
      if (!live(from)) continue;
      if (p == m) {
        visit(from, net.sink());
        continue;
      }
      for (int j = i + 1, hi = net.LastSuccessor(i); j <= hi; ++j) {
        visit(from, NodeId{j, p + 1});
      }
      if (net.MayPad(i)) visit(from, NodeId{chain, p + 1});
    }
    const NodeId pad{chain, p};
    if (live(pad)) visit(pad, p == m ? net.sink() : NodeId{chain, p + 1});
  }
}

}  // namespace

std::vector<NetworkEdge> SlateNetwork::Edges() const {
  std::vector<char> reached(static_cast<std::size_t>(n_ + 2) * (m_ + 2), 0);
  auto slot = [this](NodeId node) {
    return static_cast<std::size_t>(node.rank) * (m_ + 2) + node.layer;
  };
  std::vector<NetworkEdge> edges;
  ForEachArc(
      *this, /*include_empty=*/true,
      [&](NodeId node) { return reached[slot(node)] != 0; },
      [&](NodeId from, NodeId to) {
        reached[slot(to)] = 1;
        edges.push_back({from, to, Cost(from, to)});
      });
  return edges;
}

SlateNetwork BuildNetwork(const QueryInstance& instance, ObjectiveMode mode,
                          const std::optional<Mask>& mask) {
  return SlateNetwork(instance, mode, mask);
}

PathResult LongestPath(const SlateNetwork& network, SolveOptions options) {
  const int n = network.bidders();
  const int m = network.positions();
  const int stride = m + 2;
  const double unreached = -std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(n + 2) * stride, unreached);
  std::vector<NodeId> pred(dist.size());
  auto slot = [stride](NodeId node) {
    return static_cast<std::size_t>(node.rank) * stride + node.layer;
  };
  dist[slot(network.source())] = 0.0;

  // Strictly-greater updates keep the first (smallest-rank) predecessor.
  auto relax = [&](NodeId from, NodeId to, double cost) {
    const double candidate = dist[slot(from)] + cost;
    double& current = dist[slot(to)];
    if (candidate > current) {
      current = candidate;
      pred[slot(to)] = from;
    }
  };
  ForEachArc(
      network, options.allow_empty,
      [&](NodeId node) { return dist[slot(node)] != unreached; },
      [&](NodeId from, NodeId to) { relax(from, to, network.Cost(from, to)); });

  const NodeId sink = network.sink();
  if (dist[slot(sink)] == unreached) {
    throw ValidationError("no admissible slate: sink unreachable under mask");
  }
  PathResult result;
  result.value = dist[slot(sink)];
  for (NodeId node = sink; !(node == network.source()); node = pred[slot(node)]) {
    result.nodes.push_back(node);
  }
  result.nodes.push_back(network.source());
  std::reverse(result.nodes.begin(), result.nodes.end());
  return result;
}

Slate DecodePath(const PathResult& path, int bidders) {
  Slate slate;
  for (const NodeId& node : path.nodes) {
    if (node.layer >= 1 && node.rank >= 1 && node.rank <= bidders) {
      slate.ranks.push_back(node.rank - 1);
    }
  }
  return slate;
}

SlateSolution SolveSlate(const QueryInstance& instance, ObjectiveMode mode,
                         const std::optional<Mask>& mask,
                         SolveOptions options) {
  const SlateNetwork network = BuildNetwork(instance, mode, mask);
  const PathResult path = LongestPath(network, options);
  SlateSolution solution =
      EvaluateSlate(instance, DecodePath(path, network.bidders()), mode);
  if (!ApproxEqual(solution.value, path.value, 1e-12)) {
    throw std::logic_error("longest path value does not match slate "
                           "re-evaluation");
  }
  solution.value = path.value;
  return solution;
}

std::string FormatNode(NodeId node) {
  return "(" + std::to_string(node.rank) + "," + std::to_string(node.layer) +
         ")";
}

void WriteEdgeList(std::ostream& out, const SlateNetwork& network,
                   bool with_costs) {
  for (const NetworkEdge& edge : network.Edges()) {
    out << FormatNode(edge.from) << " -> " << FormatNode(edge.to);
    if (with_costs) {
      std::ostringstream cost;
      cost.precision(17);
      cost << edge.cost;
      out << " : " << cost.str();
    }
    out << '\n';
  }
}

}  // namespace adslate

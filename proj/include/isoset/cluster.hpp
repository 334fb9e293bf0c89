#ifndef ISOSET_CLUSTER_HPP
#define ISOSET_CLUSTER_HPP

#include <vector>

#include "isoset/lattice.hpp"

namespace isoset {

/// Local alpha-cluster: vectors q - p for all q in S with |q - p| <= alpha,
/// re-centered so the zero vector is present exactly once.  Points are
/// sorted by (norm, lexicographic) for deterministic processing.
struct Cluster {
  int dim = 0;
  double radius = 0.0;
  std::vector<Vec> points;

  Cluster() = default;
  Cluster(int dim, double radius, std::vector<Vec> pts);
};

Cluster alphaCluster(const PeriodicSet& set, int motifIndex, double radius);

struct BridgeEdge {
  int i = 0;
  int j = 0;
  IVec shift = IVec::Zero();
  double distance = 0.0;
};

/// Exact bridge length beta(S) with a witness edge set: the edges that, in
/// increasing-distance order, merged motif components or enlarged the
/// sublattice generated by cycle translations up to full rank and index 1.
struct BridgeResult {
  double beta = 0.0;
  std::vector<BridgeEdge> witnessEdges;
};

BridgeResult bridgeLength(const PeriodicSet& set);

/// Sound upper bound for the minimum stable radius:
/// beta(S) + max{b, d/2}, tightened to 2*beta for a single-point motif
/// (lattice case).
double stableRadiusUpperBound(const PeriodicSet& set);

/// Minimal radius alpha >= beta(S) at which both the alpha-partition and all
/// motif symmetry groups coincide with their (alpha - beta) counterparts.
double minStableRadius(const PeriodicSet& set);

/// Tests the two stability conditions at a single radius, with beta taken
/// as the exact bridge length.  Stable radii form [minStableRadius, inf).
bool isStableRadius(const PeriodicSet& set, double alpha);

/// Tree of alpha-partitions.  partitions[r] lists the equivalence classes
/// (sorted motif-index lists) at criticalRadii[r]; symmetryOrders[r][i] is
/// |Sym(S, p_i; radius)| with -1 marking a continuous (infinite) group.
struct Isotree {
  std::vector<double> criticalRadii;
  std::vector<std::vector<std::vector<int>>> partitions;
  std::vector<std::vector<long long>> symmetryOrders;
};

Isotree isotree(const PeriodicSet& set, double maxRadius);
std::string isotreeToJson(const Isotree& tree);

}  // namespace isoset

#endif

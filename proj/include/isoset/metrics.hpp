#ifndef ISOSET_METRICS_HPP
#define ISOSET_METRICS_HPP

#include <string>
#include <vector>

#include "isoset/congruence.hpp"

namespace isoset {

/// Upper-bound approximation of a distance: the true value lies in
/// [value / factor, value].
struct ApproxValue {
  double value = 0.0;
  double factor = 1.0;
};

/// Guaranteed approximation factor (n^2 - n + 2)/2 * (1 + delta) for the
/// rotation-invariant machinery; exact nearest neighbors correspond to
/// delta = 0.
double approximationFactor(int dim, double delta);

/// Directed Hausdorff distance max_{p in C} min_{q in D} |p - q|.
double directedHausdorff(const std::vector<Vec>& c, const std::vector<Vec>& d,
                         int dim = 3);

/// Rotation-invariant distance between origin-centered clusters:
/// max of the two directed Hausdorff distances, each minimized over
/// orthogonal maps via extremal-point alignment candidates.
ApproxValue rotationInvariantDistance(const Cluster& c, const Cluster& d,
                                      double delta = 0.0);

/// One direction of the above: min over orthogonal maps f of the directed
/// Hausdorff distance from f(C) to D, same candidate scheme.
double directedRotationDistance(const Cluster& c, const Cluster& d);

/// Directed boundary-tolerant distance d_M(C, D) = max_i min{alpha - |p_i|,
/// d_R({p_1..p_i}, D)} over norm-ordered prefixes of C.
ApproxValue maxMinDirectedDistance(const Cluster& c, const Cluster& d,
                                   double alpha, double delta = 0.0);

/// Boundary-tolerant cluster distance between isometry classes at a common
/// radius: max{d_M(C, D), d_M(D, C)}.
ApproxValue clusterDistance(const IsometryClass& a, const IsometryClass& b,
                            double delta = 0.0);

/// Exact rational weight of a distribution entry.
struct Weight {
  long long num = 0;
  long long den = 1;
};

struct FlowEntry {
  int i = 0;
  int j = 0;
  double flow = 0.0;
  double cost = 0.0;  // flow * unit cost
};

/// Optimal transportation plan between two weighted distributions.
struct FlowPlan {
  std::vector<FlowEntry> entries;
  double cost = 0.0;
};

/// Exact Earth Mover's Distance between distributions with rational weights
/// summing to 1 on both sides.  Solved by successive-shortest-path min-cost
/// flow on integer-scaled weights.
FlowPlan emd(const std::vector<Weight>& source, const std::vector<Weight>& sink,
             const std::vector<std::vector<double>>& cost);

/// Convenience overload: weights given as doubles are rationalized by
/// continued fractions before the exact solve.
FlowPlan emd(const std::vector<double>& source, const std::vector<double>& sink,
             const std::vector<std::vector<double>>& cost);

std::string flowPlanToJson(const FlowPlan& plan);

/// EMD between isosets built at the given common radius.
ApproxValue isosetDistanceAtRadius(const PeriodicSet& s, const PeriodicSet& q,
                                   double alpha, double delta = 0.0);

/// EMD between isosets at the common stable radius (max of the two
/// stable-radius upper bounds).
ApproxValue isosetDistance(const PeriodicSet& s, const PeriodicSet& q,
                           double delta = 0.0);

/// Scale-normalized metric: |d_S - d_Q| + EMD(I(S/d_S; 1), I(Q/d_Q; 1)),
/// where d_S is the double diameter of the given unit cell.  The value
/// depends on the cell presentation; see the README.
ApproxValue scaledInvariantDistance(const PeriodicSet& s, const PeriodicSet& q,
                                    double delta = 0.0);

/// Bottleneck distance between equal-size finite point lists: minimum over
/// bijections of the maximum displacement.
double bottleneckDistanceFinite(const std::vector<Vec>& a,
                                const std::vector<Vec>& b);

}  // namespace isoset

#endif

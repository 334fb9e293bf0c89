#ifndef ISOSET_TESTS_ORACLES_HPP
#define ISOSET_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "isoset/cluster.hpp"
#include "isoset/kdtree.hpp"
#include "isoset/metrics.hpp"

namespace isoset::oracles {

// Matrices of the rotation by theta and the reflection across the line at
// angle theta/2 (so both families sweep all of O(R^2)).
inline Mat rot2d(double theta) {
  Mat m = Mat::Identity();
  m(0, 0) = std::cos(theta); m(0, 1) = -std::sin(theta);
  m(1, 0) = std::sin(theta); m(1, 1) = std::cos(theta);
  return m;
}

inline Mat reflect2d(double theta) {
  Mat m = Mat::Identity();
  m(0, 0) = std::cos(theta); m(0, 1) = std::sin(theta);
  m(1, 0) = std::sin(theta); m(1, 1) = -std::cos(theta);
  return m;
}

// Dense-grid evaluation of min over O(R^2) of the directed Hausdorff
// distance from f(C) to D (no boundary term).
inline double directedRotGrid(const std::vector<Vec>& c, const std::vector<Vec>& d,
                              double step = 1e-4) {
  KdTree tree(d, 2);
  double best = std::numeric_limits<double>::infinity();
  for (int orient = 0; orient < 2; ++orient) {
    for (double theta = 0.0; theta < 2.0 * M_PI; theta += step) {
      const Mat f = orient == 0 ? rot2d(theta) : reflect2d(theta);
      double worst = 0.0;
      for (const Vec& p : c) {
        worst = std::max(worst, tree.nearestDistance(f * p, best));
        if (worst >= best) break;
      }
      best = std::min(best, worst);
    }
  }
  return best;
}

inline double dRGrid(const Cluster& c, const Cluster& d, double step = 1e-4) {
  return std::max(directedRotGrid(c.points, d.points, step),
                  directedRotGrid(d.points, c.points, step));
}

// Dense-grid evaluation of the boundary-tolerant cluster distance: for a
// fixed map the directed distance with boundary spheres collapses to
// max_p min(dist(f p, D), alpha - |p|), the sphere supplying the second
// term; both directions are maximized.
inline double directedBoundaryGrid(const std::vector<Vec>& c, const std::vector<Vec>& d,
                                   double alpha, double step) {
  KdTree tree(d, 2);
  double best = std::numeric_limits<double>::infinity();
  for (int orient = 0; orient < 2; ++orient) {
    for (double theta = 0.0; theta < 2.0 * M_PI; theta += step) {
      const Mat f = orient == 0 ? rot2d(theta) : reflect2d(theta);
      double worst = 0.0;
      for (const Vec& p : c) {
        const double sphereTerm = alpha - p.norm();
        if (sphereTerm <= worst) continue;
        const double term = std::min(tree.nearestDistance(f * p, best), sphereTerm);
        worst = std::max(worst, term);
        if (worst >= best) break;
      }
      best = std::min(best, worst);
    }
  }
  return best;
}

inline double dCGrid(const Cluster& c, const Cluster& d, double alpha,
                     double step = 1e-4) {
  return std::max(directedBoundaryGrid(c.points, d.points, alpha, step),
                  directedBoundaryGrid(d.points, c.points, alpha, step));
}

// Exhaustive optimum of the transportation problem via basic feasible
// solutions: every vertex of the polytope is supported on a spanning forest
// with at most m + n - 1 cells, so enumerating those subsets and solving
// the margins exactly covers all vertices.
inline double transportBruteForce(const std::vector<double>& supply,
                                  const std::vector<double>& demand,
                                  const std::vector<std::vector<double>>& cost) {
  const int m = static_cast<int>(supply.size());
  const int n = static_cast<int>(demand.size());
  const int cells = m * n;
  const int support = m + n - 1;
  double best = std::numeric_limits<double>::infinity();

  std::vector<int> chosen;
  std::function<void(int)> recurse = [&](int start) {
    if (static_cast<int>(chosen.size()) == support) {
      // Solve the margins on the chosen cells by leaf elimination.
      std::vector<double> rowLeft(supply), colLeft(demand);
      std::vector<double> flow(chosen.size(), -1.0);
      std::vector<char> doneCell(chosen.size(), 0);
      bool progress = true;
      int solved = 0;
      while (progress && solved < support) {
        progress = false;
        for (size_t t = 0; t < chosen.size(); ++t) {
          if (doneCell[t]) continue;
          const int i = chosen[t] / n;
          const int j = chosen[t] % n;
          int rowCount = 0, colCount = 0;
          for (size_t u = 0; u < chosen.size(); ++u) {
            if (doneCell[u]) continue;
            if (chosen[u] / n == i) ++rowCount;
            if (chosen[u] % n == j) ++colCount;
          }
          if (rowCount == 1 || colCount == 1) {
            const double f = rowCount == 1 ? rowLeft[static_cast<size_t>(i)]
                                           : colLeft[static_cast<size_t>(j)];
            flow[t] = f;
            rowLeft[static_cast<size_t>(i)] -= f;
            colLeft[static_cast<size_t>(j)] -= f;
            doneCell[t] = 1;
            ++solved;
            progress = true;
          }
        }
      }
      if (solved < support) return;  // the support contains a cycle
      double total = 0.0;
      for (size_t t = 0; t < chosen.size(); ++t) {
        if (flow[t] < -1e-12) return;  // infeasible basis
        total += flow[t] * cost[static_cast<size_t>(chosen[t] / n)]
                               [static_cast<size_t>(chosen[t] % n)];
      }
      for (double r : rowLeft) {
        if (std::abs(r) > 1e-9) return;
      }
      best = std::min(best, total);
      return;
    }
    if (start >= cells) return;
    if (cells - start < support - static_cast<int>(chosen.size())) return;
    chosen.push_back(start);
    recurse(start + 1);
    chosen.pop_back();
    recurse(start + 1);
  };
  recurse(0);
  return best;
}

// Exact optimality certificate for a transportation flow: the plan is
// optimal iff the residual graph (forward arcs everywhere, backward arcs
// where flow is positive) has no negative-cost cycle.  Independent of the
// successive-shortest-path solver.
inline bool flowIsOptimal(const isoset::FlowPlan& plan, int m, int n,
                          const std::vector<std::vector<double>>& cost,
                          double tol = 1e-9) {
  std::vector<std::vector<double>> flow(static_cast<size_t>(m),
                                        std::vector<double>(static_cast<size_t>(n), 0.0));
  for (const isoset::FlowEntry& e : plan.entries) {
    flow[static_cast<size_t>(e.i)][static_cast<size_t>(e.j)] = e.flow;
  }
  // Nodes 0..m-1 sources, m..m+n-1 sinks.
  struct Arc { int from, to; double cost; };
  std::vector<Arc> arcs;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      arcs.push_back({i, m + j, cost[static_cast<size_t>(i)][static_cast<size_t>(j)]});
      if (flow[static_cast<size_t>(i)][static_cast<size_t>(j)] > tol) {
        arcs.push_back({m + j, i, -cost[static_cast<size_t>(i)][static_cast<size_t>(j)]});
      }
    }
  }
  std::vector<double> dist(static_cast<size_t>(m + n), 0.0);
  for (int round = 0; round < m + n; ++round) {
    bool relaxed = false;
    for (const Arc& a : arcs) {
      if (dist[static_cast<size_t>(a.from)] + a.cost < dist[static_cast<size_t>(a.to)] - tol) {
        dist[static_cast<size_t>(a.to)] = dist[static_cast<size_t>(a.from)] + a.cost;
        relaxed = true;
      }
    }
    if (!relaxed) return true;
  }
  return false;  // still relaxing after |V| rounds: negative cycle
}

// Exhaustive bottleneck distance over all bijections (point lists of equal
// size up to 8).
inline double bottleneckBruteForce(std::vector<Vec> a, const std::vector<Vec>& b) {
  std::vector<int> perm(a.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  double best = std::numeric_limits<double>::infinity();
  std::sort(perm.begin(), perm.end());
  do {
    double worst = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
      worst = std::max(worst, (a[i] - b[static_cast<size_t>(perm[i])]).norm());
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace isoset::oracles

#endif

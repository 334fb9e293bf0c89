#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "isoset/cluster.hpp"
#include "isoset/congruence.hpp"

namespace isoset {

namespace {

// Per-motif point lists within a fixed reach, kept sorted by norm so that
// clusters at any smaller radius are prefixes.
class ClusterCache {
 public:
  ClusterCache(const PeriodicSet& set, double reach) : set_(set) {
    for (int i = 0; i < set.motifSize(); ++i) {
      const Vec p = set.motifCartesian(i);
      std::vector<Vec> pts = pointsInBall(set, p, reach);
      for (Vec& q : pts) q -= p;
      relative_.push_back(std::move(pts));
    }
  }

  Cluster at(int i, double radius) const {
    const auto& pts = relative_[static_cast<size_t>(i)];
    std::vector<Vec> prefix;
    for (const Vec& v : pts) {
      if (v.norm() <= radius + kGeomTol) {
        prefix.push_back(v);
      } else {
        break;
      }
    }
    for (Vec& v : prefix) {
      if (v.norm() <= kGeomTol) { v = Vec::Zero(); break; }
    }
    return Cluster(set_.dim(), radius, std::move(prefix));
  }

  std::vector<std::vector<int>> partition(double radius) const {
    const int m = set_.motifSize();
    std::vector<Cluster> clusters;
    for (int i = 0; i < m; ++i) clusters.push_back(at(i, radius));
    std::vector<int> cls(static_cast<size_t>(m), -1);
    std::vector<std::vector<int>> classes;
    for (int i = 0; i < m; ++i) {
      if (cls[static_cast<size_t>(i)] >= 0) continue;
      const int id = static_cast<int>(classes.size());
      cls[static_cast<size_t>(i)] = id;
      classes.push_back({i});
      for (int j = i + 1; j < m; ++j) {
        if (cls[static_cast<size_t>(j)] >= 0) continue;
        if (clusterIsometry(clusters[static_cast<size_t>(i)],
                            clusters[static_cast<size_t>(j)])) {
          cls[static_cast<size_t>(j)] = id;
          classes[static_cast<size_t>(id)].push_back(j);
        }
      }
    }
    return classes;
  }

  std::vector<SymmetryGroup> groups(double radius) const {
    std::vector<SymmetryGroup> out;
    for (int i = 0; i < set_.motifSize(); ++i) {
      out.push_back(symmetryGroupOfCluster(at(i, radius)));
    }
    return out;
  }

  // Distinct inter-point distances realized from motif centers, ascending.
  std::vector<double> criticalDistances(double maxRadius) const {
    std::vector<double> ds;
    for (const auto& pts : relative_) {
      for (const Vec& v : pts) {
        const double d = v.norm();
        if (d > kGeomTol && d <= maxRadius + kGeomTol) ds.push_back(d);
      }
    }
    std::sort(ds.begin(), ds.end());
    std::vector<double> unique;
    for (double d : ds) {
      if (unique.empty() || d - unique.back() > 1e-10) unique.push_back(d);
    }
    return unique;
  }

 private:
  const PeriodicSet& set_;
  std::vector<std::vector<Vec>> relative_;
};

bool stableAt(const ClusterCache& cache, double alpha, double beta) {
  const double inner = alpha - beta;
  if (inner < -kGeomTol) return false;
  if (cache.partition(alpha) != cache.partition(std::max(inner, 0.0))) return false;
  const auto big = cache.groups(alpha);
  const auto small = cache.groups(std::max(inner, 0.0));
  for (size_t i = 0; i < big.size(); ++i) {
    if (!symmetryGroupsEqual(big[i], small[i])) return false;
  }
  return true;
}

}  // namespace

double minStableRadius(const PeriodicSet& set) {
  const double beta = bridgeLength(set).beta;
  const double ub = stableRadiusUpperBound(set);
  ClusterCache cache(set, ub + kGeomTol);

  // Events of both conditions: the cluster event radii D and their
  // beta-shifted copies D + beta (the alpha - beta side), clipped to
  // [beta, ub].
  const std::vector<double> ds = cache.criticalDistances(ub);
  std::vector<double> candidates;
  candidates.push_back(beta);
  candidates.push_back(ub);
  for (double d : ds) {
    if (d >= beta - 1e-12) candidates.push_back(d);
    if (d + beta <= ub + 1e-9) candidates.push_back(d + beta);
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<double> unique;
  for (double c : candidates) {
    if (unique.empty() || c - unique.back() > 1e-10) unique.push_back(c);
  }

  for (double alpha : unique) {
    if (alpha < beta - 1e-12) continue;
    if (stableAt(cache, alpha, beta)) return alpha;
  }
  return ub;  // the upper bound is itself a stable radius
}

bool isStableRadius(const PeriodicSet& set, double alpha) {
  const double beta = bridgeLength(set).beta;
  if (alpha < beta - kGeomTol) return false;
  ClusterCache cache(set, alpha + kGeomTol);
  return stableAt(cache, alpha, beta);
}

Isotree isotree(const PeriodicSet& set, double maxRadius) {
  if (maxRadius < 0.0) throw InvalidRadius("negative isotree radius");
  ClusterCache cache(set, maxRadius + kGeomTol);
  std::vector<double> radii = cache.criticalDistances(maxRadius);
  radii.insert(radii.begin(), 0.0);

  Isotree tree;
  for (double r : radii) {
    auto partition = cache.partition(r);
    std::vector<long long> orders;
    for (const SymmetryGroup& g : cache.groups(r)) orders.push_back(g.order());
    if (!tree.partitions.empty() && tree.partitions.back() == partition &&
        tree.symmetryOrders.back() == orders) {
      continue;
    }
    tree.criticalRadii.push_back(r);
    tree.partitions.push_back(std::move(partition));
    tree.symmetryOrders.push_back(std::move(orders));
  }
  return tree;
}

std::string isotreeToJson(const Isotree& tree) {
  nlohmann::json j;
  j["criticalRadii"] = tree.criticalRadii;
  j["partitions"] = tree.partitions;
  // -1 marks the continuous group below the first neighbor distance.
  j["symmetryOrders"] = tree.symmetryOrders;
  return j.dump(2);
}

}  // namespace isoset

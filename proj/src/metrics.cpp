#include "isoset/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <nlohmann/json.hpp>
#include <numeric>

#include "isoset/detail/parallel.hpp"
#include "isoset/kdtree.hpp"

namespace isoset {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Target side of a directed rotation-distance computation: spatial index
// plus the sorted norm list used for lower bounds and candidate ordering.
struct Target {
  std::vector<Vec> pts;      // all points, zero included
  std::vector<Vec> nonzero;  // candidates for anchor images
  std::vector<double> norms;  // norms of all points, ascending
  KdTree tree;
  int dim = 1;

  explicit Target(const Cluster& c) : dim(c.dim) {
    pts = c.points;
    for (const Vec& p : pts) {
      if (p.norm() > 0.0) nonzero.push_back(p);
    }
    norms.resize(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) norms[i] = pts[i].norm();
    std::sort(norms.begin(), norms.end());
    tree = KdTree(pts, dim);
  }

  // Smallest |n - value| over stored norms.
  double normGap(double value) const {
    auto it = std::lower_bound(norms.begin(), norms.end(), value);
    double gap = kInf;
    if (it != norms.end()) gap = std::min(gap, *it - value);
    if (it != norms.begin()) gap = std::min(gap, value - *(it - 1));
    return gap;
  }
};

Mat rotation2(const Vec& from, const Vec& to) {
  const double c = from[0] * to[0] + from[1] * to[1];
  const double s = from[0] * to[1] - from[1] * to[0];
  Mat m = Mat::Identity();
  m(0, 0) = c; m(0, 1) = -s;
  m(1, 0) = s; m(1, 1) = c;
  return m;
}

Mat reflection2(const Vec& from, const Vec& to) {
  Vec axis = from + to;
  if (axis.norm() < 1e-14) axis = Vec(-from[1], from[0], 0.0);
  axis.normalize();
  Mat m = Mat::Identity();
  m(0, 0) = 2.0 * axis[0] * axis[0] - 1.0;
  m(0, 1) = 2.0 * axis[0] * axis[1];
  m(1, 0) = 2.0 * axis[1] * axis[0];
  m(1, 1) = 2.0 * axis[1] * axis[1] - 1.0;
  return m;
}

// max_{p in prefix} dist(A p, target), aborting once the running maximum
// reaches `bound`; returns bound in that case.
double mappedHausdorff(const Mat& a, const std::vector<Vec>& prefix, size_t count,
                       const Target& target, double bound) {
  double worst = 0.0;
  for (size_t i = count; i-- > 0;) {  // large norms first: they abort sooner
    const double d = target.tree.nearestDistance(a * prefix[i], bound);
    if (d >= bound) return bound;
    worst = std::max(worst, d);
  }
  return worst;
}

// Approximate min over orthogonal maps of the directed Hausdorff distance
// from the first `count` points of `prefix` to `target`.  Candidates align
// extremal points of the prefix with target points; the identity is always
// tried first.  The search aborts above `cap` and stops early once a
// candidate reaches `stopBelow`.
double directedRotApprox(const std::vector<Vec>& prefix, size_t count,
                         const Target& target, double cap, double stopBelow) {
  double best = mappedHausdorff(Mat::Identity(), prefix, count, target, cap);
  if (best <= stopBelow) return best;

  const int n = target.dim;
  if (n == 1) {
    Mat neg = Mat::Identity();
    neg(0, 0) = -1.0;
    return std::min(best, mappedHausdorff(neg, prefix, count, target, best));
  }

  // Anchor p1: maximum norm in the prefix (prefix is norm-ascending).
  int i1 = -1;
  for (size_t i = count; i-- > 0;) {
    if (prefix[i].norm() > 0.0) { i1 = static_cast<int>(i); break; }
  }
  if (i1 < 0) return best;  // prefix is just the center
  const Vec p1 = prefix[static_cast<size_t>(i1)];
  const Vec u1 = p1.normalized();

  // Candidate images ordered by how well their norm matches |p1|.
  std::vector<int> order(target.nonzero.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return std::abs(target.nonzero[static_cast<size_t>(x)].norm() - p1.norm()) <
           std::abs(target.nonzero[static_cast<size_t>(y)].norm() - p1.norm());
  });

  // A candidate whose anchor image norm differs from |p1| by more than the
  // current best cannot witness a better alignment (the optimal map sends
  // p1 within d_o of some target point).  Candidates are sorted by that
  // norm gap, so the scan can stop at the first violation.
  if (n == 2) {
    for (int j : order) {
      const Vec& q = target.nonzero[static_cast<size_t>(j)];
      if (std::abs(q.norm() - p1.norm()) > best + 1e-13) break;
      const Vec w = q.normalized();
      best = std::min(best, mappedHausdorff(rotation2(u1, w), prefix, count, target, best));
      if (best <= stopBelow) return best;
      best = std::min(best, mappedHausdorff(reflection2(u1, w), prefix, count, target, best));
      if (best <= stopBelow) return best;
    }
    return best;
  }

  // n == 3: second anchor with maximum perpendicular distance to span(p1).
  int i2 = -1;
  double perp2 = 0.0;
  for (size_t i = 0; i < count; ++i) {
    const Vec& p = prefix[i];
    const double perp = (p - p.dot(u1) * u1).norm();
    if (perp > perp2 + 1e-15) { perp2 = perp; i2 = static_cast<int>(i); }
  }

  if (i2 < 0 || perp2 < 1e-12) {
    // Collinear prefix: aligning the axis is enough.
    for (int j : order) {
      const Vec& q = target.nonzero[static_cast<size_t>(j)];
      if (std::abs(q.norm() - p1.norm()) > best + 1e-13) break;
      const Vec w = q.normalized();
      const Mat r1 = Eigen::Quaterniond::FromTwoVectors(u1, w).toRotationMatrix();
      best = std::min(best, mappedHausdorff(r1, prefix, count, target, best));
      if (best <= stopBelow) return best;
      const Mat r2 = Eigen::Quaterniond::FromTwoVectors(u1, Vec(-w)).toRotationMatrix();
      best = std::min(best, mappedHausdorff(r2, prefix, count, target, best));
      if (best <= stopBelow) return best;
    }
    return best;
  }

  const Vec p2 = prefix[static_cast<size_t>(i2)];
  const Vec e2 = (p2 - p2.dot(u1) * u1).normalized();
  const Vec e3 = u1.cross(e2);
  Mat frameSrcT;
  frameSrcT.row(0) = u1; frameSrcT.row(1) = e2; frameSrcT.row(2) = e3;

  std::vector<int> order2(target.nonzero.size());
  std::iota(order2.begin(), order2.end(), 0);
  std::stable_sort(order2.begin(), order2.end(), [&](int x, int y) {
    return std::abs(target.nonzero[static_cast<size_t>(x)].norm() - p2.norm()) <
           std::abs(target.nonzero[static_cast<size_t>(y)].norm() - p2.norm());
  });

  const double p2axis = p2.dot(u1);
  const double p2sq = p2.squaredNorm();
  for (int j1 : order) {
    const Vec q1 = target.nonzero[static_cast<size_t>(j1)];
    if (std::abs(q1.norm() - p1.norm()) > best + 1e-13) break;
    const Vec w1 = q1.normalized();
    for (int j2 : order2) {
      const Vec q2 = target.nonzero[static_cast<size_t>(j2)];
      // Screens: a map built from the witness pair of any alignment better
      // than `best` keeps the anchor images within `best` of q1, q2 (the
      // rejected-witness case already implies best < eta * optimum).
      if (std::abs(q2.norm() - p2.norm()) > best + 1e-13) break;
      const double q2axis = q2.dot(w1);
      const Vec q2perp = q2 - q2axis * w1;
      const double q2perpNorm = q2perp.norm();
      if (q2perpNorm < 1e-14) continue;
      // |f(p2) - q2|^2 for the two rotation sides, known before building f.
      const double common = p2sq + q2.squaredNorm() - 2.0 * p2axis * q2axis;
      const double crossTerm = 2.0 * perp2 * q2perpNorm;
      const double bestSq = (best + 1e-13) * (best + 1e-13);
      const bool sideOk[2] = {common - crossTerm <= bestSq, common + crossTerm <= bestSq};
      if (!sideOk[0] && !sideOk[1]) continue;
      const Vec f2 = q2perp / q2perpNorm;
      for (int side = 0; side < 2; ++side) {
        if (!sideOk[side]) continue;
        const Vec g2 = side == 0 ? f2 : Vec(-f2);
        const Vec g3 = w1.cross(g2);
        Mat frameDst;
        frameDst.col(0) = w1; frameDst.col(1) = g2; frameDst.col(2) = g3;
        best = std::min(best, mappedHausdorff(frameDst * frameSrcT, prefix, count, target, best));
        if (best <= stopBelow) return best;
        frameDst.col(2) = -g3;
        best = std::min(best, mappedHausdorff(frameDst * frameSrcT, prefix, count, target, best));
        if (best <= stopBelow) return best;
      }
    }
  }
  return best;
}

// Directed max-min value d_M(C -> D).
double maxMinValue(const Cluster& c, const Target& target, double alpha) {
  const std::vector<Vec>& pts = c.points;
  if (pts.empty()) throw EmptyInput("empty cluster");
  if (alpha < pts.back().norm() - kGeomTol) {
    throw InvalidRadius("max-min radius below the cluster's outermost point");
  }
  double result = 0.0;
  double normBound = 0.0;  // lower bound for d_R of the current prefix
  for (size_t i = 0; i < pts.size(); ++i) {
    const double slack = std::max(alpha - pts[i].norm(), 0.0);
    if (slack <= result + 1e-15) break;  // later terms cannot exceed result
    normBound = std::max(normBound, target.normGap(pts[i].norm()));
    double term;
    if (normBound >= slack) {
      term = slack;
    } else {
      const double stop = std::max(result, normBound) + 1e-13;
      const double b = directedRotApprox(pts, i + 1, target, slack, stop);
      term = std::min(slack, b);
    }
    result = std::max(result, term);
  }
  return result;
}

Weight rationalize(double x, long long maxDen = 1000000) {
  if (x < -1e-12) throw InvalidDistribution("negative weight");
  if (x < 0) x = 0;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int iter = 0; iter < 40; ++iter) {
    const long long a = static_cast<long long>(std::floor(frac));
    long long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > maxDen) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) < 1e-13) break;
    const double rem = frac - static_cast<double>(a);
    if (rem < 1e-13) break;
    frac = 1.0 / rem;
  }
  if (q1 <= 0 || std::abs(x - static_cast<double>(p1) / static_cast<double>(q1)) > 1e-9) {
    throw InvalidDistribution("weight is not a small rational");
  }
  return {p1, q1};
}

long long lcmChecked(long long a, long long b) {
  const long long g = std::gcd(a, b);
  const long long l = a / g * b;
  if (l <= 0 || l > (1LL << 50)) {
    throw InvalidDistribution("weight denominators too large");
  }
  return l;
}

}  // namespace

double approximationFactor(int dim, double delta) {
  return 0.5 * (dim * dim - dim + 2) * (1.0 + delta);
}

double directedHausdorff(const std::vector<Vec>& c, const std::vector<Vec>& d, int dim) {
  if (c.empty() || d.empty()) throw EmptyInput("directedHausdorff needs nonempty sets");
  KdTree tree(d, dim);
  double worst = 0.0;
  for (const Vec& p : c) worst = std::max(worst, tree.nearestDistance(p));
  return worst;
}

ApproxValue rotationInvariantDistance(const Cluster& c, const Cluster& d, double delta) {
  if (c.dim != d.dim) throw DimensionMismatch("cluster dimensions differ");
  if (c.points.empty() || d.points.empty()) throw EmptyInput("empty cluster");
  const Target tc(c), td(d);
  const double ab = directedRotApprox(c.points, c.points.size(), td, kInf, 1e-15);
  const double ba = directedRotApprox(d.points, d.points.size(), tc, kInf, 1e-15);
  return {std::max(ab, ba), approximationFactor(c.dim, delta)};
}

double directedRotationDistance(const Cluster& c, const Cluster& d) {
  if (c.dim != d.dim) throw DimensionMismatch("cluster dimensions differ");
  if (c.points.empty() || d.points.empty()) throw EmptyInput("empty cluster");
  const Target td(d);
  return directedRotApprox(c.points, c.points.size(), td, kInf, 1e-15);
}

ApproxValue maxMinDirectedDistance(const Cluster& c, const Cluster& d, double alpha,
                                   double delta) {
  if (c.dim != d.dim) throw DimensionMismatch("cluster dimensions differ");
  const Target td(d);
  return {maxMinValue(c, td, alpha), approximationFactor(c.dim, delta)};
}

ApproxValue clusterDistance(const IsometryClass& a, const IsometryClass& b, double delta) {
  const Cluster& ca = a.representative;
  const Cluster& cb = b.representative;
  if (ca.dim != cb.dim) throw DimensionMismatch("cluster dimensions differ");
  if (std::abs(ca.radius - cb.radius) > kGeomTol) {
    throw RadiusMismatch("isometry classes at different radii");
  }
  const double alpha = std::max(ca.radius, cb.radius);
  const Target ta(ca), tb(cb);
  const double ab = maxMinValue(ca, tb, alpha);
  const double ba = maxMinValue(cb, ta, alpha);
  return {std::max(ab, ba), approximationFactor(ca.dim, delta)};
}

FlowPlan emd(const std::vector<Weight>& source, const std::vector<Weight>& sink,
             const std::vector<std::vector<double>>& cost) {
  const int m = static_cast<int>(source.size());
  const int n = static_cast<int>(sink.size());
  if (m == 0 || n == 0) throw InvalidDistribution("empty distribution");
  if (static_cast<int>(cost.size()) != m) throw SizeMismatch("cost matrix shape");
  for (const auto& row : cost) {
    if (static_cast<int>(row.size()) != n) throw SizeMismatch("cost matrix shape");
    for (double cval : row) {
      if (cval < 0.0) throw InvalidDistribution("negative cost");
    }
  }

  long long scale = 1;
  for (const Weight& w : source) {
    if (w.num < 0 || w.den <= 0) throw InvalidDistribution("invalid weight");
    scale = lcmChecked(scale, w.den);
  }
  for (const Weight& w : sink) {
    if (w.num < 0 || w.den <= 0) throw InvalidDistribution("invalid weight");
    scale = lcmChecked(scale, w.den);
  }
  std::vector<long long> supply(static_cast<size_t>(m)), demand(static_cast<size_t>(n));
  long long sumS = 0, sumD = 0;
  for (int i = 0; i < m; ++i) {
    supply[static_cast<size_t>(i)] = source[static_cast<size_t>(i)].num *
                                     (scale / source[static_cast<size_t>(i)].den);
    sumS += supply[static_cast<size_t>(i)];
  }
  for (int j = 0; j < n; ++j) {
    demand[static_cast<size_t>(j)] = sink[static_cast<size_t>(j)].num *
                                     (scale / sink[static_cast<size_t>(j)].den);
    sumD += demand[static_cast<size_t>(j)];
  }
  if (sumS != scale || sumD != scale) {
    throw InvalidDistribution("weights must sum to 1 on both sides");
  }

  // Successive shortest paths with potentials on the bipartite network.
  // Nodes: 0 = super source, 1..m sources, m+1..m+n sinks, m+n+1 = super sink.
  const int nodes = m + n + 2;
  const int src = 0, dst = m + n + 1;
  struct Edge { int to; long long cap; double cost; int rev; };
  std::vector<std::vector<Edge>> graph(static_cast<size_t>(nodes));
  auto addEdge = [&](int from, int to, long long cap, double c) {
    graph[static_cast<size_t>(from)].push_back({to, cap, c, static_cast<int>(graph[static_cast<size_t>(to)].size())});
    graph[static_cast<size_t>(to)].push_back({from, 0, -c, static_cast<int>(graph[static_cast<size_t>(from)].size()) - 1});
  };
  for (int i = 0; i < m; ++i) addEdge(src, 1 + i, supply[static_cast<size_t>(i)], 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      addEdge(1 + i, 1 + m + j, scale, cost[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    }
  }
  for (int j = 0; j < n; ++j) addEdge(1 + m + j, dst, demand[static_cast<size_t>(j)], 0.0);

  std::vector<double> potential(static_cast<size_t>(nodes), 0.0);
  long long remaining = scale;
  while (remaining > 0) {
    std::vector<double> dist(static_cast<size_t>(nodes), kInf);
    std::vector<int> prevNode(static_cast<size_t>(nodes), -1);
    std::vector<int> prevEdge(static_cast<size_t>(nodes), -1);
    std::vector<char> done(static_cast<size_t>(nodes), 0);
    dist[src] = 0.0;
    for (int iter = 0; iter < nodes; ++iter) {
      int u = -1;
      for (int v = 0; v < nodes; ++v) {
        if (!done[static_cast<size_t>(v)] && dist[static_cast<size_t>(v)] < kInf &&
            (u < 0 || dist[static_cast<size_t>(v)] < dist[static_cast<size_t>(u)])) {
          u = v;
        }
      }
      if (u < 0) break;
      done[static_cast<size_t>(u)] = 1;
      for (size_t e = 0; e < graph[static_cast<size_t>(u)].size(); ++e) {
        const Edge& edge = graph[static_cast<size_t>(u)][e];
        if (edge.cap <= 0) continue;
        const double nd = dist[static_cast<size_t>(u)] + edge.cost +
                          potential[static_cast<size_t>(u)] - potential[static_cast<size_t>(edge.to)];
        if (nd < dist[static_cast<size_t>(edge.to)] - 1e-15) {
          dist[static_cast<size_t>(edge.to)] = nd;
          prevNode[static_cast<size_t>(edge.to)] = u;
          prevEdge[static_cast<size_t>(edge.to)] = static_cast<int>(e);
        }
      }
    }
    if (dist[static_cast<size_t>(dst)] >= kInf) {
      throw Error("transportation network disconnected (internal error)");
    }
    for (int v = 0; v < nodes; ++v) {
      if (dist[static_cast<size_t>(v)] < kInf) potential[static_cast<size_t>(v)] += dist[static_cast<size_t>(v)];
    }
    long long push = remaining;
    for (int v = dst; v != src; v = prevNode[static_cast<size_t>(v)]) {
      push = std::min(push, graph[static_cast<size_t>(prevNode[static_cast<size_t>(v)])]
                                [static_cast<size_t>(prevEdge[static_cast<size_t>(v)])].cap);
    }
    for (int v = dst; v != src; v = prevNode[static_cast<size_t>(v)]) {
      Edge& e = graph[static_cast<size_t>(prevNode[static_cast<size_t>(v)])]
                     [static_cast<size_t>(prevEdge[static_cast<size_t>(v)])];
      e.cap -= push;
      graph[static_cast<size_t>(v)][static_cast<size_t>(e.rev)].cap += push;
    }
    remaining -= push;
  }

  FlowPlan plan;
  for (int i = 0; i < m; ++i) {
    for (size_t e = 0; e < graph[static_cast<size_t>(1 + i)].size(); ++e) {
      const Edge& edge = graph[static_cast<size_t>(1 + i)][e];
      if (edge.to < 1 + m || edge.to >= 1 + m + n) continue;
      const long long sent = scale - edge.cap;
      if (sent <= 0) continue;
      const int j = edge.to - 1 - m;
      FlowEntry entry;
      entry.i = i;
      entry.j = j;
      entry.flow = static_cast<double>(sent) / static_cast<double>(scale);
      entry.cost = entry.flow * cost[static_cast<size_t>(i)][static_cast<size_t>(j)];
      plan.entries.push_back(entry);
      plan.cost += entry.cost;
    }
  }
  std::sort(plan.entries.begin(), plan.entries.end(), [](const FlowEntry& a, const FlowEntry& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  return plan;
}

FlowPlan emd(const std::vector<double>& source, const std::vector<double>& sink,
             const std::vector<std::vector<double>>& cost) {
  auto check = [](const std::vector<double>& w) {
    double sum = 0.0;
    for (double x : w) sum += x;
    if (std::abs(sum - 1.0) > 1e-9) {
      throw InvalidDistribution("weights must sum to 1");
    }
  };
  check(source);
  check(sink);
  std::vector<Weight> ws, wd;
  for (double x : source) ws.push_back(rationalize(x));
  for (double x : sink) wd.push_back(rationalize(x));
  return emd(ws, wd, cost);
}

std::string flowPlanToJson(const FlowPlan& plan) {
  nlohmann::json j;
  j["cost"] = plan.cost;
  j["flows"] = nlohmann::json::array();
  for (const FlowEntry& e : plan.entries) {
    j["flows"].push_back({{"i", e.i}, {"j", e.j}, {"flow", e.flow}, {"cost", e.cost}});
  }
  return j.dump(2);
}

ApproxValue isosetDistanceAtRadius(const PeriodicSet& s, const PeriodicSet& q,
                                   double alpha, double delta) {
  if (s.dim() != q.dim()) throw DimensionMismatch("periodic sets of different dimension");
  const Isoset a = buildIsoset(s, alpha);
  const Isoset b = buildIsoset(q, alpha);
  const int m = static_cast<int>(a.classes.size());
  const int n = static_cast<int>(b.classes.size());
  std::vector<std::vector<double>> cost(static_cast<size_t>(m),
                                        std::vector<double>(static_cast<size_t>(n), 0.0));
  detail::parallelFor(m * n, [&](int idx) {
    const int i = idx / n;
    const int j = idx % n;
    cost[static_cast<size_t>(i)][static_cast<size_t>(j)] =
        clusterDistance(a.classes[static_cast<size_t>(i)], b.classes[static_cast<size_t>(j)], delta).value;
  });
  std::vector<Weight> ws, wd;
  for (const IsometryClass& cls : a.classes) ws.push_back({cls.weightNum, cls.weightDen});
  for (const IsometryClass& cls : b.classes) wd.push_back({cls.weightNum, cls.weightDen});
  const FlowPlan plan = emd(ws, wd, cost);
  return {plan.cost, approximationFactor(s.dim(), delta)};
}

ApproxValue isosetDistance(const PeriodicSet& s, const PeriodicSet& q, double delta) {
  if (s.dim() != q.dim()) throw DimensionMismatch("periodic sets of different dimension");
  const double alpha = std::max(stableRadiusUpperBound(s), stableRadiusUpperBound(q));
  return isosetDistanceAtRadius(s, q, alpha, delta);
}

ApproxValue scaledInvariantDistance(const PeriodicSet& s, const PeriodicSet& q, double delta) {
  if (s.dim() != q.dim()) throw DimensionMismatch("periodic sets of different dimension");
  const double ds = 2.0 * cellGeometry(s).diameter;
  const double dq = 2.0 * cellGeometry(q).diameter;
  auto rescaled = [](const PeriodicSet& set, double factor) {
    Mat basis = set.lattice().basis();
    const int n = set.dim();
    basis.topLeftCorner(n, n) /= factor;
    return PeriodicSet(Lattice(n, basis), set.motif());
  };
  const ApproxValue inner = isosetDistanceAtRadius(rescaled(s, ds), rescaled(q, dq), 1.0, delta);
  return {std::abs(ds - dq) + inner.value, inner.factor};
}

double bottleneckDistanceFinite(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  if (a.size() != b.size()) throw SizeMismatch("bottleneck distance needs equal sizes");
  if (a.empty()) return 0.0;
  const size_t k = a.size();
  std::vector<double> candidates;
  candidates.reserve(k * k);
  for (const Vec& p : a) {
    for (const Vec& q : b) candidates.push_back((p - q).norm());
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  auto feasible = [&](double t) {
    std::vector<std::vector<int>> adj(k);
    for (size_t i = 0; i < k; ++i) {
      for (size_t j = 0; j < k; ++j) {
        if ((a[i] - b[j]).norm() <= t + 1e-12) adj[i].push_back(static_cast<int>(j));
      }
    }
    std::vector<int> owner(k, -1);
    std::vector<char> visited(k, 0);
    std::function<bool(int)> augment = [&](int i) -> bool {
      for (int j : adj[static_cast<size_t>(i)]) {
        if (visited[static_cast<size_t>(j)]) continue;
        visited[static_cast<size_t>(j)] = 1;
        if (owner[static_cast<size_t>(j)] < 0 || augment(owner[static_cast<size_t>(j)])) {
          owner[static_cast<size_t>(j)] = static_cast<int>(i);
          return true;
        }
      }
      return false;
    };
    for (size_t i = 0; i < k; ++i) {
      std::fill(visited.begin(), visited.end(), 0);
      if (!augment(static_cast<int>(i))) return false;
    }
    return true;
  };

  size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const size_t mid = (lo + hi) / 2;
    if (feasible(candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

}  // namespace isoset

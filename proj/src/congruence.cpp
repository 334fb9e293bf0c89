#include "isoset/congruence.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>

namespace isoset {

namespace {

// Nonzero points of a cluster together with their norms (ascending).
struct PointSet {
  std::vector<Vec> pts;
  std::vector<double> norms;
  int dim = 0;

  explicit PointSet(const Cluster& c) : dim(c.dim) {
    for (const Vec& p : c.points) {
      if (p.norm() > 0.0) pts.push_back(p);
    }
    norms.resize(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) norms[i] = pts[i].norm();
  }

  // Indices of points whose norm lies within tol of value.
  void shell(double value, double tol, std::vector<int>& out) const {
    out.clear();
    auto lo = std::lower_bound(norms.begin(), norms.end(), value - tol);
    auto hi = std::upper_bound(norms.begin(), norms.end(), value + tol);
    for (auto it = lo; it != hi; ++it) {
      out.push_back(static_cast<int>(it - norms.begin()));
    }
  }
};

// Bijective matching of A*src onto dst within tol.  Greedy nearest first;
// on a greedy dead end fall back to augmenting-path matching over the
// tolerance graph.
bool verifyMap(const Mat& a, const PointSet& src, const PointSet& dst, double tol) {
  const size_t k = src.pts.size();
  if (k != dst.pts.size()) return false;
  std::vector<int> match(k, -1);
  std::vector<char> used(k, 0);
  std::vector<int> shellIdx;
  bool greedyOk = true;
  std::vector<Vec> images(k);
  for (size_t i = 0; i < k; ++i) images[i] = a * src.pts[i];
  for (size_t i = 0; i < k && greedyOk; ++i) {
    dst.shell(src.norms[i], tol, shellIdx);
    int best = -1;
    double bestDist = tol;
    for (int j : shellIdx) {
      if (used[static_cast<size_t>(j)]) continue;
      const double dist = (images[i] - dst.pts[static_cast<size_t>(j)]).norm();
      if (dist <= bestDist) {
        bestDist = dist;
        best = j;
      }
    }
    if (best < 0) {
      greedyOk = false;
    } else {
      match[i] = best;
      used[static_cast<size_t>(best)] = 1;
    }
  }
  if (greedyOk) return true;

  // Kuhn's augmenting paths on the full adjacency.
  std::vector<std::vector<int>> adj(k);
  for (size_t i = 0; i < k; ++i) {
    dst.shell(src.norms[i], tol, shellIdx);
    for (int j : shellIdx) {
      if ((images[i] - dst.pts[static_cast<size_t>(j)]).norm() <= tol) {
        adj[i].push_back(j);
      }
    }
    if (adj[i].empty()) return false;
  }
  std::vector<int> owner(k, -1);
  std::vector<char> visited(k, 0);
  std::function<bool(int)> augment = [&](int i) -> bool {
    for (int j : adj[static_cast<size_t>(i)]) {
      if (visited[static_cast<size_t>(j)]) continue;
      visited[static_cast<size_t>(j)] = 1;
      if (owner[static_cast<size_t>(j)] < 0 || augment(owner[static_cast<size_t>(j)])) {
        owner[static_cast<size_t>(j)] = i;
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
}

Mat rotation2(const Vec& from, const Vec& to) {
  // from, to unit vectors in the xy-plane.
  const double c = from[0] * to[0] + from[1] * to[1];
  const double s = from[0] * to[1] - from[1] * to[0];
  Mat m = Mat::Identity();
  m(0, 0) = c; m(0, 1) = -s;
  m(1, 0) = s; m(1, 1) = c;
  return m;
}

Mat reflection2(const Vec& from, const Vec& to) {
  // Reflection across the bisector of from and to, so that from maps to to.
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

Mat rotationAligning3(const Vec& from, const Vec& to) {
  Eigen::Quaterniond q = Eigen::Quaterniond::FromTwoVectors(from, to);
  return q.toRotationMatrix();
}

// Anchors of a point set: extremal point p1 (max norm, deterministic
// tie-break) and p2 with maximum perpendicular distance to span(p1).
struct Anchors {
  int p1 = -1;
  int p2 = -1;
  double perp2 = 0.0;  // perpendicular distance of p2 from the p1 line
};

Anchors findAnchors(const PointSet& ps) {
  Anchors a;
  double best = -1.0;
  for (size_t i = 0; i < ps.pts.size(); ++i) {
    if (ps.norms[i] > best + 1e-15) {
      best = ps.norms[i];
      a.p1 = static_cast<int>(i);
    }
  }
  if (a.p1 < 0) return a;
  const Vec u = ps.pts[static_cast<size_t>(a.p1)].normalized();
  double bestPerp = -1.0;
  for (size_t i = 0; i < ps.pts.size(); ++i) {
    const Vec& p = ps.pts[i];
    const double perp = (p - (p.dot(u)) * u).norm();
    if (perp > bestPerp + 1e-15) {
      bestPerp = perp;
      a.p2 = static_cast<int>(i);
    }
  }
  a.perp2 = std::max(bestPerp, 0.0);
  return a;
}

// Enumerate candidate orthogonal maps taking src onto dst and call visit on
// every verified one.  visit returns false to stop after the first hit.
void enumerateIsometries(const PointSet& src, const PointSet& dst, double tol,
                         const std::function<bool(const OrthogonalMap&)>& visit) {
  const int n = src.dim;
  auto tryMap = [&](const Mat& m, bool reflection) -> bool {
    if (!verifyMap(m, src, dst, tol)) return true;  // keep enumerating
    return visit({m, reflection});
  };

  if (src.pts.empty()) {
    // Single-point clusters: any map works.  In 1D the full group O(R^1)
    // is just {+1, -1}; higher dimensions are handled by the continuous
    // sentinel before reaching this point.
    if (!tryMap(Mat::Identity(), false)) return;
    if (n == 1) {
      Mat neg = Mat::Identity();
      neg(0, 0) = -1.0;
      tryMap(neg, true);
    }
    return;
  }

  if (n == 1) {
    Mat neg = Mat::Identity();
    neg(0, 0) = -1.0;
    if (!tryMap(Mat::Identity(), false)) return;
    tryMap(neg, true);
    return;
  }

  const Anchors anchors = findAnchors(src);
  const Vec p1 = src.pts[static_cast<size_t>(anchors.p1)];
  const Vec u1 = p1.normalized();
  std::vector<int> shell1;
  dst.shell(p1.norm(), tol, shell1);

  if (n == 2) {
    for (int j : shell1) {
      const Vec w = dst.pts[static_cast<size_t>(j)].normalized();
      if (!tryMap(rotation2(u1, w), false)) return;
      if (!tryMap(reflection2(u1, w), true)) return;
    }
    return;
  }

  // n == 3
  const double rankTol = 10.0 * tol;
  if (anchors.perp2 <= rankTol) {
    // Collinear cluster: align the axis both ways; rotations about the axis
    // act trivially on the line.
    for (int j : shell1) {
      const Vec w = dst.pts[static_cast<size_t>(j)].normalized();
      if (!tryMap(rotationAligning3(u1, w), false)) return;
      if (!tryMap(rotationAligning3(u1, -w), false)) return;
    }
    return;
  }

  const Vec p2 = src.pts[static_cast<size_t>(anchors.p2)];
  const Vec e2 = (p2 - p2.dot(u1) * u1).normalized();
  const Vec e3 = u1.cross(e2);
  Mat frameSrcT;
  frameSrcT.row(0) = u1; frameSrcT.row(1) = e2; frameSrcT.row(2) = e3;

  const double dotTol = 2.0 * tol * (p1.norm() + p2.norm()) + tol * tol;
  std::vector<int> shell2;
  dst.shell(p2.norm(), tol, shell2);
  for (int j1 : shell1) {
    const Vec q1 = dst.pts[static_cast<size_t>(j1)];
    const Vec w1 = q1.normalized();
    for (int j2 : shell2) {
      const Vec q2 = dst.pts[static_cast<size_t>(j2)];
      if (std::abs(q1.dot(q2) - p1.dot(p2)) > dotTol) continue;
      const Vec q2perp = q2 - q2.dot(w1) * w1;
      if (std::abs(q2perp.norm() - anchors.perp2) > 4.0 * tol) continue;
      if (q2perp.norm() < 1e-14) continue;
      const Vec f2 = q2perp.normalized();
      const Vec f3 = w1.cross(f2);
      Mat frameDst;
      frameDst.col(0) = w1; frameDst.col(1) = f2; frameDst.col(2) = f3;
      if (!tryMap(frameDst * frameSrcT, false)) return;
      frameDst.col(2) = -f3;
      if (!tryMap(frameDst * frameSrcT, true)) return;
    }
  }
}

bool quickReject(const Cluster& c, const Cluster& d, double tol) {
  if (c.points.size() != d.points.size()) return true;
  // Matched sets have entrywise-close sorted norms; reject early otherwise.
  for (size_t i = 0; i < c.points.size(); ++i) {
    if (std::abs(c.points[i].norm() - d.points[i].norm()) > tol) return true;
  }
  return false;
}

double resolveTol(const Cluster& c, double tol) {
  return tol > 0.0 ? tol : defaultIsometryTol(c.radius);
}

}  // namespace

double defaultIsometryTol(double radius) {
  return std::max(1e-6 * radius, 1e-12);
}

std::optional<OrthogonalMap> clusterIsometry(const Cluster& c, const Cluster& d,
                                             double tol) {
  if (c.dim != d.dim) throw DimensionMismatch("cluster dimensions differ");
  const double eps = resolveTol(c, tol);
  if (quickReject(c, d, eps)) return std::nullopt;
  const PointSet src(c), dst(d);
  std::optional<OrthogonalMap> found;
  enumerateIsometries(src, dst, eps, [&](const OrthogonalMap& m) {
    found = m;
    return false;  // stop at the first verified map
  });
  return found;
}

bool symmetryGroupsEqual(const SymmetryGroup& a, const SymmetryGroup& b) {
  if (a.continuous != b.continuous) return false;
  if (!a.continuous) return a.elements.size() == b.elements.size();
  if (a.spanRank != b.spanRank) return false;
  if (a.spanRank == 0) return true;  // full O(R^n) on both sides
  // Rank-1 continuous groups: same axis (up to sign) and the same mirror flag.
  const double align = std::abs(a.axis.dot(b.axis));
  return align > 1.0 - 1e-9 && a.mirrorSymmetric == b.mirrorSymmetric;
}

SymmetryGroup symmetryGroupOfCluster(const Cluster& c, double tol) {
  const double eps = resolveTol(c, tol);
  SymmetryGroup group;
  const PointSet ps(c);

  // Affine rank of the cluster span.
  if (ps.pts.empty()) {
    group.spanRank = 0;
  } else {
    const Anchors anchors = findAnchors(ps);
    if (c.dim >= 2 && anchors.perp2 > 10.0 * eps) {
      group.spanRank = 2;
      if (c.dim == 3) {
        const Vec u1 = ps.pts[static_cast<size_t>(anchors.p1)].normalized();
        const Vec p2 = ps.pts[static_cast<size_t>(anchors.p2)];
        const Vec e3 = u1.cross((p2 - p2.dot(u1) * u1).normalized());
        for (const Vec& p : ps.pts) {
          if (std::abs(p.dot(e3)) > 10.0 * eps) {
            group.spanRank = 3;
            break;
          }
        }
      }
    } else {
      group.spanRank = 1;
    }
  }

  if (c.dim >= 2 && group.spanRank == 0) {
    group.continuous = true;
    return group;
  }
  if (c.dim == 3 && group.spanRank == 1) {
    group.continuous = true;
    group.axis = ps.pts.back().normalized();
    if (group.axis[0] < 0 ||
        (group.axis[0] == 0 && (group.axis[1] < 0 ||
                                (group.axis[1] == 0 && group.axis[2] < 0)))) {
      group.axis = -group.axis;
    }
    Mat neg = -Mat::Identity();
    group.mirrorSymmetric = verifyMap(neg, ps, ps, eps);
    return group;
  }

  enumerateIsometries(ps, ps, eps, [&](const OrthogonalMap& m) {
    for (const OrthogonalMap& e : group.elements) {
      if ((e.matrix - m.matrix).cwiseAbs().maxCoeff() < 1e-7) return true;
    }
    group.elements.push_back(m);
    return true;  // collect all
  });
  return group;
}

SymmetryGroup symmetryGroup(const PeriodicSet& set, int motifIndex, double radius,
                            double tol) {
  return symmetryGroupOfCluster(alphaCluster(set, motifIndex, radius), tol);
}

std::vector<std::vector<int>> alphaPartition(const PeriodicSet& set, double radius,
                                             double tol) {
  const int m = set.motifSize();
  std::vector<Cluster> clusters;
  clusters.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) clusters.push_back(alphaCluster(set, i, radius));
  const double eps = tol > 0.0 ? tol : defaultIsometryTol(radius);

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
                          clusters[static_cast<size_t>(j)], eps)) {
        cls[static_cast<size_t>(j)] = id;
        classes[static_cast<size_t>(id)].push_back(j);
      }
    }
  }
  return classes;
}

Isoset buildIsoset(const PeriodicSet& set, double radius, double tol) {
  Isoset iso;
  iso.radius = radius;
  const auto classes = alphaPartition(set, radius, tol);
  const long long m = set.motifSize();
  for (const auto& members : classes) {
    IsometryClass cls;
    cls.representative = alphaCluster(set, members.front(), radius);
    cls.weightNum = static_cast<long long>(members.size());
    cls.weightDen = m;
    cls.memberIndices = members;
    iso.classes.push_back(std::move(cls));
  }
  // Canonical ordering: by cluster cardinality, then lexicographic points.
  std::sort(iso.classes.begin(), iso.classes.end(),
            [](const IsometryClass& a, const IsometryClass& b) {
              const auto& pa = a.representative.points;
              const auto& pb = b.representative.points;
              if (pa.size() != pb.size()) return pa.size() < pb.size();
              for (size_t i = 0; i < pa.size(); ++i) {
                for (int c = 0; c < 3; ++c) {
                  if (pa[i][c] != pb[i][c]) return pa[i][c] < pb[i][c];
                }
              }
              return a.memberIndices < b.memberIndices;
            });
  return iso;
}

bool isometric(const PeriodicSet& s, const PeriodicSet& q, double tol) {
  if (s.dim() != q.dim()) throw DimensionMismatch("periodic sets of different dimension");
  const double alpha = std::max(stableRadiusUpperBound(s), stableRadiusUpperBound(q));
  const Isoset a = buildIsoset(s, alpha, tol);
  const Isoset b = buildIsoset(q, alpha, tol);
  if (a.classes.size() != b.classes.size()) return false;
  const double eps = tol > 0.0 ? tol : defaultIsometryTol(alpha);
  std::vector<char> used(b.classes.size(), 0);
  for (const IsometryClass& ca : a.classes) {
    bool matched = false;
    for (size_t j = 0; j < b.classes.size(); ++j) {
      if (used[j]) continue;
      const IsometryClass& cb = b.classes[j];
      if (ca.weightNum * cb.weightDen != cb.weightNum * ca.weightDen) continue;
      if (clusterIsometry(ca.representative, cb.representative, eps)) {
        used[j] = 1;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

std::string isosetToJson(const Isoset& iso) {
  nlohmann::json j;
  j["radius"] = iso.radius;
  j["classes"] = nlohmann::json::array();
  for (const IsometryClass& cls : iso.classes) {
    nlohmann::json c;
    c["weight"] = {{"num", cls.weightNum}, {"den", cls.weightDen}};
    c["members"] = cls.memberIndices;
    nlohmann::json pts = nlohmann::json::array();
    for (const Vec& p : cls.representative.points) {
      nlohmann::json row = nlohmann::json::array();
      for (int c2 = 0; c2 < cls.representative.dim; ++c2) row.push_back(p[c2]);
      pts.push_back(row);
    }
    c["representative"] = pts;
    j["classes"].push_back(c);
  }
  return j.dump(2);
}

}  // namespace isoset

#include "isoset/pdd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "isoset/metrics.hpp"

namespace isoset {

namespace {

constexpr double kRowCollapseTol = 1e-9;

std::vector<double> neighborDistances(const PeriodicSet& set, int motifIndex, int k) {
  const CellGeometry geom = cellGeometry(set);
  const Vec p = set.motifCartesian(motifIndex);
  // Expected-count radius plus one cell diameter, then doubled until the
  // ball holds the center and at least k neighbors.
  double radius = std::pow(static_cast<double>(k) * geom.volume /
                               (set.motifSize() * geom.unitBallVolume),
                           1.0 / geom.dim) +
                  geom.diameter;
  std::vector<Vec> pts;
  for (int guard = 0; guard < 64; ++guard) {
    pts = pointsInBall(set, p, radius);
    if (static_cast<int>(pts.size()) >= k + 1) break;
    radius *= 2.0;
  }
  std::vector<double> dists;
  dists.reserve(static_cast<size_t>(k));
  // pts is sorted by distance; the first entry is the center itself.
  for (size_t i = 1; i < pts.size() && static_cast<int>(dists.size()) < k; ++i) {
    dists.push_back((pts[i] - p).norm());
  }
  return dists;
}

bool rowsClose(const std::vector<double>& a, const std::vector<double>& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > kRowCollapseTol) return false;
  }
  return true;
}

double rowLinf(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

PDDMatrix pdd(const PeriodicSet& set, int k) {
  if (k < 1) throw InvalidRadius("neighbor count must be at least 1");
  const int m = set.motifSize();
  std::vector<std::vector<double>> raw;
  raw.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) raw.push_back(neighborDistances(set, i, k));
  std::sort(raw.begin(), raw.end());

  PDDMatrix out;
  out.k = k;
  out.motifSize = m;
  for (auto& row : raw) {
    if (!out.rows.empty() && rowsClose(out.rows.back().distances, row)) {
      out.rows.back().count += 1;
    } else {
      out.rows.push_back({1, std::move(row)});
    }
  }
  return out;
}

std::vector<double> amd(const PeriodicSet& set, int k) {
  const PDDMatrix p = pdd(set, k);
  std::vector<double> avg(static_cast<size_t>(k), 0.0);
  for (size_t r = 0; r < p.rows.size(); ++r) {
    const double w = p.weight(r);
    for (int c = 0; c < k; ++c) {
      avg[static_cast<size_t>(c)] += w * p.rows[r].distances[static_cast<size_t>(c)];
    }
  }
  return avg;
}

double pddDistance(const PDDMatrix& p, const PDDMatrix& q) {
  if (p.k != q.k) throw NeighborCountMismatch("PDD neighbor counts differ");
  std::vector<std::vector<double>> cost(p.rows.size(), std::vector<double>(q.rows.size(), 0.0));
  for (size_t i = 0; i < p.rows.size(); ++i) {
    for (size_t j = 0; j < q.rows.size(); ++j) {
      cost[i][j] = rowLinf(p.rows[i].distances, q.rows[j].distances);
    }
  }
  std::vector<Weight> ws, wd;
  for (const PDDRow& row : p.rows) ws.push_back({row.count, p.motifSize});
  for (const PDDRow& row : q.rows) wd.push_back({row.count, q.motifSize});
  return emd(ws, wd, cost).cost;
}

std::string pddToCsv(const PDDMatrix& p) {
  std::string out;
  char buf[64];
  for (size_t r = 0; r < p.rows.size(); ++r) {
    std::snprintf(buf, sizeof buf, "%.17g", p.weight(r));
    out += buf;
    for (double d : p.rows[r].distances) {
      std::snprintf(buf, sizeof buf, ",%.17g", d);
      out += buf;
    }
    out += "\r\n";
  }
  return out;
}

LowerBoundReport checkLowerBound(const PeriodicSet& s, const PeriodicSet& q,
                                 double delta, double alphaOverride) {
  LowerBoundReport report;
  const double alpha =
      alphaOverride > 0.0
          ? alphaOverride
          : std::max(stableRadiusUpperBound(s), stableRadiusUpperBound(q));
  report.alpha = alpha;
  const ApproxValue iso = isosetDistanceAtRadius(s, q, alpha, delta);
  report.emdIsoset = iso.value;
  report.factor = iso.factor;

  const double halfMin = 0.5 * std::min(minInterpointDistance(s), minInterpointDistance(q));
  if (iso.value >= halfMin) {
    report.note = "not applicable: isoset distance reaches half the minimum inter-point distance";
    return report;
  }
  report.applicable = true;

  // Neighbor counts inside the (alpha - eps)-clusters, using the upper end
  // of the approximation envelope for eps (soundly shrinking the clusters).
  const double rho = alpha - iso.value;
  int kMin = -1, kMax = -1;
  for (const PeriodicSet* set : {&s, &q}) {
    for (int i = 0; i < set->motifSize(); ++i) {
      const int neighbors =
          static_cast<int>(pointsInBall(*set, set->motifCartesian(i), rho).size()) - 1;
      if (kMin < 0 || neighbors < kMin) kMin = neighbors;
      if (kMax < 0 || neighbors > kMax) kMax = neighbors;
    }
  }
  report.kMin = kMin;
  report.kMax = kMax;
  report.k = kMin;
  report.note = "evaluated at kMin, the count the bound is provable at; kMax reported alongside";
  if (kMin < 1) {
    report.applicable = false;
    report.note = "not applicable: empty (alpha - eps)-clusters";
    return report;
  }
  report.emdPDD = pddDistance(pdd(s, report.k), pdd(q, report.k));
  // Sound check against the lower end of the approximation envelope.
  report.holds = report.emdPDD <= report.emdIsoset / report.factor + 1e-9;
  return report;
}

}  // namespace isoset

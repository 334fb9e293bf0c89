#include "isoset/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_set>

namespace isoset {

namespace {

constexpr double kSingularTol = 1e-12;

double unitBallVolume(int dim) {
  switch (dim) {
    case 1: return 2.0;
    case 2: return M_PI;
    case 3: return 4.0 * M_PI / 3.0;
    default: return 0.0;
  }
}

// Key for visited integer shifts during cell expansion.
struct IVecHash {
  size_t operator()(const IVec& v) const {
    size_t h = 1469598103934665603ull;
    for (int c = 0; c < 3; ++c) {
      h ^= static_cast<size_t>(v[c] + (1 << 20));
      h *= 1099511628211ull;
    }
    return h;
  }
};
struct IVecEq {
  bool operator()(const IVec& a, const IVec& b) const { return a == b; }
};

}  // namespace

Lattice::Lattice(int dim, const Mat& basis) : dim_(dim) {
  if (dim < 1 || dim > 3) {
    throw InvalidLattice("lattice dimension must be 1, 2 or 3");
  }
  basis_ = Mat::Identity();
  basis_.topLeftCorner(dim, dim) = basis.topLeftCorner(dim, dim);
  const double det = basis_.determinant();
  if (std::abs(det) < kSingularTol) {
    throw InvalidLattice("singular basis matrix");
  }
  inverse_ = basis_.inverse();
  volume_ = std::abs(det);
}

Lattice Lattice::fromColumns(const std::vector<Vec>& columns) {
  if (columns.empty() || columns.size() > 3) {
    throw InvalidLattice("basis must have 1 to 3 vectors");
  }
  Mat b = Mat::Identity();
  for (size_t i = 0; i < columns.size(); ++i) b.col(static_cast<int>(i)) = columns[i];
  return Lattice(static_cast<int>(columns.size()), b);
}

double CellGeometry::clusterCountFactor(double alpha) const {
  return std::pow(alpha + diameter, dim) * unitBallVolume / volume;
}

CellGeometry cellGeometry(const Lattice& lattice) {
  CellGeometry g;
  g.dim = lattice.dim();
  g.volume = lattice.volume();
  g.unitBallVolume = unitBallVolume(g.dim);
  for (int i = 0; i < g.dim; ++i) {
    g.maxEdge = std::max(g.maxEdge, lattice.basisVector(i).norm());
  }
  // Diameter: longest of the 2^(n-1) diagonals +-v1 +-v2 ... + vn.
  const int combos = 1 << (g.dim - 1);
  for (int mask = 0; mask < combos; ++mask) {
    Vec diag = lattice.basisVector(g.dim - 1);
    for (int i = 0; i + 1 < g.dim; ++i) {
      diag += ((mask >> i) & 1) ? -lattice.basisVector(i) : lattice.basisVector(i);
    }
    g.diameter = std::max(g.diameter, diag.norm());
  }
  return g;
}

CellGeometry cellGeometry(const PeriodicSet& set) {
  return cellGeometry(set.lattice());
}

PeriodicSet::PeriodicSet(Lattice lattice, std::vector<Vec> motifFractional,
                         std::vector<std::string> labels)
    : lattice_(std::move(lattice)),
      motif_(std::move(motifFractional)),
      labels_(std::move(labels)) {
  if (motif_.empty()) throw InvalidMotif("motif must be nonempty");
  if (!labels_.empty() && labels_.size() != motif_.size()) {
    throw InvalidMotif("labels must match motif size");
  }
  const int n = lattice_.dim();
  for (Vec& f : motif_) {
    for (int c = n; c < 3; ++c) f[c] = 0.0;
    for (int c = 0; c < n; ++c) {
      f[c] -= std::floor(f[c]);
      if (f[c] >= 1.0) f[c] = 0.0;  // guard against floor(1-eps) rounding
    }
  }
  // Coincident points are rejected, not merged.  Distinct fractional points
  // can still coincide in space across cell boundaries, so compare each pair
  // over neighboring shifts.
  for (size_t i = 0; i < motif_.size(); ++i) {
    for (size_t j = i + 1; j < motif_.size(); ++j) {
      Vec d = motif_[i] - motif_[j];
      for (int c = 0; c < n; ++c) d[c] -= std::round(d[c]);
      if (lattice_.cartesian(d).norm() <= kGeomTol) {
        throw InvalidMotif("motif contains coincident points");
      }
    }
  }
}

Vec PeriodicSet::motifCartesian(int i) const {
  if (i < 0 || i >= motifSize()) throw InvalidMotifIndex("motif index out of range");
  return lattice_.cartesian(motif_[static_cast<size_t>(i)]);
}

std::vector<Vec> pointsInBall(const PeriodicSet& set, const Vec& center,
                              double radius) {
  if (radius < 0.0) throw InvalidRadius("negative ball radius");
  const Lattice& lat = set.lattice();
  const int n = lat.dim();
  const CellGeometry geom = cellGeometry(lat);
  const double reach = radius + 0.5 * geom.diameter + kGeomTol;

  // Center of the cell U + v, v integer shift.
  Vec half = Vec::Zero();
  for (int c = 0; c < n; ++c) half[c] = 0.5;
  auto cellCenter = [&](const IVec& v) {
    Vec f = half;
    for (int c = 0; c < n; ++c) f[c] += v[c];
    return lat.cartesian(f);
  };

  IVec start = IVec::Zero();
  Vec f0 = lat.fractional(center);
  for (int c = 0; c < n; ++c) start[c] = static_cast<int>(std::floor(f0[c]));

  // Breadth-first over shifted cells whose circumscribed ball meets the
  // query ball.  Moore neighborhood keeps the frontier connected for any
  // cell shape: consecutive cells along a segment inside the ball differ
  // by at most one step per coordinate.
  std::vector<Vec> out;
  std::unordered_set<IVec, IVecHash, IVecEq> seen;
  std::deque<IVec> queue;
  seen.insert(start);
  queue.push_back(start);
  const int m = set.motifSize();
  while (!queue.empty()) {
    IVec v = queue.front();
    queue.pop_front();
    if ((cellCenter(v) - center).norm() > reach) continue;
    for (int i = 0; i < m; ++i) {
      Vec f = set.motif()[static_cast<size_t>(i)];
      for (int c = 0; c < n; ++c) f[c] += v[c];
      Vec q = lat.cartesian(f);
      if ((q - center).norm() <= radius + kGeomTol) out.push_back(q);
    }
    // Expand neighbors.
    IVec step = IVec::Zero();
    const int lo = -1, hi = 1;
    for (step[0] = lo; step[0] <= hi; ++step[0]) {
      for (step[1] = (n > 1 ? lo : 0); step[1] <= (n > 1 ? hi : 0); ++step[1]) {
        for (step[2] = (n > 2 ? lo : 0); step[2] <= (n > 2 ? hi : 0); ++step[2]) {
          if (step == IVec::Zero()) continue;
          IVec w = v + step;
          if (seen.insert(w).second) queue.push_back(w);
        }
      }
    }
  }

  std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) {
    return lessByNormThenLex(a - center, b - center);
  });
  return out;
}

double minInterpointDistance(const PeriodicSet& set) {
  const Lattice& lat = set.lattice();
  double searchRadius = lat.basisVector(0).norm();
  for (int i = 1; i < lat.dim(); ++i) {
    searchRadius = std::min(searchRadius, lat.basisVector(i).norm());
  }
  double best = searchRadius;
  for (int i = 0; i < set.motifSize(); ++i) {
    const Vec p = set.motifCartesian(i);
    for (const Vec& q : pointsInBall(set, p, searchRadius + kGeomTol)) {
      const double d = (q - p).norm();
      if (d > kGeomTol) best = std::min(best, d);
    }
  }
  return best;
}

PeriodicSet integerLattice1D(double spacing) {
  Mat b = Mat::Identity();
  b(0, 0) = spacing;
  return PeriodicSet(Lattice(1, b), {Vec::Zero()});
}

PeriodicSet squareLattice(double spacing) {
  Mat b = Mat::Identity();
  b(0, 0) = spacing;
  b(1, 1) = spacing;
  return PeriodicSet(Lattice(2, b), {Vec::Zero()});
}

PeriodicSet hexagonalLattice(double spacing) {
  Mat b = Mat::Identity();
  b.col(0) = Vec(spacing, 0.0, 0.0);
  b.col(1) = Vec(0.5 * spacing, std::sqrt(3.0) / 2.0 * spacing, 0.0);
  return PeriodicSet(Lattice(2, b), {Vec::Zero()});
}

}  // namespace isoset

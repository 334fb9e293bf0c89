#include "isoset/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace isoset {

namespace {

// Union-find over motif indices where each node carries the integer lattice
// offset of its canonical copy relative to the root's copy: node i with
// offset s means vertex (i, 0) is connected to (root, s) in the infinite
// graph on S.
struct OffsetUnionFind {
  std::vector<int> parent;
  std::vector<IVec> shift;

  explicit OffsetUnionFind(int n) : parent(n), shift(n, IVec::Zero()) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  std::pair<int, IVec> find(int i) {
    if (parent[i] == i) return {i, IVec::Zero()};
    auto [root, s] = find(parent[i]);
    parent[i] = root;
    shift[i] += s;
    return {root, shift[i]};
  }

  // Connect (i, 0) ~ (j, w).  Returns the cycle vector if i, j were already
  // in one component (zero vector for a redundant edge), or nullopt if the
  // edge merged two components.
  std::optional<IVec> addEdge(int i, int j, const IVec& w) {
    auto [ri, si] = find(i);
    auto [rj, sj] = find(j);
    if (ri != rj) {
      parent[ri] = rj;
      shift[ri] = sj + w - si;
      return std::nullopt;
    }
    return IVec(sj + w - si);
  }

  int componentCount() {
    int count = 0;
    for (size_t i = 0; i < parent.size(); ++i) {
      if (find(static_cast<int>(i)).first == static_cast<int>(i)) ++count;
    }
    return count;
  }
};

// Shape of the sublattice of Z^dim generated by the given vectors: its rank
// and the product of echelon pivots (the covolume of the sublattice inside
// its own span, projected to the pivot coordinates).  For sublattices
// ordered by inclusion this pair changes exactly when the group changes,
// and at full rank pivotProduct equals the index in Z^dim.
struct SublatticeShape {
  int rank = 0;
  long long pivotProduct = 0;  // 0 for the trivial group

  bool fullIndexOne(int dim) const { return rank == dim && pivotProduct == 1; }
};

SublatticeShape sublatticeShape(std::vector<IVec> gens, int dim) {
  SublatticeShape shape;
  long long product = 1;
  size_t col = 0;
  for (int row = 0; row < dim && col < gens.size(); ++row) {
    bool done = false;
    while (!done) {
      int pivot = -1;
      long long best = 0;
      for (size_t c = col; c < gens.size(); ++c) {
        const long long v = std::llabs(gens[c][row]);
        if (v != 0 && (pivot < 0 || v < best)) {
          pivot = static_cast<int>(c);
          best = v;
        }
      }
      if (pivot < 0) break;  // row is zero across remaining generators
      std::swap(gens[col], gens[static_cast<size_t>(pivot)]);
      done = true;
      for (size_t c = col + 1; c < gens.size(); ++c) {
        const long long q = gens[c][row] / gens[col][row];
        gens[c] -= static_cast<int>(q) * gens[col];
        if (gens[c][row] != 0) done = false;
      }
      if (done) {
        product *= std::llabs(gens[col][row]);
        ++col;
        ++shape.rank;
      }
    }
  }
  if (shape.rank > 0) shape.pivotProduct = product;
  return shape;
}

struct CandidateEdge {
  double distance;
  int i, j;
  IVec shift;
};

}  // namespace

Cluster::Cluster(int d, double r, std::vector<Vec> pts)
    : dim(d), radius(r), points(std::move(pts)) {
  std::sort(points.begin(), points.end(), lessByNormThenLex);
}

Cluster alphaCluster(const PeriodicSet& set, int motifIndex, double radius) {
  if (motifIndex < 0 || motifIndex >= set.motifSize()) {
    throw InvalidMotifIndex("motif index out of range");
  }
  if (radius < 0.0) throw InvalidRadius("negative cluster radius");
  const Vec p = set.motifCartesian(motifIndex);
  std::vector<Vec> pts = pointsInBall(set, p, radius);
  for (Vec& q : pts) q -= p;
  // Snap the center copy to an exact zero.
  for (Vec& q : pts) {
    if (q.norm() <= kGeomTol) {
      q = Vec::Zero();
      break;
    }
  }
  return Cluster(set.dim(), radius, std::move(pts));
}

BridgeResult bridgeLength(const PeriodicSet& set) {
  const Lattice& lat = set.lattice();
  const int n = lat.dim();
  const int m = set.motifSize();
  const CellGeometry geom = cellGeometry(set);
  const double rUb = std::max(geom.maxEdge, 0.5 * geom.diameter) + kGeomTol;

  // Row norms of the inverse basis bound the fractional spread of a ball.
  Vec rowNorm = Vec::Zero();
  for (int c = 0; c < n; ++c) rowNorm[c] = lat.inverseBasis().row(c).norm();

  std::vector<CandidateEdge> edges;
  for (int i = 0; i < m; ++i) {
    const Vec pi = set.motifCartesian(i);
    for (int j = i; j < m; ++j) {
      const Vec pj = set.motifCartesian(j);
      const Vec t = lat.fractional(pi - pj);
      IVec lo = IVec::Zero(), hi = IVec::Zero();
      for (int c = 0; c < n; ++c) {
        lo[c] = static_cast<int>(std::floor(t[c] - rowNorm[c] * rUb)) - 1;
        hi[c] = static_cast<int>(std::ceil(t[c] + rowNorm[c] * rUb)) + 1;
      }
      IVec w = IVec::Zero();
      for (w[0] = lo[0]; w[0] <= hi[0]; ++w[0]) {
        for (w[1] = (n > 1 ? lo[1] : 0); w[1] <= (n > 1 ? hi[1] : 0); ++w[1]) {
          for (w[2] = (n > 2 ? lo[2] : 0); w[2] <= (n > 2 ? hi[2] : 0); ++w[2]) {
            if (i == j) {
              // Self pair: skip the zero shift, keep one of each +-w.
              if (w == IVec::Zero()) continue;
              if (w[0] < 0 || (w[0] == 0 && (w[1] < 0 || (w[1] == 0 && w[2] < 0)))) {
                continue;
              }
            }
            const double dist = (pj + lat.cartesian(w.cast<double>()) - pi).norm();
            if (dist <= rUb) edges.push_back({dist, i, j, w});
          }
        }
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const CandidateEdge& a, const CandidateEdge& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    for (int c = 0; c < 3; ++c) {
      if (a.shift[c] != b.shift[c]) return a.shift[c] < b.shift[c];
    }
    return false;
  });

  OffsetUnionFind uf(m);
  std::vector<IVec> gens;
  BridgeResult result;
  SublatticeShape shape;
  int components = m;
  for (const CandidateEdge& e : edges) {
    bool useful = false;
    if (auto cycle = uf.addEdge(e.i, e.j, e.shift)) {
      if (*cycle != IVec::Zero()) {
        gens.push_back(*cycle);
        const SublatticeShape grown = sublatticeShape(gens, n);
        if (grown.rank > shape.rank ||
            (grown.rank == shape.rank && grown.pivotProduct < shape.pivotProduct)) {
          shape = grown;
          useful = true;
        } else {
          gens.pop_back();  // cycle vector already in the generated sublattice
        }
      }
    } else {
      --components;
      useful = true;
    }
    if (useful) {
      result.witnessEdges.push_back({e.i, e.j, e.shift, e.distance});
      if (components == 1 && shape.fullIndexOne(n)) {
        result.beta = e.distance;
        return result;
      }
    }
  }
  throw Error("bridge length sweep did not connect the set (internal error)");
}

double stableRadiusUpperBound(const PeriodicSet& set) {
  const CellGeometry geom = cellGeometry(set);
  const double beta = bridgeLength(set).beta;
  const double general = beta + std::max(geom.maxEdge, 0.5 * geom.diameter);
  if (set.motifSize() == 1) {
    // Lattice: bridge length equals the minimal longest basis vector, and
    // 2*beta bounds the stable radius.
    return std::min(general, 2.0 * beta);
  }
  return general;
}

}  // namespace isoset

#ifndef ISOSET_TESTS_FIXTURES_HPP
#define ISOSET_TESTS_FIXTURES_HPP

#include <random>
#include <vector>

#include "isoset/cluster.hpp"
#include "isoset/lattice.hpp"

namespace isoset::fixtures {

// Square cell [0,10)^2 with motif points at (2,2),(2,8),(8,2),(8,8).
inline PeriodicSet makeS1() {
  Mat b = Mat::Identity();
  b(0, 0) = 10.0;
  b(1, 1) = 10.0;
  return PeriodicSet(Lattice(2, b), {Vec(0.2, 0.2, 0.0), Vec(0.2, 0.8, 0.0),
                                     Vec(0.8, 0.2, 0.0), Vec(0.8, 0.8, 0.0)});
}

// S1 plus the cell center (5,5).
inline PeriodicSet makeS2() {
  Mat b = Mat::Identity();
  b(0, 0) = 10.0;
  b(1, 1) = 10.0;
  return PeriodicSet(Lattice(2, b),
                     {Vec(0.2, 0.2, 0.0), Vec(0.2, 0.8, 0.0), Vec(0.8, 0.2, 0.0),
                      Vec(0.8, 0.8, 0.0), Vec(0.5, 0.5, 0.0)});
}

// 1D set {0, 1/4, 1/3, 1/2} + Z.
inline PeriodicSet makeS4() {
  Mat b = Mat::Identity();
  return PeriodicSet(Lattice(1, b),
                     {Vec(0.0, 0.0, 0.0), Vec(0.25, 0.0, 0.0),
                      Vec(1.0 / 3.0, 0.0, 0.0), Vec(0.5, 0.0, 0.0)});
}

// Random periodic set with motif points kept minSeparation apart (rejection
// sampling in fractional coordinates).
inline PeriodicSet randomSet(std::mt19937& rng, int dim, int motifSize,
                             double minSeparation = 0.15) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> skew(-0.3, 0.3);
  Mat b = Mat::Identity();
  for (int c = 0; c < dim; ++c) {
    b(c, c) = 1.0 + 0.5 * unit(rng);
    for (int r = 0; r < dim; ++r) {
      if (r != c) b(r, c) = skew(rng) * 0.4;
    }
  }
  Lattice lat(dim, b);
  std::vector<Vec> motif;
  int guard = 0;
  while (static_cast<int>(motif.size()) < motifSize && guard++ < 20000) {
    Vec f = Vec::Zero();
    for (int c = 0; c < dim; ++c) f[c] = unit(rng);
    bool ok = true;
    for (const Vec& g : motif) {
      Vec d = f - g;
      for (int c = 0; c < dim; ++c) d[c] -= std::round(d[c]);
      if (lat.cartesian(d).norm() < minSeparation) {
        ok = false;
        break;
      }
    }
    if (ok) motif.push_back(f);
  }
  return PeriodicSet(lat, motif);
}

// Random orthogonal map of the given dimension (rotation, optionally
// composed with a coordinate reflection).
inline Mat randomOrthogonal(std::mt19937& rng, int dim, bool allowReflection = true) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  Mat q = Mat::Identity();
  if (dim == 1) {
    // nothing: rotation group trivial
  } else if (dim == 2) {
    const double a = angle(rng);
    q(0, 0) = std::cos(a); q(0, 1) = -std::sin(a);
    q(1, 0) = std::sin(a); q(1, 1) = std::cos(a);
  } else {
    Eigen::Vector3d axis(angle(rng), angle(rng), angle(rng));
    axis.normalize();
    q = Eigen::AngleAxisd(angle(rng), axis).toRotationMatrix();
  }
  if (allowReflection && std::uniform_int_distribution<int>(0, 1)(rng) == 1) {
    Mat flip = Mat::Identity();
    flip(0, 0) = -1.0;
    q = q * flip;
  }
  return q;
}

// Apply an isometry (orthogonal map + translation) to a periodic set,
// producing a new presentation of the transformed set.
inline PeriodicSet transformed(const PeriodicSet& set, const Mat& q, const Vec& shift) {
  const int n = set.dim();
  Mat basis = Mat::Identity();
  basis.topLeftCorner(n, n) =
      (q * set.lattice().basis()).topLeftCorner(n, n);
  Lattice lat(n, basis);
  std::vector<Vec> motif;
  for (int i = 0; i < set.motifSize(); ++i) {
    motif.push_back(lat.fractional(q * set.motifCartesian(i) + shift));
  }
  return PeriodicSet(lat, motif);
}

}  // namespace isoset::fixtures

#endif

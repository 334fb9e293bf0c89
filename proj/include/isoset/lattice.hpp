#ifndef ISOSET_LATTICE_HPP
#define ISOSET_LATTICE_HPP

#include <optional>
#include <string>
#include <vector>

#include "isoset/types.hpp"

namespace isoset {

/// Translation lattice in dimension 1, 2 or 3, given by a nonsingular basis.
/// Columns of basis() are the basis vectors; the matrix is padded with the
/// identity outside the working dimension.
class Lattice {
 public:
  Lattice(int dim, const Mat& basis);

  static Lattice fromColumns(const std::vector<Vec>& columns);

  int dim() const { return dim_; }
  const Mat& basis() const { return basis_; }
  const Mat& inverseBasis() const { return inverse_; }
  double volume() const { return volume_; }

  Vec basisVector(int i) const { return basis_.col(i); }
  Vec cartesian(const Vec& fractional) const { return basis_ * fractional; }
  Vec fractional(const Vec& cartesian) const { return inverse_ * cartesian; }

 private:
  int dim_;
  Mat basis_;
  Mat inverse_;
  double volume_;
};

/// Derived geometry of a unit cell: longest edge b, diameter d (longest
/// diagonal), volume, unit-ball volume V_n, and the cluster-count factor
/// nu(alpha) = (alpha + d)^n V_n / Vol[U].
struct CellGeometry {
  int dim = 0;
  double maxEdge = 0.0;
  double diameter = 0.0;
  double volume = 0.0;
  double unitBallVolume = 0.0;

  double clusterCountFactor(double alpha) const;
};

CellGeometry cellGeometry(const Lattice& lattice);

/// Periodic point set S = Lambda + M.  Motif points are stored in fractional
/// coordinates reduced into [0,1); labels are carried through untouched and
/// never enter any geometric comparison.  Immutable after construction.
class PeriodicSet {
 public:
  PeriodicSet(Lattice lattice, std::vector<Vec> motifFractional,
              std::vector<std::string> labels = {});

  int dim() const { return lattice_.dim(); }
  int motifSize() const { return static_cast<int>(motif_.size()); }
  const Lattice& lattice() const { return lattice_; }
  const std::vector<Vec>& motif() const { return motif_; }
  const std::vector<std::string>& labels() const { return labels_; }

  Vec motifCartesian(int i) const;

 private:
  Lattice lattice_;
  std::vector<Vec> motif_;
  std::vector<std::string> labels_;
};

CellGeometry cellGeometry(const PeriodicSet& set);

/// All points of S inside the closed ball of the given radius around center,
/// boundary included (within kGeomTol).  Found by breadth-first expansion
/// over shifted cells intersecting the ball.  Output is sorted by distance
/// from the center, then lexicographically.
std::vector<Vec> pointsInBall(const PeriodicSet& set, const Vec& center,
                              double radius);

/// Minimum distance between distinct points of S.  The packing radius is
/// half of this value.
double minInterpointDistance(const PeriodicSet& set);

// Convenience constructors used across tests and the CLI.
PeriodicSet integerLattice1D(double spacing = 1.0);
PeriodicSet squareLattice(double spacing = 1.0);
PeriodicSet hexagonalLattice(double spacing = 1.0);

}  // namespace isoset

#endif

#ifndef ISOSET_CONGRUENCE_HPP
#define ISOSET_CONGRUENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "isoset/cluster.hpp"

namespace isoset {

/// Center-fixing isometry of R^n: an orthogonal matrix (padded with the
/// identity outside the working dimension).
struct OrthogonalMap {
  Mat matrix = Mat::Identity();
  bool isReflection = false;
};

/// Default matching tolerance for cluster isometries: relative to the
/// cluster radius, with a floor for degenerate radii.
double defaultIsometryTol(double radius);

/// Center-fixing isometry taking C onto D (bijective match within tol),
/// or nullopt.  Cardinalities are checked first; candidate maps are
/// anchored on extremal points and verified by bijective matching.
std::optional<OrthogonalMap> clusterIsometry(const Cluster& c, const Cluster& d,
                                             double tol = -1.0);

/// Symmetry group Sym(S, p; alpha) of an alpha-cluster.  Below the first
/// neighbor distance (and for collinear clusters in 3D) the group is a
/// continuous subgroup of O(R^n); it is reported with the sentinel flag
/// instead of an element list.
struct SymmetryGroup {
  bool continuous = false;
  int spanRank = 0;                     // affine rank of the cluster
  Vec axis = Vec::Zero();               // span direction for rank-1 continuous groups
  bool mirrorSymmetric = false;         // rank-1 continuous: pattern symmetric about 0
  std::vector<OrthogonalMap> elements;  // finite case, identity included

  long long order() const {
    return continuous ? -1 : static_cast<long long>(elements.size());
  }
};

/// Equality for groups of one cluster at nested radii: finite groups
/// compare by order (the larger-radius group is always a subgroup of the
/// smaller-radius one), continuous sentinels by span rank, axis, and the
/// mirror flag.
bool symmetryGroupsEqual(const SymmetryGroup& a, const SymmetryGroup& b);

SymmetryGroup symmetryGroupOfCluster(const Cluster& c, double tol = -1.0);
SymmetryGroup symmetryGroup(const PeriodicSet& set, int motifIndex, double radius,
                            double tol = -1.0);

/// Equivalence classes of motif indices under isometry of alpha-clusters.
/// Classes are ordered by smallest member; members sorted ascending.
std::vector<std::vector<int>> alphaPartition(const PeriodicSet& set, double radius,
                                             double tol = -1.0);

struct IsometryClass {
  Cluster representative;
  long long weightNum = 0;
  long long weightDen = 1;
  std::vector<int> memberIndices;
};

/// Weighted distribution of isometry classes of alpha-clusters.
struct Isoset {
  double radius = 0.0;
  std::vector<IsometryClass> classes;
};

Isoset buildIsoset(const PeriodicSet& set, double radius, double tol = -1.0);

/// Complete isometry test: compares isosets at a common stable radius
/// (maximum of the two stable-radius upper bounds).
bool isometric(const PeriodicSet& s, const PeriodicSet& q, double tol = -1.0);

std::string isosetToJson(const Isoset& iso);

}  // namespace isoset

#endif

#ifndef ISOSET_TYPES_HPP
#define ISOSET_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace isoset {

// Points and maps live in R^3 regardless of the working dimension n <= 3;
// unused trailing components are kept at zero.  Basis matrices are padded
// with the identity outside the top-left n x n block so that inverses and
// determinants stay consistent.
using Vec = Eigen::Vector3d;
using Mat = Eigen::Matrix3d;
using IVec = Eigen::Vector3i;

// Absolute tolerance for geometric predicates (distance comparisons,
// ball membership).  Input coordinates are assumed accurate to this scale.
inline constexpr double kGeomTol = 1e-9;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidLattice : Error { using Error::Error; };
struct InvalidMotif : Error { using Error::Error; };
struct InvalidRadius : Error { using Error::Error; };
struct InvalidMotifIndex : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct RadiusMismatch : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };
struct InvalidDistribution : Error { using Error::Error; };
struct NeighborCountMismatch : Error { using Error::Error; };
struct InvalidCell : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

/// Deterministic comparison: by norm first, then lexicographic components.
inline bool lessByNormThenLex(const Vec& a, const Vec& b) {
  const double na = a.norm(), nb = b.norm();
  if (na != nb) return na < nb;
  for (int c = 0; c < 3; ++c) {
    if (a[c] != b[c]) return a[c] < b[c];
  }
  return false;
}

}  // namespace isoset

#endif

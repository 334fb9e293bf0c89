#ifndef ISOSET_CRYSTAL_IO_HPP
#define ISOSET_CRYSTAL_IO_HPP

#include <string>
#include <vector>

#include "isoset/lattice.hpp"

namespace isoset {

/// Parsed crystal description: unit cell, fractional motif, optional labels.
/// Out-of-range fractional coordinates are reduced into [0,1) at parse time
/// with a warning recorded here.
struct CrystalDocument {
  std::string id;
  int dim = 3;
  Mat basis = Mat::Identity();  // columns are basis vectors
  std::vector<Vec> motifFractional;
  std::vector<std::string> labels;
  std::vector<std::string> warnings;
};

/// Basis from cell parameters by the crystallographic convention: a along x,
/// b in the xy-plane.  Angles in degrees; for dim 2 only gamma is used.
Mat basisFromCellParameters(int dim, const double lengths[3], const double anglesDeg[3]);

CrystalDocument parseCrystalJson(const std::string& text);
CrystalDocument parseCrystalCif(const std::string& text);

/// Dispatch on content: JSON documents start with '{', anything else is
/// treated as the CIF subset.
CrystalDocument parseCrystal(const std::string& text, const std::string& idHint = "");

PeriodicSet toPeriodicSet(const CrystalDocument& doc);

/// Canonical JSON serialization; parse(serialize(doc)) reproduces the
/// fractional coordinates bitwise.
std::string serializeCrystal(const CrystalDocument& doc);

}  // namespace isoset

#endif

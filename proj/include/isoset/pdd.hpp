#ifndef ISOSET_PDD_HPP
#define ISOSET_PDD_HPP

#include <string>
#include <vector>

#include "isoset/lattice.hpp"

namespace isoset {

struct PDDRow {
  long long count = 1;  // motif points collapsed into this row
  std::vector<double> distances;
};

/// Pointwise Distance Distribution: lexicographically ordered rows of the
/// k nearest-neighbor distances per motif point, identical rows collapsed
/// with summed weights count/motifSize.
struct PDDMatrix {
  int k = 0;
  long long motifSize = 1;
  std::vector<PDDRow> rows;

  double weight(size_t row) const {
    return static_cast<double>(rows[row].count) / static_cast<double>(motifSize);
  }
};

PDDMatrix pdd(const PeriodicSet& set, int k);

/// Average Minimum Distances: weighted column averages of the PDD.
std::vector<double> amd(const PeriodicSet& set, int k);

/// EMD between PDD matrices with L-infinity ground distance between rows.
double pddDistance(const PDDMatrix& p, const PDDMatrix& q);

/// RFC 4180 CSV: one line per row, weight first, then the k distances.
std::string pddToCsv(const PDDMatrix& p);

/// Outcome of the PDD-vs-isoset lower bound check.  The neighbor count is
/// derived from the (alpha - eps)-cluster sizes; the bound is provable at
/// the smallest count, so the check is evaluated at kMin with kMax
/// reported alongside.
struct LowerBoundReport {
  bool applicable = false;
  bool holds = false;
  double alpha = 0.0;
  double emdIsoset = 0.0;
  double factor = 1.0;
  int kMin = 0;
  int kMax = 0;
  int k = 0;  // count the check was evaluated at (= kMin)
  double emdPDD = 0.0;
  std::string note;
};

LowerBoundReport checkLowerBound(const PeriodicSet& s, const PeriodicSet& q,
                                 double delta = 0.0, double alphaOverride = -1.0);

}  // namespace isoset

#endif

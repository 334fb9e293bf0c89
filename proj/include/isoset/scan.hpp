#ifndef ISOSET_SCAN_HPP
#define ISOSET_SCAN_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isoset/lattice.hpp"

namespace isoset {

struct ScanOptions {
  double amdThreshold = 0.01;  // L-infinity on AMD vectors, input length units
  double pddThreshold = 0.01;  // EMD on PDD matrices
  int neighborCount = 12;
  double delta = 0.0;
  double isoRelTol = 1e-6;  // isometric verdict: isoset EMD <= isoRelTol * alpha
};

struct ScanPair {
  std::string idA, idB;
  double amdLinf = 0.0;
  std::optional<double> pddEmd;
  std::optional<double> isosetEmd;
  std::string verdict;  // distinct | near-duplicate | isometric
};

/// Staged pairwise comparison: AMD filter, then PDD refinement, then the
/// isoset metric on survivors.
struct ScanReport {
  ScanOptions options;
  std::vector<ScanPair> pairs;
};

ScanReport scanSets(const std::vector<std::pair<std::string, PeriodicSet>>& sets,
                    const ScanOptions& options = {});

std::string scanReportToJson(const ScanReport& report);

}  // namespace isoset

#endif

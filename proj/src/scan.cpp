#include "isoset/scan.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "isoset/cluster.hpp"
#include "isoset/detail/parallel.hpp"
#include "isoset/metrics.hpp"
#include "isoset/pdd.hpp"

namespace isoset {

ScanReport scanSets(const std::vector<std::pair<std::string, PeriodicSet>>& sets,
                    const ScanOptions& options) {
  std::vector<int> order(sets.size());
  for (size_t i = 0; i < sets.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return sets[static_cast<size_t>(a)].first < sets[static_cast<size_t>(b)].first;
  });

  const int n = static_cast<int>(sets.size());
  std::vector<std::vector<double>> amds(static_cast<size_t>(n));
  detail::parallelFor(n, [&](int i) {
    amds[static_cast<size_t>(i)] =
        amd(sets[static_cast<size_t>(order[static_cast<size_t>(i)])].second,
            options.neighborCount);
  });

  std::vector<std::pair<int, int>> jobs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) jobs.emplace_back(i, j);
  }
  ScanReport report;
  report.options = options;
  report.pairs.resize(jobs.size());

  detail::parallelFor(static_cast<int>(jobs.size()), [&](int idx) {
    const auto [i, j] = jobs[static_cast<size_t>(idx)];
    const auto& [idA, setA] = sets[static_cast<size_t>(order[static_cast<size_t>(i)])];
    const auto& [idB, setB] = sets[static_cast<size_t>(order[static_cast<size_t>(j)])];
    ScanPair pair;
    pair.idA = idA;
    pair.idB = idB;
    double amdLinf = 0.0;
    for (int c = 0; c < options.neighborCount; ++c) {
      amdLinf = std::max(amdLinf, std::abs(amds[static_cast<size_t>(i)][static_cast<size_t>(c)] -
                                           amds[static_cast<size_t>(j)][static_cast<size_t>(c)]));
    }
    pair.amdLinf = amdLinf;
    if (setA.dim() != setB.dim() || amdLinf >= options.amdThreshold) {
      pair.verdict = "distinct";
    } else {
      pair.pddEmd = pddDistance(pdd(setA, options.neighborCount),
                                pdd(setB, options.neighborCount));
      if (*pair.pddEmd >= options.pddThreshold) {
        pair.verdict = "distinct";
      } else {
        const double alpha =
            std::max(stableRadiusUpperBound(setA), stableRadiusUpperBound(setB));
        pair.isosetEmd = isosetDistanceAtRadius(setA, setB, alpha, options.delta).value;
        pair.verdict = *pair.isosetEmd <= options.isoRelTol * alpha ? "isometric"
                                                                    : "near-duplicate";
      }
    }
    report.pairs[static_cast<size_t>(idx)] = std::move(pair);
  });
  return report;
}

std::string scanReportToJson(const ScanReport& report) {
  nlohmann::json j;
  j["thresholds"] = {{"amdLinf", report.options.amdThreshold},
                     {"pddEmd", report.options.pddThreshold},
                     {"isosetRelTol", report.options.isoRelTol},
                     {"neighborCount", report.options.neighborCount},
                     {"delta", report.options.delta}};
  j["pairs"] = nlohmann::json::array();
  for (const ScanPair& p : report.pairs) {
    nlohmann::json row;
    row["a"] = p.idA;
    row["b"] = p.idB;
    row["amdLinf"] = p.amdLinf;
    if (p.pddEmd) row["pddEmd"] = *p.pddEmd;
    if (p.isosetEmd) row["isosetEmd"] = *p.isosetEmd;
    row["verdict"] = p.verdict;
    j["pairs"].push_back(row);
  }
  return j.dump(2);
}

}  // namespace isoset

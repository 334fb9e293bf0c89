#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "isoset/cluster.hpp"
#include "isoset/congruence.hpp"
#include "isoset/crystal_io.hpp"
#include "isoset/metrics.hpp"
#include "isoset/pdd.hpp"
#include "isoset/scan.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct LoadedSet {
  isoset::CrystalDocument doc;
  isoset::PeriodicSet set;
};

LoadedSet loadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw isoset::ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  isoset::CrystalDocument doc =
      isoset::parseCrystal(buf.str(), fs::path(path).stem().string());
  for (const std::string& w : doc.warnings) {
    std::cerr << path << ": warning: " << w << "\n";
  }
  isoset::PeriodicSet set = isoset::toPeriodicSet(doc);
  return {std::move(doc), std::move(set)};
}

json pddToJson(const isoset::PDDMatrix& p) {
  json rows = json::array();
  for (size_t r = 0; r < p.rows.size(); ++r) {
    rows.push_back({{"weight", p.weight(r)}, {"distances", p.rows[r].distances}});
  }
  return rows;
}

int runInvariant(const std::string& file, int k, const std::string& alphaArg,
                 bool withMinStable, const std::string& format) {
  const LoadedSet loaded = loadFile(file);
  const isoset::PeriodicSet& set = loaded.set;
  const double beta = isoset::bridgeLength(set).beta;
  const double alphaUb = isoset::stableRadiusUpperBound(set);
  double alpha = alphaUb;
  if (alphaArg != "auto") alpha = std::stod(alphaArg);

  const isoset::PDDMatrix pddMatrix = isoset::pdd(set, k);
  const std::vector<double> amdVec = isoset::amd(set, k);
  const isoset::Isoset iso = isoset::buildIsoset(set, alpha);

  if (format == "csv") {
    std::cout << isoset::pddToCsv(pddMatrix);
    return 0;
  }
  json out;
  out["id"] = loaded.doc.id;
  out["dim"] = set.dim();
  out["motifSize"] = set.motifSize();
  out["bridgeLength"] = beta;
  out["stableRadiusUpperBound"] = alphaUb;
  if (withMinStable) out["minStableRadius"] = isoset::minStableRadius(set);
  out["k"] = k;
  out["amd"] = amdVec;
  out["pdd"] = pddToJson(pddMatrix);
  json classes = json::array();
  for (const auto& cls : iso.classes) {
    classes.push_back({{"weight", {{"num", cls.weightNum}, {"den", cls.weightDen}}},
                       {"clusterSize", cls.representative.points.size()},
                       {"members", cls.memberIndices}});
  }
  out["isoset"] = {{"radius", alpha}, {"classCount", iso.classes.size()}, {"classes", classes}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int runDist(const std::string& fileA, const std::string& fileB,
            const std::string& metric, double delta, int k) {
  const LoadedSet a = loadFile(fileA);
  const LoadedSet b = loadFile(fileB);
  json out;
  out["a"] = a.doc.id;
  out["b"] = b.doc.id;
  out["metric"] = metric;
  if (metric == "amd") {
    const auto va = isoset::amd(a.set, k);
    const auto vb = isoset::amd(b.set, k);
    double linf = 0.0;
    for (int c = 0; c < k; ++c) {
      linf = std::max(linf, std::abs(va[static_cast<size_t>(c)] - vb[static_cast<size_t>(c)]));
    }
    out["k"] = k;
    out["value"] = linf;
  } else if (metric == "pdd") {
    out["k"] = k;
    out["value"] = isoset::pddDistance(isoset::pdd(a.set, k), isoset::pdd(b.set, k));
  } else if (metric == "isoset") {
    const isoset::ApproxValue v = isoset::isosetDistance(a.set, b.set, delta);
    out["value"] = v.value;
    out["factor"] = v.factor;
  } else {
    const isoset::ApproxValue v = isoset::scaledInvariantDistance(a.set, b.set, delta);
    out["value"] = v.value;
    out["factor"] = v.factor;
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int runScan(const std::string& dir, const isoset::ScanOptions& options) {
  std::vector<std::pair<std::string, isoset::PeriodicSet>> sets;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = entry.path().extension().string();
    if (ext == ".json" || ext == ".cif") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const fs::path& f : files) {
    const LoadedSet loaded = loadFile(f.string());
    sets.emplace_back(loaded.doc.id, loaded.set);
  }
  if (sets.size() < 2) {
    std::cerr << "scan needs at least two crystal files in " << dir << "\n";
    return 1;
  }
  std::cout << isoset::scanReportToJson(isoset::scanSets(sets, options)) << "\n";
  return 0;
}

int runIsotree(const std::string& file, double maxRadius) {
  const LoadedSet loaded = loadFile(file);
  const double radius =
      maxRadius > 0.0 ? maxRadius : isoset::stableRadiusUpperBound(loaded.set);
  std::cout << isoset::isotreeToJson(isoset::isotree(loaded.set, radius)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isoset: isometry invariants and continuous metrics for periodic point sets"};
  app.require_subcommand(1);

  std::string file, fileA, fileB, dir;
  std::string metric = "isoset";
  std::string alphaArg = "auto";
  std::string format = "json";
  int k = 12;
  double delta = 0.0;
  double maxRadius = -1.0;
  bool withMinStable = false;
  isoset::ScanOptions scanOptions;

  CLI::App* inv = app.add_subcommand("invariant", "print AMD, PDD and isoset summary");
  inv->add_option("file", file, "crystal file (JSON or CIF subset)")->required();
  inv->add_option("--k", k, "neighbor count for AMD/PDD");
  inv->add_option("--alpha", alphaArg, "isoset radius or 'auto' (stable-radius upper bound)");
  inv->add_flag("--min-stable", withMinStable, "also compute the minimum stable radius");
  inv->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  CLI::App* dist = app.add_subcommand("dist", "distance between two crystals");
  dist->add_option("fileA", fileA)->required();
  dist->add_option("fileB", fileB)->required();
  dist->add_option("--metric", metric, "amd | pdd | isoset | scaled")
      ->check(CLI::IsMember({"amd", "pdd", "isoset", "scaled"}));
  dist->add_option("--delta", delta, "approximation slack");
  dist->add_option("--k", k, "neighbor count for amd/pdd metrics");

  CLI::App* scan = app.add_subcommand("scan", "pairwise near-duplicate scan of a directory");
  scan->add_option("dir", dir, "directory of crystal files")->required();
  scan->add_option("--amd-threshold", scanOptions.amdThreshold);
  scan->add_option("--pdd-threshold", scanOptions.pddThreshold);
  scan->add_option("--k", scanOptions.neighborCount);
  scan->add_option("--delta", scanOptions.delta);

  CLI::App* tree = app.add_subcommand("isotree", "isotree JSON for plotting");
  tree->add_option("file", file)->required();
  tree->add_option("--max-radius", maxRadius);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (alphaArg != "auto") {
    try {
      size_t used = 0;
      const double v = std::stod(alphaArg, &used);
      if (used != alphaArg.size() || v < 0.0) throw std::invalid_argument(alphaArg);
    } catch (const std::exception&) {
      std::cerr << "--alpha must be a nonnegative number or 'auto'\n";
      return 2;
    }
  }

  try {
    if (inv->parsed()) return runInvariant(file, k, alphaArg, withMinStable, format);
    if (dist->parsed()) return runDist(fileA, fileB, metric, delta, k);
    if (scan->parsed()) return runScan(dir, scanOptions);
    if (tree->parsed()) return runIsotree(file, maxRadius);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

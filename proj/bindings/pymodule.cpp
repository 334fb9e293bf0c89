#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "isoset/cluster.hpp"
#include "isoset/congruence.hpp"
#include "isoset/crystal_io.hpp"
#include "isoset/metrics.hpp"
#include "isoset/pdd.hpp"
#include "isoset/scan.hpp"

namespace py = pybind11;
using namespace isoset;

namespace {

Vec toVec(const std::vector<double>& v) {
  Vec out = Vec::Zero();
  for (size_t c = 0; c < v.size() && c < 3; ++c) out[static_cast<int>(c)] = v[c];
  return out;
}

std::vector<double> fromVec(const Vec& v, int dim) {
  std::vector<double> out;
  for (int c = 0; c < dim; ++c) out.push_back(v[c]);
  return out;
}

PeriodicSet makeSet(const std::vector<std::vector<double>>& basisRows,
                    const std::vector<std::vector<double>>& motif) {
  const int dim = static_cast<int>(basisRows.size());
  Mat basis = Mat::Identity();
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim && c < static_cast<int>(basisRows[static_cast<size_t>(r)].size()); ++c) {
      basis(c, r) = basisRows[static_cast<size_t>(r)][static_cast<size_t>(c)];
    }
  }
  std::vector<Vec> frac;
  for (const auto& row : motif) frac.push_back(toVec(row));
  return PeriodicSet(Lattice(dim, basis), frac);
}

}  // namespace

PYBIND11_MODULE(_isoset, m) {
  m.doc() = "Isometry invariants and continuous metrics for periodic point sets";

  py::register_exception<Error>(m, "IsosetError");

  py::class_<PeriodicSet>(m, "PeriodicSet")
      .def(py::init(&makeSet), py::arg("basis"), py::arg("motif"),
           "basis: list of basis vectors (rows); motif: fractional points")
      .def_property_readonly("dim", &PeriodicSet::dim)
      .def_property_readonly("motif_size", &PeriodicSet::motifSize)
      .def("motif_cartesian", [](const PeriodicSet& s, int i) {
        return fromVec(s.motifCartesian(i), s.dim());
      });

  m.def("parse_crystal", [](const std::string& text, const std::string& idHint) {
    return toPeriodicSet(parseCrystal(text, idHint));
  }, py::arg("text"), py::arg("id_hint") = "");

  m.def("points_in_ball",
        [](const PeriodicSet& s, const std::vector<double>& center, double radius) {
          std::vector<std::vector<double>> out;
          for (const Vec& p : pointsInBall(s, toVec(center), radius)) {
            out.push_back(fromVec(p, s.dim()));
          }
          return out;
        });
  m.def("min_interpoint_distance", &minInterpointDistance);
  m.def("bridge_length", [](const PeriodicSet& s) { return bridgeLength(s).beta; });
  m.def("stable_radius_upper_bound", &stableRadiusUpperBound);
  m.def("min_stable_radius", &minStableRadius);
  m.def("isotree_json", [](const PeriodicSet& s, double maxRadius) {
    return isotreeToJson(isotree(s, maxRadius));
  });

  m.def("symmetry_order", [](const PeriodicSet& s, int i, double radius) {
    return symmetryGroup(s, i, radius).order();
  }, "order of Sym(S, p_i; radius); -1 for a continuous group");
  m.def("alpha_partition", [](const PeriodicSet& s, double radius) {
    return alphaPartition(s, radius);
  });
  m.def("isoset_json", [](const PeriodicSet& s, double radius) {
    return isosetToJson(isoset::buildIsoset(s, radius));
  });
  m.def("is_isometric", [](const PeriodicSet& a, const PeriodicSet& b) {
    return isometric(a, b);
  });

  m.def("isoset_distance", [](const PeriodicSet& a, const PeriodicSet& b, double delta) {
    const ApproxValue v = isosetDistance(a, b, delta);
    return py::make_tuple(v.value, v.factor);
  }, py::arg("a"), py::arg("b"), py::arg("delta") = 0.0,
     "returns (value, factor); the true distance lies in [value/factor, value]");
  m.def("scaled_invariant_distance", [](const PeriodicSet& a, const PeriodicSet& b, double delta) {
    return scaledInvariantDistance(a, b, delta).value;
  }, py::arg("a"), py::arg("b"), py::arg("delta") = 0.0);

  m.def("pdd", [](const PeriodicSet& s, int k) {
    const PDDMatrix p = pdd(s, k);
    std::vector<std::pair<double, std::vector<double>>> rows;
    for (size_t r = 0; r < p.rows.size(); ++r) rows.emplace_back(p.weight(r), p.rows[r].distances);
    return rows;
  }, "weighted PDD rows as (weight, distances) pairs");
  m.def("amd", [](const PeriodicSet& s, int k) { return amd(s, k); });
  m.def("pdd_distance", [](const PeriodicSet& a, const PeriodicSet& b, int k) {
    return pddDistance(pdd(a, k), pdd(b, k));
  });
  m.def("check_lower_bound", [](const PeriodicSet& a, const PeriodicSet& b, double delta) {
    const LowerBoundReport r = checkLowerBound(a, b, delta);
    py::dict d;
    d["applicable"] = r.applicable;
    d["holds"] = r.holds;
    d["alpha"] = r.alpha;
    d["emd_isoset"] = r.emdIsoset;
    d["factor"] = r.factor;
    d["k"] = r.k;
    d["k_min"] = r.kMin;
    d["k_max"] = r.kMax;
    d["emd_pdd"] = r.emdPDD;
    d["note"] = r.note;
    return d;
  }, py::arg("a"), py::arg("b"), py::arg("delta") = 0.0);

  m.def("emd", [](const std::vector<double>& ws, const std::vector<double>& wd,
                  const std::vector<std::vector<double>>& cost) {
    return emd(ws, wd, cost).cost;
  });
}

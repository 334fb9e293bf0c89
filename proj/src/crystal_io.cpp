#include "isoset/crystal_io.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

namespace isoset {

namespace {

using nlohmann::json;

void reduceMotif(CrystalDocument& doc) {
  for (size_t i = 0; i < doc.motifFractional.size(); ++i) {
    Vec& f = doc.motifFractional[i];
    for (int c = 0; c < doc.dim; ++c) {
      if (f[c] < 0.0 || f[c] >= 1.0) {
        const double reduced = f[c] - std::floor(f[c]);
        std::ostringstream msg;
        msg << "motif point " << i << " component " << c << " reduced from "
            << f[c] << " to " << reduced;
        doc.warnings.push_back(msg.str());
        f[c] = reduced;
      }
    }
    for (int c = doc.dim; c < 3; ++c) f[c] = 0.0;
  }
}

double toDouble(const json& v, const char* field) {
  if (!v.is_number()) throw ParseError(std::string("field '") + field + "' must be a number");
  return v.get<double>();
}

// CIF values may carry standard uncertainties like "1.234(5)".
double cifNumber(const std::string& token, int line) {
  const size_t paren = token.find('(');
  const std::string body = paren == std::string::npos ? token : token.substr(0, paren);
  try {
    size_t used = 0;
    const double v = std::stod(body, &used);
    if (used != body.size()) throw std::invalid_argument(body);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": expected a number, got '" + token + "'");
  }
}

std::vector<std::string> splitWs(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

Mat basisFromCellParameters(int dim, const double lengths[3], const double anglesDeg[3]) {
  for (int c = 0; c < dim; ++c) {
    if (!(lengths[c] > 0.0)) throw InvalidCell("cell lengths must be positive");
  }
  const int angleCount = dim == 3 ? 3 : (dim == 2 ? 1 : 0);
  double rad[3] = {M_PI / 2.0, M_PI / 2.0, M_PI / 2.0};
  for (int c = 0; c < angleCount; ++c) {
    const double deg = dim == 2 ? anglesDeg[2] : anglesDeg[c];  // 2D uses gamma
    if (!(deg > 0.0 && deg < 180.0)) throw InvalidCell("cell angles must lie in (0, 180)");
    rad[dim == 2 ? 2 : c] = deg * M_PI / 180.0;
  }

  Mat basis = Mat::Identity();
  if (dim == 1) {
    basis(0, 0) = lengths[0];
    return basis;
  }
  if (dim == 2) {
    basis.col(0) = Vec(lengths[0], 0.0, 0.0);
    basis.col(1) = Vec(lengths[1] * std::cos(rad[2]), lengths[1] * std::sin(rad[2]), 0.0);
    return basis;
  }
  const double ca = std::cos(rad[0]), cb = std::cos(rad[1]);
  const double cg = std::cos(rad[2]), sg = std::sin(rad[2]);
  basis.col(0) = Vec(lengths[0], 0.0, 0.0);
  basis.col(1) = Vec(lengths[1] * cg, lengths[1] * sg, 0.0);
  const double cx = lengths[2] * cb;
  const double cy = lengths[2] * (ca - cb * cg) / sg;
  const double czSq = lengths[2] * lengths[2] - cx * cx - cy * cy;
  if (czSq <= 0.0) throw InvalidCell("cell angles do not define a positive-volume cell");
  basis.col(2) = Vec(cx, cy, std::sqrt(czSq));
  return basis;
}

CrystalDocument parseCrystalJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  CrystalDocument doc;
  doc.id = j.value("id", "");
  if (!j.contains("cell")) throw ParseError("missing 'cell'");
  const json& cell = j["cell"];
  if (cell.contains("basis")) {
    const json& rows = cell["basis"];
    if (!rows.is_array() || rows.empty() || rows.size() > 3) {
      throw ParseError("'cell.basis' must list 1 to 3 basis vectors");
    }
    doc.dim = static_cast<int>(rows.size());
    Mat basis = Mat::Identity();
    for (int r = 0; r < doc.dim; ++r) {
      const json& row = rows[static_cast<size_t>(r)];
      if (!row.is_array() || static_cast<int>(row.size()) != doc.dim) {
        throw ParseError("'cell.basis' rows must have length equal to the dimension");
      }
      for (int c = 0; c < doc.dim; ++c) {
        basis(c, r) = toDouble(row[static_cast<size_t>(c)], "cell.basis");
      }
    }
    doc.basis = basis;
  } else if (cell.contains("lengths")) {
    const json& lens = cell["lengths"];
    if (!lens.is_array() || lens.empty() || lens.size() > 3) {
      throw ParseError("'cell.lengths' must list 1 to 3 values");
    }
    doc.dim = static_cast<int>(lens.size());
    double lengths[3] = {1.0, 1.0, 1.0};
    double angles[3] = {90.0, 90.0, 90.0};
    for (int c = 0; c < doc.dim; ++c) {
      lengths[c] = toDouble(lens[static_cast<size_t>(c)], "cell.lengths");
    }
    if (cell.contains("angles")) {
      const json& ang = cell["angles"];
      if (doc.dim == 3) {
        if (!ang.is_array() || ang.size() != 3) throw ParseError("'cell.angles' must list alpha, beta, gamma");
        for (int c = 0; c < 3; ++c) angles[c] = toDouble(ang[static_cast<size_t>(c)], "cell.angles");
      } else if (doc.dim == 2) {
        if (!ang.is_array() || ang.size() != 1) throw ParseError("'cell.angles' must list gamma only in 2D");
        angles[2] = toDouble(ang[0], "cell.angles");
      }
    }
    doc.basis = basisFromCellParameters(doc.dim, lengths, angles);
  } else {
    throw ParseError("'cell' needs either 'basis' or 'lengths'");
  }

  if (!j.contains("motif") || !j["motif"].is_array() || j["motif"].empty()) {
    throw ParseError("missing or empty 'motif'");
  }
  for (const json& row : j["motif"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != doc.dim) {
      throw ParseError("motif points must have length equal to the dimension");
    }
    Vec f = Vec::Zero();
    for (int c = 0; c < doc.dim; ++c) f[c] = toDouble(row[static_cast<size_t>(c)], "motif");
    doc.motifFractional.push_back(f);
  }
  if (j.contains("labels")) {
    if (!j["labels"].is_array() || j["labels"].size() != doc.motifFractional.size()) {
      throw ParseError("'labels' must match the motif length");
    }
    for (const json& l : j["labels"]) doc.labels.push_back(l.get<std::string>());
  }
  reduceMotif(doc);
  return doc;
}

CrystalDocument parseCrystalCif(const std::string& text) {
  CrystalDocument doc;
  doc.dim = 3;
  double lengths[3] = {0.0, 0.0, 0.0};
  double angles[3] = {90.0, 90.0, 90.0};
  bool haveLength[3] = {false, false, false};

  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  std::vector<std::string> loopTags;
  std::vector<std::vector<std::string>> loopRows;
  bool inLoopHeader = false, inLoopData = false;

  auto flushLoop = [&]() {
    int ix = -1, iy = -1, iz = -1, ilabel = -1;
    for (size_t t = 0; t < loopTags.size(); ++t) {
      if (loopTags[t] == "_atom_site_fract_x") ix = static_cast<int>(t);
      if (loopTags[t] == "_atom_site_fract_y") iy = static_cast<int>(t);
      if (loopTags[t] == "_atom_site_fract_z") iz = static_cast<int>(t);
      if (loopTags[t] == "_atom_site_label" || loopTags[t] == "_atom_site_type_symbol") {
        if (ilabel < 0) ilabel = static_cast<int>(t);
      }
    }
    // Loops other than the atom-site loop are ignored wholesale.
    if (ix >= 0 && iy >= 0 && iz >= 0) {
      const size_t needed = static_cast<size_t>(std::max({ix, iy, iz, ilabel})) + 1;
      for (const auto& row : loopRows) {
        if (row.size() < needed) {
          throw ParseError("atom_site loop row has " + std::to_string(row.size()) +
                           " values, expected at least " + std::to_string(needed));
        }
        Vec f(cifNumber(row[static_cast<size_t>(ix)], lineNo),
              cifNumber(row[static_cast<size_t>(iy)], lineNo),
              cifNumber(row[static_cast<size_t>(iz)], lineNo));
        doc.motifFractional.push_back(f);
        if (ilabel >= 0) doc.labels.push_back(row[static_cast<size_t>(ilabel)]);
      }
    }
    loopTags.clear();
    loopRows.clear();
    inLoopHeader = inLoopData = false;
  };

  while (std::getline(in, line)) {
    ++lineNo;
    const size_t comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    const std::vector<std::string> tokens = splitWs(line);
    if (tokens.empty()) continue;
    const std::string& head = tokens.front();

    if (head == "loop_") {
      flushLoop();
      inLoopHeader = true;
      continue;
    }
    if (inLoopHeader && head[0] == '_') {
      loopTags.push_back(head);
      continue;
    }
    if (inLoopHeader && head[0] != '_') {
      inLoopHeader = false;
      inLoopData = true;
    }
    if (inLoopData) {
      if (head[0] == '_' || head.rfind("data_", 0) == 0) {
        flushLoop();
      } else {
        loopRows.push_back(tokens);
        continue;
      }
    }

    if (head.rfind("data_", 0) == 0 && doc.id.empty()) {
      doc.id = head.substr(5);
      continue;
    }
    if (tokens.size() >= 2) {
      if (head == "_cell_length_a") { lengths[0] = cifNumber(tokens[1], lineNo); haveLength[0] = true; }
      else if (head == "_cell_length_b") { lengths[1] = cifNumber(tokens[1], lineNo); haveLength[1] = true; }
      else if (head == "_cell_length_c") { lengths[2] = cifNumber(tokens[1], lineNo); haveLength[2] = true; }
      else if (head == "_cell_angle_alpha") angles[0] = cifNumber(tokens[1], lineNo);
      else if (head == "_cell_angle_beta") angles[1] = cifNumber(tokens[1], lineNo);
      else if (head == "_cell_angle_gamma") angles[2] = cifNumber(tokens[1], lineNo);
    }
  }
  flushLoop();

  if (!haveLength[0] || !haveLength[1] || !haveLength[2]) {
    throw ParseError("missing _cell_length_a/b/c");
  }
  if (doc.motifFractional.empty()) {
    throw ParseError("no _atom_site_fract_x/y/z loop found");
  }
  doc.basis = basisFromCellParameters(3, lengths, angles);
  reduceMotif(doc);
  return doc;
}

CrystalDocument parseCrystal(const std::string& text, const std::string& idHint) {
  const size_t first = text.find_first_not_of(" \t\r\n");
  CrystalDocument doc;
  if (first != std::string::npos && text[first] == '{') {
    doc = parseCrystalJson(text);
  } else {
    doc = parseCrystalCif(text);
  }
  if (doc.id.empty()) doc.id = idHint;
  return doc;
}

PeriodicSet toPeriodicSet(const CrystalDocument& doc) {
  return PeriodicSet(Lattice(doc.dim, doc.basis), doc.motifFractional, doc.labels);
}

std::string serializeCrystal(const CrystalDocument& doc) {
  json j;
  j["format"] = "isoset-crystal";
  j["version"] = 1;
  j["id"] = doc.id;
  json rows = json::array();
  for (int r = 0; r < doc.dim; ++r) {
    json row = json::array();
    for (int c = 0; c < doc.dim; ++c) row.push_back(doc.basis(c, r));
    rows.push_back(row);
  }
  j["cell"] = {{"basis", rows}};
  json motif = json::array();
  for (const Vec& f : doc.motifFractional) {
    json row = json::array();
    for (int c = 0; c < doc.dim; ++c) row.push_back(f[c]);
    motif.push_back(row);
  }
  j["motif"] = motif;
  if (!doc.labels.empty()) j["labels"] = doc.labels;
  return j.dump(2);
}

}  // namespace isoset

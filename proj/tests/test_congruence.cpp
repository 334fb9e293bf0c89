#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "isoset/congruence.hpp"

using namespace isoset;

namespace {

Cluster applyMap(const Cluster& c, const Mat& q) {
  std::vector<Vec> pts;
  for (const Vec& p : c.points) pts.push_back(q * p);
  return Cluster(c.dim, c.radius, std::move(pts));
}

Cluster randomCluster(std::mt19937& rng, int dim, int count, double radius) {
  std::uniform_real_distribution<double> coord(-radius, radius);
  std::vector<Vec> pts = {Vec::Zero()};
  while (static_cast<int>(pts.size()) < count + 1) {
    Vec p = Vec::Zero();
    for (int c = 0; c < dim; ++c) p[c] = coord(rng);
    if (p.norm() > radius || p.norm() < 0.1) continue;
    bool ok = true;
    for (const Vec& q : pts) {
      if ((p - q).norm() < 0.15) { ok = false; break; }
    }
    if (ok) pts.push_back(p);
  }
  return Cluster(dim, radius, std::move(pts));
}

}  // namespace

TEST_CASE("cluster isometry on rotated copies") {
  SUBCASE("square cluster vs itself rotated by 90 degrees") {
    const Cluster c = alphaCluster(squareLattice(), 0, 2.0);
    Mat rot = Mat::Identity();
    rot(0, 0) = 0; rot(0, 1) = -1;
    rot(1, 0) = 1; rot(1, 1) = 0;
    const auto map = clusterIsometry(c, applyMap(c, rot));
    REQUIRE(map.has_value());
  }
  SUBCASE("different cardinalities reject quickly") {
    const Cluster c = alphaCluster(squareLattice(), 0, 2.0);   // 13 points
    const Cluster d = alphaCluster(hexagonalLattice(), 0, 2.0); // 7... compare below
    CHECK(c.points.size() == 13);
    CHECK(!clusterIsometry(c, d).has_value());
  }
  SUBCASE("chiral 3D cluster vs mirror image needs a reflection") {
    std::vector<Vec> pts = {Vec::Zero(), Vec(1.0, 0.0, 0.0), Vec(0.0, 1.3, 0.0),
                            Vec(0.0, 0.0, 1.7), Vec(0.9, 0.8, 0.5)};
    const Cluster c(3, 2.0, pts);
    Mat mirror = Mat::Identity();
    mirror(2, 2) = -1.0;
    const Cluster d = applyMap(c, mirror);
    const auto map = clusterIsometry(c, d);
    REQUIRE(map.has_value());
    CHECK(map->isReflection);
  }
}

TEST_CASE("cluster isometry is an equivalence on a random corpus") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 1 + trial % 3;
    const Cluster a = randomCluster(rng, dim, 3 + trial % 5, 2.0);
    const Mat q1 = fixtures::randomOrthogonal(rng, dim);
    const Mat q2 = fixtures::randomOrthogonal(rng, dim);
    const Cluster b = applyMap(a, q1);
    const Cluster c = applyMap(b, q2);

    // Reflexive.
    CHECK(clusterIsometry(a, a).has_value());
    // Symmetric: a ~ b and b ~ a.
    const auto ab = clusterIsometry(a, b);
    REQUIRE(ab.has_value());
    CHECK(clusterIsometry(b, a).has_value());
    // Transitive: a ~ c.
    CHECK(clusterIsometry(a, c).has_value());
    // The returned map is orthogonal and really transports a onto b.
    CHECK((ab->matrix * ab->matrix.transpose() - Mat::Identity()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(std::abs(std::abs(ab->matrix.determinant()) - 1.0) < 1e-9);
    CHECK(ab->isReflection == (ab->matrix.determinant() < 0));
    for (const Vec& p : a.points) {
      double best = 1e9;
      for (const Vec& qq : b.points) best = std::min(best, (ab->matrix * p - qq).norm());
      CHECK(best < 1e-6);
    }
  }
}

TEST_CASE("symmetry groups of reference lattices") {
  const SymmetryGroup hexGroup = symmetryGroup(hexagonalLattice(), 0, 1.0);
  CHECK(!hexGroup.continuous);
  CHECK(hexGroup.order() == 12);  // D6

  const SymmetryGroup squareGroup = symmetryGroup(squareLattice(), 0, 1.0);
  CHECK(squareGroup.order() == 8);  // D4

  // Group axioms: closure and inverses stay inside the group.
  auto contains = [&](const Mat& m) {
    for (const OrthogonalMap& e : squareGroup.elements) {
      if ((e.matrix - m).cwiseAbs().maxCoeff() < 1e-7) return true;
    }
    return false;
  };
  for (const OrthogonalMap& x : squareGroup.elements) {
    CHECK(contains(x.matrix.transpose()));  // inverse of an orthogonal map
    for (const OrthogonalMap& y : squareGroup.elements) {
      CHECK(contains(x.matrix * y.matrix));
    }
  }
}

TEST_CASE("symmetry group sentinels and 1D groups") {
  SUBCASE("single-point cluster in 2D is continuous") {
    const SymmetryGroup g = symmetryGroup(fixtures::makeS2(), 4, 1.0);
    CHECK(g.continuous);
    CHECK(g.order() == -1);
  }
  SUBCASE("collinear cluster in 3D is continuous") {
    Mat b = Mat::Identity();
    b(1, 1) = 8.0;
    b(2, 2) = 8.0;
    const PeriodicSet rod(Lattice(3, b), {Vec::Zero()});
    const SymmetryGroup g = symmetryGroup(rod, 0, 1.0);
    CHECK(g.continuous);
    CHECK(g.spanRank == 1);
  }
  SUBCASE("S4: reflection at integer points below 1/4, trivial at 1/4 and beyond") {
    const PeriodicSet s4 = fixtures::makeS4();
    CHECK(symmetryGroup(s4, 0, 0.2).order() == 2);
    CHECK(symmetryGroup(s4, 0, 0.25).order() == 1);
    for (int i = 0; i < 4; ++i) {
      CHECK(symmetryGroup(s4, i, 0.3).order() == 1);
    }
  }
  SUBCASE("subgroup property: order divides the order at smaller radius") {
    const PeriodicSet hex = hexagonalLattice();
    const long long big = symmetryGroup(hex, 0, 2.0).order();
    const long long small = symmetryGroup(hex, 0, 1.0).order();
    CHECK(small % big == 0);
  }
}

TEST_CASE("3D clusters closed under a cyclic rotation group") {
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> coord(-1.5, 1.5);
  Mat quarterTurn = Mat::Identity();
  quarterTurn(0, 0) = 0; quarterTurn(0, 1) = -1;
  quarterTurn(1, 0) = 1; quarterTurn(1, 1) = 0;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Vec> pts = {Vec::Zero()};
    int orbits = 0, guard = 0;
    while (orbits < 3 && guard++ < 1000) {
      const Vec p(coord(rng), coord(rng), coord(rng));
      if (p.norm() < 0.3 || p.norm() > 2.0) continue;
      // Whole orbits only, so the cluster stays closed under the turn.
      std::vector<Vec> orbit;
      Vec q = p;
      for (int r = 0; r < 4; ++r) {
        orbit.push_back(q);
        q = quarterTurn * q;
      }
      bool clash = false;
      for (size_t i = 0; i < orbit.size() && !clash; ++i) {
        for (size_t j = i + 1; j < orbit.size(); ++j) {
          if ((orbit[i] - orbit[j]).norm() < 0.2) { clash = true; break; }
        }
        for (const Vec& existing : pts) {
          if ((orbit[i] - existing).norm() < 0.2) { clash = true; break; }
        }
      }
      if (clash) continue;
      pts.insert(pts.end(), orbit.begin(), orbit.end());
      ++orbits;
    }
    const Cluster c(3, 2.0, pts);
    const SymmetryGroup g = symmetryGroupOfCluster(c);
    REQUIRE(!g.continuous);
    // The seeded 4-fold rotation survives enumeration.
    CHECK(g.order() % 4 == 0);
    bool hasQuarterTurn = false;
    for (const OrthogonalMap& e : g.elements) {
      if ((e.matrix - quarterTurn).cwiseAbs().maxCoeff() < 1e-7) hasQuarterTurn = true;
    }
    CHECK(hasQuarterTurn);
  }
}

TEST_CASE("alpha partitions of the reference sets") {
  SUBCASE("S1 is 1-regular at any radius") {
    for (double alpha : {2.0, 5.0, 7.0}) {
      CHECK(alphaPartition(fixtures::makeS1(), alpha).size() == 1);
    }
  }
  SUBCASE("S2 splits into corners and centers at alpha = 4") {
    const auto classes = alphaPartition(fixtures::makeS2(), 4.0);
    REQUIRE(classes.size() == 2);
    CHECK(classes[0] == std::vector<int>{0, 1, 2, 3});
    CHECK(classes[1] == std::vector<int>{4});
  }
  SUBCASE("S4 splits into 4 classes at alpha >= 1/6") {
    CHECK(alphaPartition(fixtures::makeS4(), 1.0 / 6.0).size() == 4);
    CHECK(alphaPartition(fixtures::makeS4(), 0.75).size() == 4);
    // Partition sizes along the isotree: 1 below 1/12, then 2.
    CHECK(alphaPartition(fixtures::makeS4(), 0.05).size() == 1);
    CHECK(alphaPartition(fixtures::makeS4(), 1.0 / 12.0).size() == 2);
  }
}

TEST_CASE("isosets and weights") {
  SUBCASE("any lattice has a single class of weight 1") {
    const Isoset iso = buildIsoset(hexagonalLattice(), 2.0);
    REQUIRE(iso.classes.size() == 1);
    CHECK(iso.classes[0].weightNum == 1);
    CHECK(iso.classes[0].weightDen == 1);
  }
  SUBCASE("S2 at alpha = 4: weights 4/5 and 1/5") {
    const Isoset iso = buildIsoset(fixtures::makeS2(), 4.0);
    REQUIRE(iso.classes.size() == 2);
    long long num = 0;
    for (const auto& cls : iso.classes) {
      CHECK(cls.weightDen == 5);
      num += cls.weightNum;
    }
    CHECK(num == 5);  // weights sum to 1 exactly
  }
  SUBCASE("S4 at alpha = 3/4: four classes of weight 1/4") {
    const Isoset iso = buildIsoset(fixtures::makeS4(), 0.75);
    REQUIRE(iso.classes.size() == 4);
    for (const auto& cls : iso.classes) {
      CHECK(cls.weightNum == 1);
      CHECK(cls.weightDen == 4);
    }
  }
}

TEST_CASE("isometric: presentation and isometry invariance") {
  SUBCASE("hexagonal lattice under two primitive cells") {
    const PeriodicSet hexA = hexagonalLattice();
    Mat alt = Mat::Identity();
    alt.col(0) = Vec(1.0, 0.0, 0.0);
    alt.col(1) = Vec(-0.5, std::sqrt(3.0) / 2.0, 0.0);
    const PeriodicSet hexB(Lattice(2, alt), {Vec(0.3, 0.7, 0.0)});
    CHECK(isometric(hexA, hexB));
  }
  SUBCASE("square vs hexagonal differ") {
    CHECK(!isometric(squareLattice(), hexagonalLattice()));
  }
  SUBCASE("random sets match their transformed copies and reject perturbations") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 6; ++trial) {
      const int dim = 2 + trial % 2;
      // m >= 2: perturbing the single point of a lattice only translates it.
      const PeriodicSet set = fixtures::randomSet(rng, dim, 2 + trial % 3);
      const Mat q = fixtures::randomOrthogonal(rng, dim);
      Vec shift = Vec::Zero();
      std::uniform_real_distribution<double> off(-0.4, 0.4);
      for (int c = 0; c < dim; ++c) shift[c] = off(rng);
      CHECK(isometric(set, fixtures::transformed(set, q, shift)));

      // Generic single-point perturbation breaks congruence.
      std::vector<Vec> motif = set.motif();
      const double eps = 0.1 * minInterpointDistance(set);
      Vec bump = Vec::Zero();
      bump[0] = 0.6 * eps;
      bump[dim - 1] += 0.5 * eps;
      motif[0] += set.lattice().fractional(bump);
      const PeriodicSet perturbed(set.lattice(), motif);
      CHECK(!isometric(set, perturbed));
    }
  }
  SUBCASE("larger motifs up to m = 8") {
    std::mt19937 rng(53);
    for (int m : {7, 8}) {
      const PeriodicSet set = fixtures::randomSet(rng, 2, m, 0.12);
      const Mat q = fixtures::randomOrthogonal(rng, 2);
      CHECK(isometric(set, fixtures::transformed(set, q, Vec(0.2, -0.1, 0.0))));
    }
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS_AS(isometric(squareLattice(), integerLattice1D()), DimensionMismatch);
  }
}

TEST_CASE("isoset JSON export is canonical") {
  const std::string a = isosetToJson(buildIsoset(fixtures::makeS2(), 4.0));
  const std::string b = isosetToJson(buildIsoset(fixtures::makeS2(), 4.0));
  CHECK(a == b);
  CHECK(a.find("\"weight\"") != std::string::npos);
}

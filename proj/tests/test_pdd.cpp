#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "isoset/metrics.hpp"
#include "isoset/pdd.hpp"

using namespace isoset;

TEST_CASE("PDD of reference lattices") {
  SUBCASE("integer lattice, k = 4") {
    const PDDMatrix p = pdd(integerLattice1D(), 4);
    REQUIRE(p.rows.size() == 1);
    CHECK(p.weight(0) == doctest::Approx(1.0));
    const std::vector<double> want = {1.0, 1.0, 2.0, 2.0};
    for (int c = 0; c < 4; ++c) {
      CHECK(p.rows[0].distances[static_cast<size_t>(c)] ==
            doctest::Approx(want[static_cast<size_t>(c)]).epsilon(1e-12));
    }
  }
  SUBCASE("square and hexagonal rows at k = 12") {
    const PDDMatrix sq = pdd(squareLattice(), 12);
    const PDDMatrix hex = pdd(hexagonalLattice(), 12);
    REQUIRE(sq.rows.size() == 1);
    REQUIRE(hex.rows.size() == 1);
    const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
    const std::vector<double> wantSq = {1, 1, 1, 1, r2, r2, r2, r2, 2, 2, 2, 2};
    const std::vector<double> wantHex = {1, 1, 1, 1, 1, 1, r3, r3, r3, r3, r3, r3};
    for (int c = 0; c < 12; ++c) {
      CHECK(std::abs(sq.rows[0].distances[static_cast<size_t>(c)] -
                     wantSq[static_cast<size_t>(c)]) < 1e-9);
      CHECK(std::abs(hex.rows[0].distances[static_cast<size_t>(c)] -
                     wantHex[static_cast<size_t>(c)]) < 1e-9);
    }
    CHECK(pddDistance(sq, hex) == doctest::Approx(r2 - 1.0).epsilon(1e-9));
  }
  SUBCASE("k mismatch is rejected") {
    CHECK_THROWS_AS(pddDistance(pdd(squareLattice(), 4), pdd(squareLattice(), 6)),
                    NeighborCountMismatch);
  }
}

TEST_CASE("AMD") {
  const std::vector<double> a = amd(integerLattice1D(), 4);
  const std::vector<double> want = {1.0, 1.0, 2.0, 2.0};
  for (int c = 0; c < 4; ++c) {
    CHECK(a[static_cast<size_t>(c)] == doctest::Approx(want[static_cast<size_t>(c)]));
  }

  // 1-regular set: AMD equals the single PDD row.
  const PDDMatrix p1 = pdd(fixtures::makeS1(), 6);
  REQUIRE(p1.rows.size() == 1);
  const std::vector<double> a1 = amd(fixtures::makeS1(), 6);
  for (int c = 0; c < 6; ++c) {
    CHECK(a1[static_cast<size_t>(c)] ==
          doctest::Approx(p1.rows[0].distances[static_cast<size_t>(c)]));
  }

  // S2: weighted average of corner and center rows, against a brute-force
  // neighbor enumeration independent of the ball search.
  const PeriodicSet s2 = fixtures::makeS2();
  const int k = 4;
  std::vector<double> brute(static_cast<size_t>(k), 0.0);
  for (int i = 0; i < s2.motifSize(); ++i) {
    const Vec p = s2.motifCartesian(i);
    std::vector<double> dists;
    for (int x = -10; x <= 10; ++x) {
      for (int y = -10; y <= 10; ++y) {
        for (int j = 0; j < s2.motifSize(); ++j) {
          const Vec q = s2.lattice().cartesian(s2.motif()[static_cast<size_t>(j)] +
                                               Vec(x, y, 0.0));
          const double d = (q - p).norm();
          if (d > 1e-12) dists.push_back(d);
        }
      }
    }
    std::sort(dists.begin(), dists.end());
    for (int c = 0; c < k; ++c) brute[static_cast<size_t>(c)] += dists[static_cast<size_t>(c)] / 5.0;
  }
  const std::vector<double> a2 = amd(s2, k);
  for (int c = 0; c < k; ++c) {
    CHECK(a2[static_cast<size_t>(c)] == doctest::Approx(brute[static_cast<size_t>(c)]).epsilon(1e-12));
  }
}

TEST_CASE("PDD invariance properties") {
  std::mt19937 rng(97);
  SUBCASE("isometry invariance") {
    for (int trial = 0; trial < 6; ++trial) {
      const int dim = 1 + trial % 3;
      const PeriodicSet set = fixtures::randomSet(rng, dim, 1 + trial % 4);
      const Mat q = fixtures::randomOrthogonal(rng, dim);
      Vec shift = Vec::Zero();
      std::uniform_real_distribution<double> off(-0.5, 0.5);
      for (int c = 0; c < dim; ++c) shift[c] = off(rng);
      const PDDMatrix a = pdd(set, 8);
      const PDDMatrix b = pdd(fixtures::transformed(set, q, shift), 8);
      REQUIRE(a.rows.size() == b.rows.size());
      for (size_t r = 0; r < a.rows.size(); ++r) {
        CHECK(a.rows[r].count == b.rows[r].count);
        for (int c = 0; c < 8; ++c) {
          CHECK(std::abs(a.rows[r].distances[static_cast<size_t>(c)] -
                         b.rows[r].distances[static_cast<size_t>(c)]) < 1e-9);
        }
      }
    }
  }
  SUBCASE("presentation invariance under cell doubling") {
    const PeriodicSet hex = hexagonalLattice();
    Mat doubled = hex.lattice().basis();
    doubled.col(1) *= 2.0;
    const PeriodicSet hex2(Lattice(2, doubled), {Vec(0, 0, 0), Vec(0.0, 0.5, 0.0)});
    const PDDMatrix a = pdd(hex, 10);
    const PDDMatrix b = pdd(hex2, 10);
    REQUIRE(a.rows.size() == 1);
    REQUIRE(b.rows.size() == 1);  // identical rows collapse
    for (int c = 0; c < 10; ++c) {
      CHECK(std::abs(a.rows[0].distances[static_cast<size_t>(c)] -
                     b.rows[0].distances[static_cast<size_t>(c)]) < 1e-9);
    }
  }
  SUBCASE("re-ordering lemma: sorting preserves index-wise closeness") {
    std::uniform_real_distribution<double> unit(0.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
      const double eps = 0.01 + 0.1 * unit(rng) / 10.0;
      std::vector<double> c, d;
      for (int i = 0; i < 12; ++i) {
        const double base = unit(rng);
        c.push_back(base);
        d.push_back(base + eps * (2.0 * unit(rng) / 10.0 - 1.0));
      }
      std::shuffle(d.begin(), d.end(), rng);
      // The unordered lists pair up within eps by construction (after the
      // shuffle the pairing is unknown, which is the lemma's setting).
      std::sort(c.begin(), c.end());
      std::sort(d.begin(), d.end());
      for (int i = 0; i < 12; ++i) {
        CHECK(std::abs(c[static_cast<size_t>(i)] - d[static_cast<size_t>(i)]) <= eps + 1e-12);
      }
    }
  }
  SUBCASE("pddDistance is symmetric and satisfies the triangle inequality") {
    for (int trial = 0; trial < 8; ++trial) {
      const PeriodicSet a = fixtures::randomSet(rng, 2, 1 + trial % 3);
      const PeriodicSet b = fixtures::randomSet(rng, 2, 1 + (trial + 1) % 3);
      const PeriodicSet c = fixtures::randomSet(rng, 2, 1 + (trial + 2) % 3);
      const PDDMatrix pa = pdd(a, 6), pb = pdd(b, 6), pc = pdd(c, 6);
      CHECK(std::abs(pddDistance(pa, pb) - pddDistance(pb, pa)) <= 1e-9);
      CHECK(pddDistance(pa, pc) <= pddDistance(pa, pb) + pddDistance(pb, pc) + 1e-9);
    }
  }
}

TEST_CASE("lower bound check") {
  SUBCASE("1D lattices at the smaller stable radius: strict inequality") {
    const double delta = 0.01;
    const LowerBoundReport r = checkLowerBound(integerLattice1D(), integerLattice1D(1.0 + delta),
                                               0.0, 2.0 + 2.0 * delta);
    CHECK(r.applicable);
    CHECK(r.k == 2);
    CHECK(r.emdPDD == doctest::Approx(delta).epsilon(1e-9));
    CHECK(r.emdIsoset == doctest::Approx(2.0 * delta).epsilon(1e-9));
    CHECK(r.holds);
  }
  SUBCASE("1D lattices at the larger stable radius: equality at k = 4") {
    const double delta = 0.01;
    const LowerBoundReport r = checkLowerBound(integerLattice1D(), integerLattice1D(1.0 + delta),
                                               0.0, 2.0 + 4.0 * delta);
    CHECK(r.applicable);
    CHECK(r.kMin == 4);
    CHECK(r.emdPDD == doctest::Approx(2.0 * delta).epsilon(1e-9));
    CHECK(r.holds);
  }
  SUBCASE("identical sets") {
    const PeriodicSet s2 = fixtures::makeS2();
    const LowerBoundReport r = checkLowerBound(s2, s2);
    CHECK(r.applicable);
    CHECK(r.emdIsoset == doctest::Approx(0.0));
    CHECK(r.emdPDD == doctest::Approx(0.0));
    CHECK(r.holds);
  }
  SUBCASE("far-apart sets are reported not applicable") {
    const LowerBoundReport r = checkLowerBound(squareLattice(), hexagonalLattice());
    CHECK(!r.applicable);
  }
}

TEST_CASE("PDD CSV export") {
  const std::string csv = pddToCsv(pdd(integerLattice1D(), 3));
  CHECK(csv.find("\r\n") != std::string::npos);
  CHECK(csv.rfind("1,", 0) == 0);  // weight column first
}

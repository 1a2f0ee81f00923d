#include <doctest.h>

#include <json.hpp>
#include <lambdak/classifier.hpp>
#include <lambdak/genus.hpp>

#include <stdexcept>
#include <vector>

using namespace lambdak;

namespace {

const std::vector<int> kClasses = {1, 5, 7, 11, 13, 17, 19, 23};

IsoCandidateKO cand(int eps, int sigma2p) {
  IsoCandidateKO c;
  c.eps = eps;
  c.sigma2p = Int(sigma2p);
  return c;
}

}  // namespace

TEST_CASE("ko intertwine residue matches the closed form") {
  // Oracle derived by hand from the structure constants: the xi y parts
  // agree automatically and the bR y^2 gap is 2 aX - 48 sigma2' - 2 eps aY.
  for (int aX : kClasses)
    for (int aY : kClasses)
      for (int eps : {1, -1})
        for (int s = -3; s <= 3; ++s)
          CHECK(ko_intertwine_residue(Int(aX), Int(aY), cand(eps, s)) ==
                Int(2 * aX - 48 * s - 2 * eps * aY));
}

TEST_CASE("ko witnesses are canonical and bounded") {
  const KOWitness identity = ko_equivalent(Int(1), Int(1), Int(100));
  REQUIRE(identity.found);
  CHECK(identity.cand.eps == 1);
  CHECK(identity.cand.sigma2p == 0);
  CHECK(identity.cand.sigma2() == 0);

  const KOWitness flip = ko_equivalent(Int(1), Int(23), Int(100));
  REQUIRE(flip.found);
  CHECK(flip.cand.eps == -1);
  CHECK(flip.cand.sigma2p == 1);

  // 25 and 1 are the same class, one shift apart.
  const KOWitness shift = ko_equivalent(Int(25), Int(1), Int(100));
  REQUIRE(shift.found);
  CHECK(shift.cand.eps == 1);
  CHECK(shift.cand.sigma2p == 1);

  CHECK_FALSE(ko_equivalent(Int(1), Int(5), Int(100)).found);
  CHECK_FALSE(ko_equivalent(Int(7), Int(11), Int(100)).found);

  // The witness for (1, 23) sits at sigma2' = 1, outside a zero bound.
  CHECK_FALSE(ko_equivalent(Int(1), Int(23), Int(0)).found);
  CHECK(ko_equivalent(Int(1), Int(23), Int(1)).found);
}

TEST_CASE("ko equivalence over all ordered class pairs tracks the congruence") {
  for (int aX : kClasses)
    for (int aY : kClasses) {
      const bool expected =
          (aX - aY) % 24 == 0 || (aX + aY) % 24 == 0;
      CHECK(ko_equivalent(Int(aX), Int(aY), Int(100)).found == expected);
    }
}

TEST_CASE("perturbing the psi^2 scale rewires the ko table") {
  // With scale 15 the residue becomes 2 aX - 44 sigma2' - 2 eps aY, so the
  // matching rule is congruence mod 22 instead of 24.
  const KOWitness same = ko_equivalent(KOModel(Int(5), Int(15)),
                                       KOModel(Int(19), Int(15)), Int(100));
  CHECK_FALSE(same.found);  // found with the standard scale
  const KOWitness cross = ko_equivalent(KOModel(Int(5), Int(15)),
                                        KOModel(Int(17), Int(15)), Int(100));
  CHECK(cross.found);  // not found with the standard scale
  CHECK(ko_equivalent(Int(5), Int(19), Int(100)).found);
  CHECK_FALSE(ko_equivalent(Int(5), Int(17), Int(100)).found);

  // The identity pair survives the perturbation.
  const KOWitness id15 = ko_equivalent(KOModel(Int(1), Int(15)),
                                       KOModel(Int(1), Int(15)), Int(100));
  REQUIRE(id15.found);
  CHECK(id15.cand.sigma2p == 0);
}

TEST_CASE("k candidate series are normalized and truncated") {
  IsoCandidateK c;
  c.higher = {Int(2), Int(3)};
  const MultiPoly expected = (MultiPoly::variable(0) +
                              MultiPoly::variable(0).pow(2) * Int(2) +
                              MultiPoly::variable(0).pow(3) * Int(3))
                                 .reduce_mod(Int(25));
  CHECK(c.series(3, Int(25)) == expected);

  // Entries beyond the truncation are ignored; coefficients reduce mod p^2.
  IsoCandidateK d;
  d.higher = {Int(27), Int(3), Int(9), Int(9)};
  CHECK(d.series(3, Int(25)) ==
        (MultiPoly::variable(0) + MultiPoly::variable(0).pow(2) * Int(2) +
         MultiPoly::variable(0).pow(3) * Int(3))
            .reduce_mod(Int(25)));

  IsoCandidateK id;
  CHECK(id.series(2, Int(9)) == MultiPoly::variable(0).reduce_mod(Int(9)));
}

TEST_CASE("kp intertwining is sign-determined, not candidate-determined") {
  // p = 3 has one free coefficient mod 9: every candidate works when the
  // signs agree and none works when they differ.
  for (int c = 0; c < 9; ++c) {
    IsoCandidateK alpha;
    alpha.higher = {Int(c)};
    CHECK(kp_intertwine_check(3, 1, 1, alpha));
    CHECK(kp_intertwine_check(3, -1, -1, alpha));
    CHECK_FALSE(kp_intertwine_check(3, 1, -1, alpha));
    CHECK_FALSE(kp_intertwine_check(3, -1, 1, alpha));
  }

  IsoCandidateK id;
  for (long long p : {3LL, 5LL, 7LL}) {
    CHECK(kp_intertwine_check(p, 1, 1, id));
    CHECK(kp_intertwine_check(p, -1, -1, id));
    CHECK_FALSE(kp_intertwine_check(p, 1, -1, id));
  }

  // Noise coefficients in the models do not change the verdict.
  const KModel clean_x(5, 1);
  const KModel noisy_x(5, 1, Int(3), Int(-2));
  const KModel noisy_y(5, 1, Int(-1), Int(4));
  IsoCandidateK alpha;
  alpha.higher = {Int(7), Int(11)};
  CHECK(kp_intertwine_check(clean_x, clean_x, alpha) ==
        kp_intertwine_check(noisy_x, noisy_y, alpha));

  const KModel other(7, 1);
  CHECK_THROWS_AS(kp_intertwine_check(clean_x, other, alpha),
                  std::invalid_argument);
}

TEST_CASE("kp scans: exhaustive for small primes, spot elsewhere") {
  const KpScanResult all3 = kp_scan(3, 1, 1);
  CHECK(all3.exists);
  CHECK(all3.exhaustive);
  CHECK(all3.scanned == 9);
  CHECK(all3.witness.higher == std::vector<Int>{Int(0)});

  const KpScanResult none3 = kp_scan(3, 1, -1);
  CHECK_FALSE(none3.exists);
  CHECK(none3.exhaustive);
  CHECK(none3.scanned == 9);

  const KpScanResult all5 = kp_scan(5, -1, -1);
  CHECK(all5.exists);
  CHECK(all5.scanned == 625);
  CHECK_FALSE(kp_scan(5, -1, 1).exists);

  // Spot values are deduplicated mod p^2.
  const KpScanResult dedup = kp_scan(3, 1, 1, {Int(0), Int(9), Int(18)});
  CHECK(dedup.scanned == 1);
  CHECK_FALSE(dedup.exhaustive);

  const std::vector<Int> spots7 = kp_spot_values(7);
  const std::vector<Int> expected7 = {Int(0), Int(1), Int(6), Int(7), Int(48)};
  CHECK(spots7 == expected7);
  const KpScanResult spot7 = kp_scan(7, 1, 1, kp_spot_values(7));
  CHECK(spot7.exists);
  CHECK(spot7.scanned == 125);  // 5 values, 3 free slots
  CHECK_FALSE(spot7.exhaustive);
  CHECK_FALSE(kp_scan(7, -1, 1, kp_spot_values(7)).exists);
}

TEST_CASE("homotopy equivalence of genus points") {
  const GenusPoint base = GenusPoint::bs3(11);
  CHECK(homotopy_equivalent(base, base));
  CHECK(homotopy_equivalent(base, GenusPoint(Int(-23), {{5, 1}, {7, 1}, {11, 1}})));
  CHECK_FALSE(homotopy_equivalent(base, GenusPoint(Int(5), {{5, 1}, {7, 1}, {11, 1}})));
  CHECK_FALSE(
      homotopy_equivalent(base, GenusPoint(Int(1), {{5, 1}, {7, -1}, {11, 1}})));
  CHECK_THROWS_AS(homotopy_equivalent(base, GenusPoint::bs3(13)),
                  std::invalid_argument);
}

TEST_CASE("compare reports the first distinguishing invariant") {
  const GenusPoint base = GenusPoint::bs3(13);

  const CompareResult self = compare_genus_points(base, base, Int(100));
  CHECK(self.equivalent);
  CHECK(self.distinguisher.empty());
  REQUIRE(self.witness.found);
  CHECK(self.witness.cand.eps == 1);
  CHECK(self.witness.cand.sigma2p == 0);

  // Class 7 differs from class 1 already at (X/2).
  const GenusPoint class7(Int(7), {{5, 1}, {7, 1}, {11, 1}, {13, 1}});
  CHECK(compare_genus_points(base, class7, Int(100)).distinguisher == "(X/2)");

  // Class 5 shares (X/2) with class 1 but differs at (X/3).
  const GenusPoint class5(Int(5), {{5, 1}, {7, 1}, {11, 1}, {13, 1}});
  CHECK(compare_genus_points(base, class5, Int(100)).distinguisher == "(X/3)");

  // Same class, two flipped odd signs: the smallest prime is named.
  const GenusPoint flipped(Int(1), {{5, 1}, {7, -1}, {11, -1}, {13, 1}});
  const CompareResult res = compare_genus_points(base, flipped, Int(100));
  CHECK_FALSE(res.equivalent);
  CHECK(res.distinguisher == "p=7");

  // Equivalent pairs may differ in raw class representative only.
  const GenusPoint mirrored(Int(23), {{5, 1}, {7, 1}, {11, 1}, {13, 1}});
  CHECK(compare_genus_points(base, mirrored, Int(100)).equivalent);
}

TEST_CASE("theorem reproduction is self-consistent") {
  TheoremScanConfig cfg;
  cfg.sigma2_bound = Int(60);
  const TheoremReport rep = theorem_reproduction(cfg);

  CHECK(rep.ko_consistent);
  CHECK(rep.k_consistent);
  CHECK(rep.combined_consistent);
  CHECK(rep.consistent());

  CHECK(rep.ko_table.size() == 64);
  // 4 sign rows for each of p = 3 (always scanned), 5, 7.
  CHECK(rep.k_tables.size() == 12);
  // 4 classes x 2 primes in [5, 7] with free signs: 16 points, 256 pairs.
  CHECK(rep.combined_pairs == 256);

  // Each table entry matches the independent congruence rule.
  for (const auto& entry : rep.ko_table) {
    const bool expected =
        (entry.aX - entry.aY) % 24 == 0 || (entry.aX + entry.aY) % 24 == 0;
    CHECK(entry.witness.found == expected);
    if (entry.aX == entry.aY) {
      CHECK(entry.witness.cand.eps == 1);
      CHECK(entry.witness.cand.sigma2p == 0);
    }
  }
  for (const auto& row : rep.k_tables) {
    CHECK(row.scan.exists == (row.sX == row.sY));
    if (row.p <= 5) CHECK(row.scan.exhaustive);
  }

  const std::string text = rep.to_text();
  CHECK(text.find("KO intertwining") != std::string::npos);
  CHECK(text.find("consistent") != std::string::npos);

  const nlohmann::json doc = nlohmann::json::parse(rep.to_json());
  CHECK(doc["schema"] == 1);
  CHECK(doc["ko_table"].size() == 64);
  CHECK(doc["combined"]["pairs"] == 256);
  CHECK(doc["consistent"].get<bool>());
}

TEST_CASE("model equivalence is an equivalence relation") {
  std::vector<GenusPoint> pts;
  for (int a : {1, 5, 23})
    for (int s5 : {1, -1})
      for (int s7 : {1, -1}) pts.emplace_back(Int(a), std::map<long long, int>{{5, s5}, {7, s7}});

  for (const auto& p : pts) CHECK(compare_genus_points(p, p, Int(50)).equivalent);
  for (const auto& p : pts)
    for (const auto& q : pts) {
      const bool pq = compare_genus_points(p, q, Int(50)).equivalent;
      CHECK(pq == compare_genus_points(q, p, Int(50)).equivalent);
      for (const auto& r : pts) {
        const bool qr = compare_genus_points(q, r, Int(50)).equivalent;
        const bool pr = compare_genus_points(p, r, Int(50)).equivalent;
        if (pq && qr) CHECK(pr);
      }
    }
}

TEST_CASE("built-in classifier suite passes") {
  const Report rep = run_classifier_checks();
  CHECK(rep.all_passed());
  CHECK(rep.failed_count() == 0);
}

#include <doctest.h>

#include <memory>

#include "gforge/backend.hpp"
#include "gforge/constructions.hpp"

using namespace gforge;

TEST_CASE("epimorphism certification for the doubling endomorphism") {
  const Presentation s = build_s();
  auto solver = std::make_shared<BsSolver>(Int(2), Int(3), 0, 1);
  const BrittonBackend back(solver, s.alpha);
  const std::vector<Word> preimages{parse_word("t a t^-1 a^-1", s.alpha, "p"), Word::gen(1)};
  const EpiCheckReport rep = check_epimorphism(s, s, psi_map(), preimages, back);
  CHECK(rep.well_defined);
  CHECK(rep.surjective);
  CHECK(!rep.unknown);
  REQUIRE(rep.relator_results.size() == 1);
  CHECK(rep.relator_results[0].status == WpStatus::Trivial);
  REQUIRE(rep.generator_results.size() == 2);
  for (const WpResult& r : rep.generator_results) CHECK(r.status == WpStatus::Trivial);
}

TEST_CASE("a broken map is flagged, not asserted") {
  const Presentation s = build_s();
  auto solver = std::make_shared<BsSolver>(Int(2), Int(3), 0, 1);
  const BrittonBackend back(solver, s.alpha);
  GenMap bad;
  bad.from_ref = "s";
  bad.to_ref = "s";
  bad.images = {Word::gen(0), Word::gen(0)};  // t -> a kills the relator shape
  const EpiCheckReport rep = check_epimorphism(s, s, bad, {Word::gen(0), Word::gen(1)}, back);
  CHECK(!rep.well_defined);
}

TEST_CASE("wrong preimages fail surjectivity") {
  const Presentation s = build_s();
  auto solver = std::make_shared<BsSolver>(Int(2), Int(3), 0, 1);
  const BrittonBackend back(solver, s.alpha);
  const std::vector<Word> wrong{Word::gen(0), Word::gen(1)};  // psi(a) = a^2 != a
  const EpiCheckReport rep = check_epimorphism(s, s, psi_map(), wrong, back);
  CHECK(rep.well_defined);
  CHECK(!rep.surjective);
}

TEST_CASE("nielsen balls merge exactly when they should") {
  const Presentation s = build_s();
  const BsSolver solver(Int(2), Int(3), 0, 1);
  const Word t = Word::gen(1);
  const Word a = Word::gen(0);

  SUBCASE("an elementary move away") {
    const NielsenOrbitReport rep =
        nielsen_orbit(solver, s.alpha, {{t, a}, {t, t * a}}, 1, 100000, 1);
    CHECK(!rep.budget_exceeded);
    REQUIRE(rep.intersecting.size() == 1);
    CHECK(rep.intersecting[0][0] == 0);
    CHECK(rep.intersecting[0][1] == 1);
    CHECK(!rep.merge_witnesses[0].empty());
  }

  SUBCASE("identical pairs intersect at depth zero") {
    const NielsenOrbitReport rep = nielsen_orbit(solver, s.alpha, {{t, a}, {t, a}}, 0, 1000, 1);
    CHECK(rep.intersecting.size() == 1);
  }

  SUBCASE("distinct image levels stay apart at small depth") {
    const NielsenOrbitReport rep =
        nielsen_orbit(solver, s.alpha, {sigma_pair(0), sigma_pair(1)}, 3, 200000, 1);
    CHECK(!rep.budget_exceeded);
    CHECK(rep.intersecting.empty());
    CHECK(rep.ball_sizes[0] > 1);
    CHECK(rep.ball_sizes[1] > 1);
  }

  SUBCASE("starved budgets are reported") {
    const NielsenOrbitReport rep =
        nielsen_orbit(solver, s.alpha, {sigma_pair(0), sigma_pair(1)}, 8, 10, 1);
    CHECK(rep.budget_exceeded);
  }

  SUBCASE("worker count changes nothing") {
    const NielsenOrbitReport one =
        nielsen_orbit(solver, s.alpha, {sigma_pair(0), sigma_pair(1)}, 3, 200000, 1);
    const NielsenOrbitReport two =
        nielsen_orbit(solver, s.alpha, {sigma_pair(0), sigma_pair(1)}, 3, 200000, 2);
    CHECK(one.ball_sizes == two.ball_sizes);
    CHECK(one.intersecting == two.intersecting);
  }
}

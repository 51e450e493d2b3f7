#include <doctest.h>

#include <memory>

#include "gforge/backend.hpp"
#include "gforge/constructions.hpp"

using namespace gforge;

namespace {

Presentation square() {
  Presentation p;
  p.add_gen("x");
  p.add_gen("y");
  p.add_relator("x y x^-1 y^-1");
  return p;
}

Presentation staircase20() {
  Presentation p;
  p.add_gen("x");
  p.add_gen("y");
  Word r;
  for (int i = 1; i <= 20; ++i) {
    r.push(0, 1);
    r.push(1, i);
  }
  p.add_relator(r);
  return p;
}

}  // namespace

TEST_CASE("britton backend decides its alphabet and defers on the rest") {
  const Presentation q = build_q();
  auto solver = std::make_shared<BsSolver>(Int(2), Int(3), 0, 1);
  const BrittonBackend back(solver, q.alpha);
  CHECK(back.decide(parse_word("t a^2 t^-1 a^-3", q.alpha, "w")).status == WpStatus::Trivial);
  CHECK(back.decide(parse_word("a t a t^-1 a^-1 t a^-1 t^-1", q.alpha, "w")).status ==
        WpStatus::NonTrivial);
  const WpResult foreign = back.decide(parse_word("a1 t a1^-1", q.alpha, "w"));
  CHECK(foreign.status == WpStatus::Unknown);
  // Definite verdicts carry replayable transcripts.
  const WpResult res = back.decide(parse_word("t a^4 t^-1 a^-6", q.alpha, "w"));
  CHECK(res.status == WpStatus::Trivial);
  REQUIRE(res.cert.has_value());
  CHECK(res.cert->engine == "britton");
}

TEST_CASE("raag backend") {
  const Presentation lam = build_lambda();
  auto solver = std::make_shared<RaagSolver>(RaagSolver::from_presentation(lam));
  const RaagBackend back(solver, lam.alpha);
  CHECK(back.decide(parse_word("zeta alpha1 zeta^-1 alpha1^-1", lam.alpha, "w")).status ==
        WpStatus::Trivial);
  CHECK(back.decide(parse_word("zeta alpha2 zeta^-1 alpha2^-1", lam.alpha, "w")).status ==
        WpStatus::NonTrivial);
}

TEST_CASE("bounded backend is sound and honestly unsure") {
  auto sym = std::make_shared<SymmetrizedSet>(build_s());
  const BoundedBackend back(sym);
  const Word r = build_s().relators[0];
  CHECK(back.decide(r).status == WpStatus::Trivial);
  // A commutator witness is beyond any insertion bound, and non-triviality
  // is not something a bounded search can certify.
  const Word c = build_system("s").distinguished.at("c");
  CHECK(back.decide(c).status == WpStatus::Unknown);
}

TEST_CASE("dehn backend demands the metric condition") {
  CHECK_THROWS(DehnBackend(std::make_shared<SymmetrizedSet>(square())));
  auto good = std::make_shared<SymmetrizedSet>(staircase20());
  const DehnBackend back(good);
  CHECK(back.metric_report().pass);
  const Word r = staircase20().relators[0];
  CHECK(back.decide(r).status == WpStatus::Trivial);
  CHECK(back.decide(Word::gen(0) * Word::gen(1)).status == WpStatus::NonTrivial);
  const WpResult res = back.decide(Word::gen(1) * r * Word::gen(1, -1));
  CHECK(res.status == WpStatus::Trivial);
  REQUIRE(res.cert.has_value());
}

TEST_CASE("chain backend returns the first definite answer") {
  const Presentation q = build_q();
  auto bs = std::make_shared<BsSolver>(Int(2), Int(3), 0, 1);
  auto first = std::make_shared<BrittonBackend>(bs, q.alpha);
  auto qsym = std::make_shared<SymmetrizedSet>(build_q());
  auto second = std::make_shared<BoundedBackend>(qsym);
  const ChainBackend chain(std::vector<std::shared_ptr<const WpBackend>>{first, second});

  // First engine answers on pure a, t words.
  const WpResult r1 = chain.decide(parse_word("t a^2 t^-1 a^-3", q.alpha, "w"));
  CHECK(r1.status == WpStatus::Trivial);
  CHECK(r1.method == "britton");
  // Mixed words fall through to the bounded engine.
  const WpResult r2 = chain.decide(parse_word("t t1^-1", q.alpha, "w"));
  CHECK(r2.status == WpStatus::Trivial);
  CHECK(r2.method == "bounded");
  // Nobody can certify this one.
  const WpResult r3 = chain.decide(parse_word("a1 t a t^-1", q.alpha, "w"));
  CHECK(r3.status == WpStatus::Unknown);
}

#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <random>

#include "gforge/constructions.hpp"
#include "gforge/trivializer.hpp"

using namespace gforge;

namespace {

using Rat = boost::multiprecision::cpp_rational;

// Same one-sided affine oracle as the Britton tests: non-identity image
// means the word cannot be trivial, so it must never get a certificate.
bool affine_nontrivial(const Word& w) {
  Rat scale = 1, shift = 0;
  for (const Run& r : w.runs()) {
    if (r.gen == 0) {
      shift += Rat(r.exp);
    } else {
      Rat ratio = Rat(3) / Rat(2);
      Int e = r.exp < 0 ? -r.exp : r.exp;
      Rat f = 1;
      for (Int i = 0; i < e; ++i) f *= ratio;
      if (r.exp < 0) f = 1 / f;
      scale *= f;
      shift *= f;
    }
  }
  return !(scale == 1 && shift == 0);
}

Word random_word(std::mt19937_64& rng, size_t len) {
  Word w;
  std::uniform_int_distribution<int> g(0, 1);
  std::uniform_int_distribution<int> s(0, 1);
  for (size_t i = 0; i < len; ++i) w.push(g(rng), s(rng) ? 1 : -1);
  return w;
}

}  // namespace

TEST_CASE("bounded search finds shallow trivializations") {
  auto sym = std::make_shared<SymmetrizedSet>(build_s());
  const BoundedTrivializer triv(sym);
  const Word r = build_s().relators[0];
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 30; ++iter) {
    const Word g = random_word(rng, 3);
    const Word w = g * (iter % 2 ? r : r.inverse()) * g.inverse();
    const auto cert = triv.certify_trivial(w);
    REQUIRE(cert.has_value());
    triv.replay(*cert, w);  // throws on any invalid step
    const Certificate reparsed = Certificate::parse(cert->serialize());
    triv.replay(reparsed, w);
  }
}

TEST_CASE("two insertions within depth two") {
  auto sym = std::make_shared<SymmetrizedSet>(build_s());
  const BoundedTrivializer triv(sym);
  const Word r = build_s().relators[0];
  const Word a = Word::gen(0);
  const Word w = r * (a * r * a.inverse());
  TrivializeOptions opt;
  opt.depth = 2;
  opt.max_states = 500000;
  const auto cert = triv.certify_trivial(w, opt);
  REQUIRE(cert.has_value());
  triv.replay(*cert, w);
}

TEST_CASE("non-trivial words never get certificates") {
  auto sym = std::make_shared<SymmetrizedSet>(build_s());
  const BoundedTrivializer triv(sym);
  std::mt19937_64 rng(42);
  int tested = 0;
  for (int iter = 0; iter < 60 && tested < 25; ++iter) {
    const Word w = random_word(rng, 6);
    if (!affine_nontrivial(w)) continue;
    ++tested;
    CHECK(!triv.certify_trivial(w).has_value());
  }
  CHECK(tested >= 10);
}

TEST_CASE("budget starvation reports unknown, not false") {
  auto sym = std::make_shared<SymmetrizedSet>(build_s());
  const BoundedTrivializer triv(sym);
  const Word r = build_s().relators[0];
  const Word g = parse_word("t a t", build_s().alpha, "g");
  const Word w = g * r * g.inverse();
  TrivializeOptions tiny;
  tiny.depth = 1;
  tiny.max_states = 2;
  CHECK(!triv.certify_trivial(w, tiny).has_value());
  TrivializeOptions enough;
  enough.depth = 1;
  enough.max_states = 200000;
  CHECK(triv.certify_trivial(w, enough).has_value());
}

TEST_CASE("replay validates the start word") {
  auto sym = std::make_shared<SymmetrizedSet>(build_s());
  const BoundedTrivializer triv(sym);
  const Word r = build_s().relators[0];
  const auto cert = triv.certify_trivial(r);
  REQUIRE(cert.has_value());
  CHECK_THROWS_AS(triv.replay(*cert, r * Word::gen(0)), CertError);
}

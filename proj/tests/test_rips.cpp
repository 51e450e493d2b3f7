#include <doctest.h>

#include <memory>

#include "gforge/backend.hpp"
#include "gforge/constructions.hpp"
#include "gforge/rips.hpp"

using namespace gforge;

TEST_CASE("cover of the two generator system") {
  const Presentation s = build_s();
  const RipsOutput ro = rips_construct(s);

  SUBCASE("shape") {
    CHECK(ro.gamma.num_gens() == s.num_gens() + 2);
    // Original generators keep their names; the kernel letters are fresh.
    for (size_t g = 0; g < s.num_gens(); ++g) CHECK(ro.gamma.alpha.names[g] == s.alpha.names[g]);
    REQUIRE(ro.kernel_gens.size() == 2);
    CHECK(ro.source.to_text() == s.to_text());
  }

  SUBCASE("the metric condition holds and matches a direct recheck") {
    CHECK(ro.metric.pass);
    const PieceReport again = verify_metric_condition(*ro.sym, 6);
    CHECK(again.pass);
    CHECK(again.max_piece == ro.metric.max_piece);
  }

  SUBCASE("projection erases the cover relators to consequences") {
    const FreeImageReport fi = pi0_freely_well_defined(ro);
    CHECK(fi.pass);
    // Kernel generators map to the empty word; the rest to themselves.
    for (size_t g = 0; g < ro.gamma.num_gens(); ++g) {
      const bool is_kernel =
          g == static_cast<size_t>(ro.kernel_gens[0]) || g == static_cast<size_t>(ro.kernel_gens[1]);
      if (is_kernel) {
        CHECK(ro.pi0.images[g].empty());
      } else {
        CHECK(ro.pi0.images[g] == Word::gen(static_cast<int32_t>(g)));
      }
    }
  }

  SUBCASE("normality certificates validate") {
    const NormalityReport nr = verify_normality(ro);
    CHECK(nr.all_pass);
    CHECK(nr.entries.size() == ro.gamma.num_gens() * ro.kernel_gens.size());
  }

  SUBCASE("conjugation table agrees with the group") {
    const DehnBackend backend(ro.sym);
    const ConjTable table(ro.gamma, ro.kernel_gens);
    for (const int32_t k : ro.kernel_gens) {
      for (size_t g = 0; g < s.num_gens(); ++g) {
        for (const int sgn : {1, -1}) {
          const Word gw = Word::gen(static_cast<int32_t>(g), sgn);
          const Word conj = gw * Word::gen(k) * gw.inverse();
          const Word table_word = kernel_conjugate(table, gw, k, 1u << 22);
          for (const Run& r : table_word.runs()) {
            CHECK(table.is_kernel_letter(letter_of(r.gen, 1)));
          }
          const WpResult eq = backend.decide(conj * table_word.inverse());
          CHECK(eq.status == WpStatus::Trivial);
        }
      }
    }
    // Deeper conjugators chain one letter at a time, rightmost first, so
    // the two-letter result is the single-letter rewrite applied twice.
    // Rule images here run to thousands of letters, hence the wide cap.
    const Word deep = Word::gen(0) * Word::gen(1, -1);
    const Word tw = kernel_conjugate(table, deep, ro.kernel_gens[0], 1u << 26);
    const LetterVec inner =
        table.conjugate_word(LetterVec{letter_of(1, -1)},
                             LetterVec{letter_of(ro.kernel_gens[0], 1)}, 1u << 26);
    const LetterVec outer = table.conjugate_word(LetterVec{letter_of(0, 1)}, inner, 1u << 26);
    CHECK(tw == Word::from_letters(outer));
    for (const Run& r : tw.runs()) CHECK(table.is_kernel_letter(letter_of(r.gen, 1)));
    // Predicted letter counts bound the unreduced rewrite.
    const LetterVec sig = deep.to_letters(64);
    LetterVec kw{letter_of(ro.kernel_gens[0], 1)};
    const Int predicted = table.predicted_letters(sig, kw);
    const LetterVec raw = table.conjugate_word(sig, kw, 1u << 26);
    CHECK(Int(raw.size()) <= predicted);  // reduction can only shrink
    CHECK(predicted > 0);
  }

  SUBCASE("conjugation rules chain and invert on a hand-built table") {
    Presentation toy;
    toy.add_gen("x");
    toy.add_gen("y");
    toy.add_gen("k");
    toy.add_gen("j");
    toy.add_relator("x k x^-1 j^-1");
    toy.add_relator("y j y^-1 j^-1 k^-1");
    const ConjTable table(toy, {2, 3});
    const Alphabet& ta = toy.alpha;
    // x k x^-1 = j, so conjugating by y x sends k through j to j's image.
    CHECK(kernel_conjugate(table, parse_word("x", ta, "g"), 2) == parse_word("j", ta, "g"));
    CHECK(kernel_conjugate(table, parse_word("y", ta, "g"), 3) == parse_word("k j", ta, "g"));
    CHECK(kernel_conjugate(table, parse_word("y x", ta, "g"), 2) == parse_word("k j", ta, "g"));
    // Single-letter images invert syntactically: x^-1 j x = k comes for free.
    CHECK(kernel_conjugate(table, parse_word("x^-1", ta, "g"), 3) == parse_word("k", ta, "g"));
    // No relator explains y acting on k, and the table says so.
    CHECK_THROWS_AS(kernel_conjugate(table, parse_word("y", ta, "g"), 2), std::invalid_argument);
  }

  SUBCASE("construction is deterministic") {
    const RipsOutput again = rips_construct(s);
    CHECK(again.gamma.to_text() == ro.gamma.to_text());
    CHECK(again.pi0.to_text(again.gamma.alpha, s.alpha) == ro.pi0.to_text(ro.gamma.alpha, s.alpha));
  }
}

TEST_CASE("parameters escalate until the metric passes") {
  RipsParams tight;
  tight.block_length = 2;
  tight.stride = 1;
  tight.max_attempts = 10;
  const RipsOutput ro = rips_construct(build_s(), tight);
  CHECK(ro.metric.pass);
  CHECK((ro.used.block_length > 2 || ro.used.stride > 1 ||
         (ro.used.block_length == 2 && ro.used.stride == 1)));
  // Exhausted escalation throws rather than emitting a bad cover.
  RipsParams hopeless;
  hopeless.block_length = 1;
  hopeless.stride = 1;
  hopeless.max_attempts = 1;
  CHECK_THROWS(rips_construct(build_s(), hopeless));
}

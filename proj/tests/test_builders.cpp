#include <doctest.h>

#include "gforge/bs.hpp"
#include "gforge/constructions.hpp"
#include "gforge/matrix.hpp"

using namespace gforge;

TEST_CASE("the four packaged systems have the advertised shape") {
  const Presentation s = build_s();
  CHECK(s.alpha.names == std::vector<std::string>{"a", "t"});
  CHECK(s.num_relators() == 1);

  const Presentation b = build_b();
  CHECK(b.alpha.names == std::vector<std::string>{"a1", "t1", "a2", "t2"});
  CHECK(b.num_relators() == 4);

  const Presentation q = build_q();
  CHECK(q.alpha.names == std::vector<std::string>{"a", "t", "a1", "t1", "a2", "t2"});
  CHECK(q.num_relators() == 6);  // balanced
  // The first two generators present the same system as s.
  CHECK(q.relators[0] == s.relators[0]);

  const Presentation lam = build_lambda();
  CHECK(lam.alpha.names == std::vector<std::string>{"alpha1", "tau1", "alpha2", "tau2", "zeta"});
  CHECK(lam.num_relators() == 2);
}

TEST_CASE("distinguished words") {
  const NamedSystem s = build_system("s");
  CHECK(word_to_string(s.distinguished.at("c"), s.pres.alpha) ==
        "a t a t^-1 a^-1 t a^-1 t^-1");
  const NamedSystem b = build_system("b");
  CHECK(word_to_string(b.distinguished.at("c1"), b.pres.alpha) ==
        "a1 t1 a1 t1^-1 a1^-1 t1 a1^-1 t1^-1");
  CHECK(word_to_string(b.distinguished.at("c2"), b.pres.alpha) ==
        "a2 t2 a2 t2^-1 a2^-1 t2 a2^-1 t2^-1");
  CHECK_THROWS(build_system("nope"));
}

TEST_CASE("the doubling endomorphism") {
  const Presentation s = build_s();
  const GenMap psi = psi_map();
  CHECK(psi.images[0] == Word::gen(0, 2));
  CHECK(psi.images[1] == Word::gen(1));
  // Well-defined: the relator maps to a consequence.
  const BsSolver bs(2, 3, 0, 1);
  CHECK(bs.is_trivial(psi.apply(s.relators[0])));
  // psi^n doubles n times.
  for (int n : {0, 1, 2, 5, 30}) {
    CHECK(psi_power(n).images[0] == Word::gen(0, Int(1) << n));
    CHECK(psi_power(n).images[1] == Word::gen(1));
  }
  // Injective on the image side: a has the preimage relation a = psi(t a t^-1 a^-1).
  const Word pre = parse_word("t a t^-1 a^-1", s.alpha, "pre");
  CHECK(bs.equal(psi.apply(pre), Word::gen(0)));
}

TEST_CASE("the six generator endomorphism fixes the new letters") {
  const GenMap big = big_psi_map();
  const Presentation q = build_q();
  CHECK(big.images[0] == Word::gen(0, 2));
  CHECK(big.images[1] == Word::gen(1));
  for (size_t g = 2; g < q.num_gens(); ++g) CHECK(big.images[g] == Word::gen(static_cast<int32_t>(g)));
}

TEST_CASE("level maps send the graph group onto the four generator system") {
  const Presentation lam = build_lambda();
  const Presentation b = build_b();
  for (int n : {0, 1, 2, 4}) {
    const GenMap qn = qn_map(n);
    REQUIRE(qn.images.size() == lam.num_gens());
    CHECK(qn.images[0] == Word::gen(0, Int(1) << n));  // alpha1 -> a1^(2^n)
    CHECK(qn.images[1] == Word::gen(1));               // tau1 -> t1
    CHECK(qn.images[2] == Word::gen(2, Int(1) << n));  // alpha2 -> a2^(2^n)
    CHECK(qn.images[3] == Word::gen(3));               // tau2 -> t2
    CHECK(qn.images[4].empty());                       // zeta dies
    // Well-defined: both commutators land on relators' consequences. zeta
    // maps to 1, so the images are freely trivial.
    for (const Word& r : lam.relators) CHECK(qn.apply(r).empty());
  }
  (void)b;
}

TEST_CASE("preimage words contract to generator powers under the level maps") {
  // In the i-th two-generator block: q_m(w_n) = a_i^(2^(m-n)) for m >= n.
  for (int i : {1, 2}) {
    const BsSolver bs(2, 3, i == 1 ? 0 : 2, i == 1 ? 1 : 3);
    for (int n = 0; n <= 4; ++n) {
      const Word w = sigma_preimage(n, i);
      // Unfold the recursion w_{k+1} = tau w_k tau^-1 w_k^-1 independently.
      Word expect = Word::gen(i == 1 ? 0 : 2);
      const Word tau = Word::gen(i == 1 ? 1 : 3);
      for (int k = 0; k < n; ++k) expect = tau * expect * tau.inverse() * expect.inverse();
      CHECK(w == expect);
      // Reduced length: the tau^-(k-1) tail of w_k eats into w_k^-1's head,
      // so for n >= 1 the count settles at 2^(n+1) + 2n - 2.
      CHECK(w.letter_length() == (n == 0 ? Int(1) : (Int(1) << (n + 1)) + 2 * n - 2));
      for (int m = n; m <= 5; ++m) {
        const Word img = qn_map(m).apply(w);
        CHECK(bs.equal(img, Word::gen(i == 1 ? 0 : 2, Int(1) << (m - n))));
      }
    }
  }
}

TEST_CASE("kernel witnesses die above their level and survive at it") {
  const NamedSystem b = build_system("b");
  const BsSolver bs(2, 3, 0, 1);
  for (int n = 0; n <= 2; ++n) {
    for (int m = n + 1; m <= 3; ++m) {
      const Word u = kernel_witness(n, m);
      CHECK(bs.is_trivial(qn_map(m).apply(u)));
      const Word at_n = qn_map(n).apply(u);
      CHECK(!bs.is_trivial(at_n));
      CHECK(bs.equal(at_n, b.distinguished.at("c1")));
    }
  }
  CHECK_THROWS(kernel_witness(2, 2));  // requires n < m
}

TEST_CASE("generating pairs for the image subgroups") {
  for (int n : {0, 1, 3}) {
    const auto [u, v] = sigma_pair(n);
    CHECK(u == Word::gen(1));
    CHECK(v == Word::gen(0, Int(1) << n));
  }
}

TEST_CASE("map composition chains references") {
  const GenMap p1 = psi_map();
  const GenMap two = compose_genmap(p1, p1);
  CHECK(two.images[0] == Word::gen(0, 4));
  CHECK(two.from_ref == p1.from_ref);
  CHECK(two.to_ref == p1.to_ref);
  CHECK_THROWS(compose_genmap(qn_map(0), psi_map()));  // mismatched refs
}

#include <doctest.h>

#include <numeric>
#include <random>

#include "gforge/constructions.hpp"
#include "gforge/matrix.hpp"

using namespace gforge;

namespace {

Int igcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Determinant by cofactor expansion; k stays tiny here.
Int det(const IntMat& m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Int acc = 0;
  int sign = 1;
  for (size_t c = 0; c < n; ++c) {
    IntMat minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<Int> row;
      for (size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(m[r][cc]);
      minor.push_back(std::move(row));
    }
    acc += sign * m[0][c] * det(minor);
    sign = -sign;
  }
  return acc;
}

// d_k = gcd of all k x k minors; invariant factors are d_k / d_(k-1). An
// independent route to the diagonal, immune to elimination bugs.
std::vector<Int> minors_oracle(const IntMat& m) {
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  std::vector<Int> dk{1};
  for (size_t k = 1; k <= std::min(rows, cols); ++k) {
    Int g = 0;
    std::vector<size_t> rsel(k), csel(k);
    std::iota(rsel.begin(), rsel.end(), 0);
    auto next_comb = [&](std::vector<size_t>& sel, size_t limit) {
      size_t i = k;
      while (i-- > 0) {
        if (sel[i] + 1 <= limit - (k - i)) {
          ++sel[i];
          for (size_t j = i + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
          return true;
        }
      }
      return false;
    };
    do {
      std::iota(csel.begin(), csel.end(), 0);
      do {
        IntMat sub(k, std::vector<Int>(k));
        for (size_t r = 0; r < k; ++r)
          for (size_t c = 0; c < k; ++c) sub[r][c] = m[rsel[r]][csel[c]];
        g = igcd(g, det(sub));
      } while (next_comb(csel, cols));
    } while (next_comb(rsel, rows));
    dk.push_back(g);
    if (g == 0) break;
  }
  std::vector<Int> factors;
  for (size_t k = 1; k < dk.size() && dk[k] != 0; ++k) factors.push_back(dk[k] / dk[k - 1]);
  return factors;
}

IntMat random_matrix(std::mt19937_64& rng, size_t rows, size_t cols, int span) {
  std::uniform_int_distribution<int> d(-span, span);
  IntMat m(rows, std::vector<Int>(cols));
  for (auto& row : m)
    for (Int& x : row) x = d(rng);
  return m;
}

}  // namespace

TEST_CASE("smith normal form against the minors oracle") {
  std::mt19937_64 rng(61);
  for (int iter = 0; iter < 120; ++iter) {
    const size_t rows = 1 + iter % 4;
    const size_t cols = 1 + (iter / 4) % 4;
    IntMat m = random_matrix(rng, rows, cols, 6);
    if (iter % 7 == 0)
      for (Int& x : m[0]) x = 0;  // force rank drops
    const SnfResult snf = smith_normal_form(m);
    const std::vector<Int> expect = minors_oracle(m);
    REQUIRE(snf.diag.size() == expect.size());
    for (size_t i = 0; i < expect.size(); ++i) CHECK(snf.diag[i] == expect[i]);
    for (size_t i = 1; i < snf.diag.size(); ++i) CHECK(snf.diag[i] % snf.diag[i - 1] == 0);
    CHECK(snf.rank == snf.diag.size());
    // The transformation witnesses must actually transform.
    const IntMat prod = mat_mul(mat_mul(snf.u, m), snf.v);
    CHECK(prod == snf.d);
  }
}

TEST_CASE("first homology of standard presentations") {
  SUBCASE("free groups") {
    Presentation f2;
    f2.add_gen("x");
    f2.add_gen("y");
    const H1Result h = homology_h1(f2);
    CHECK(h.free_rank == 2);
    CHECK(h.torsion.empty());
    CHECK(h.pretty() == "Z^2");
  }
  SUBCASE("finite cyclic") {
    Presentation p;
    p.add_gen("x");
    p.add_relator("x^6");
    const H1Result h = homology_h1(p);
    CHECK(h.free_rank == 0);
    REQUIRE(h.torsion.size() == 1);
    CHECK(h.torsion[0] == 6);
  }
  SUBCASE("torsion chain") {
    Presentation p;
    p.add_gen("x");
    p.add_gen("y");
    p.add_relator("x^2 y^4");  // coker of (2 4): Z + torsion 2
    const H1Result h = homology_h1(p);
    CHECK(h.free_rank == 1);
    REQUIRE(h.torsion.size() == 1);
    CHECK(h.torsion[0] == 2);
  }
  SUBCASE("commuting plane") {
    Presentation p;
    p.add_gen("x");
    p.add_gen("y");
    p.add_relator("x y x^-1 y^-1");
    const H1Result h = homology_h1(p);
    CHECK(h.free_rank == 2);
    CHECK(h.torsion.empty());
  }
  SUBCASE("trefoil") {
    Presentation p;
    p.add_gen("x");
    p.add_gen("y");
    p.add_relator("x y x y^-1 x^-1 y^-1");
    const H1Result h = homology_h1(p);
    CHECK(h.free_rank == 1);
    CHECK(h.torsion.empty());
  }
}

TEST_CASE("homology of the packaged systems") {
  const H1Result hs = homology_h1(build_s());
  CHECK(hs.free_rank == 1);
  CHECK(hs.torsion.empty());
  CHECK(homology_h1(build_b()).trivial());
  CHECK(homology_h1(build_q()).trivial());
  const H1Result hl = homology_h1(build_lambda());
  CHECK(hl.free_rank == 5);
  CHECK(hl.torsion.empty());
  CHECK(homology_h1(build_q()).pretty() == "trivial");
}

TEST_CASE("second homology corroboration speaks only when entitled") {
  CHECK(h2_trivial_corroborated(build_b()) == std::optional<bool>(true));
  CHECK(h2_trivial_corroborated(build_q()) == std::optional<bool>(true));
  // Unbalanced or non-perfect presentations get no verdict.
  CHECK(!h2_trivial_corroborated(build_s()).has_value());
  CHECK(!h2_trivial_corroborated(build_lambda()).has_value());
  Presentation balanced_not_perfect;
  balanced_not_perfect.add_gen("x");
  balanced_not_perfect.add_relator("x^5");
  CHECK(!h2_trivial_corroborated(balanced_not_perfect).has_value());
}

TEST_CASE("hom counts to cyclic groups") {
  Presentation plane;
  plane.add_gen("x");
  plane.add_gen("y");
  plane.add_relator("x y x^-1 y^-1");
  for (int n : {2, 3, 4, 5}) {
    CHECK(count_hom_to_zn(plane, n) == Int(n) * n);
  }
  Presentation z6;
  z6.add_gen("x");
  z6.add_relator("x^6");
  CHECK(count_hom_to_zn(z6, 4) == 2);   // gcd(6, 4)
  CHECK(count_hom_to_zn(z6, 9) == 3);   // gcd(6, 9)
  CHECK(count_hom_to_zn(build_q(), 2) == 1);
  CHECK(count_hom_to_zn(build_q(), 3) == 1);
  CHECK(count_hom_to_zn(build_s(), 5) == 5);
  // Five free generators for the graph group.
  CHECK(count_hom_to_zn(build_lambda(), 2) == 32);
}

#include <doctest.h>

#include <memory>

#include "gforge/acceptance.hpp"
#include "gforge/backend.hpp"
#include "gforge/fibre.hpp"
#include "gforge/matrix.hpp"

using namespace gforge;

namespace {

struct ToyBackends {
  std::shared_ptr<const SymmetrizedSet> sym1, sym2;
  std::unique_ptr<BoundedBackend> b1, b2;
  explicit ToyBackends(const FibreInput& in) {
    sym1 = std::make_shared<SymmetrizedSet>(in.gamma);
    sym2 = std::make_shared<SymmetrizedSet>(in.gamma2);
    b1 = std::make_unique<BoundedBackend>(sym1);
    b2 = std::make_unique<BoundedBackend>(sym2);
  }
};

}  // namespace

TEST_CASE("plane fibre: kernel times diagonal") {
  const FibreInput in = toy_commuting_input();
  const ToyBackends bk(in);
  const FibrePresentation fp = emit_fibre(in, *bk.b1, *bk.b2);

  // One hat generator for the kernel, one diagonal generator.
  CHECK(fp.num_hats == 1);
  CHECK(fp.pres.num_gens() == 2);
  REQUIRE(fp.embedding.size() == 2);
  // The hat covers the kernel generator with trivial second coordinate.
  CHECK(fp.embedding[0].first == Word::gen(static_cast<int32_t>(in.kernel_gens[0])));
  CHECK(fp.embedding[0].second.empty());
  CHECK(!fp.embedding[1].second.empty());

  // The pullback of commuting pieces stays abelian of rank two.
  const H1Result h = homology_h1(fp.pres);
  CHECK(h.free_rank == 2);
  CHECK(h.torsion.empty());

  const SubdirectReport sd = verify_subdirect(in, fp);
  CHECK(sd.pass);
  for (const SubdirectEntry& e : sd.entries) {
    CAPTURE(e.check);
    CHECK(e.pass);
  }

  // Every relator's two coordinate images were discharged by the engines.
  for (const FibreRelator& fr : fp.relators) {
    CHECK(fr.first_check.status == WpStatus::Trivial);
    CHECK(fr.second_check.status == WpStatus::Trivial);
  }
}

TEST_CASE("collapsed quotient absorbs the whole factor") {
  const FibreInput in = toy_collapsing_input();
  const ToyBackends bk(in);
  const FibrePresentation fp = emit_fibre(in, *bk.b1, *bk.b2);
  const H1Result h = homology_h1(fp.pres);
  CHECK(h.free_rank == 1);
  CHECK(h.torsion.empty());
  CHECK(verify_subdirect(in, fp).pass);
}

TEST_CASE("emission refuses an unasserted quotient") {
  FibreInput in = toy_commuting_input();
  in.q_aspherical = false;
  const ToyBackends bk(in);
  CHECK_THROWS_AS(emit_fibre(in, *bk.b1, *bk.b2), FibreError);
}

TEST_CASE("kernel generators must die in the quotient") {
  FibreInput in = toy_commuting_input();
  in.kernel_gens = {0};  // x survives in q, so it is not a kernel generator
  const ToyBackends bk(in);
  CHECK_THROWS_AS(emit_fibre(in, *bk.b1, *bk.b2), FibreError);
}

TEST_CASE("the verifier catches a corrupted embedding") {
  const FibreInput in = toy_commuting_input();
  const ToyBackends bk(in);
  FibrePresentation fp = emit_fibre(in, *bk.b1, *bk.b2);
  REQUIRE(verify_subdirect(in, fp).pass);
  // Swap the second coordinate of the diagonal generator for the wrong word.
  fp.embedding[1].second = fp.embedding[1].second * fp.embedding[1].second;
  const SubdirectReport sd = verify_subdirect(in, fp);
  CHECK(!sd.pass);
}

TEST_CASE("a corrupted lift table is caught, not passed through") {
  FibreInput in = toy_commuting_input();
  in.lifts[0] = in.lifts[0] * Word::gen(static_cast<int32_t>(in.kernel_gens[0]), 3) *
                Word::gen(0, 2);  // q-image now differs from f2
  const ToyBackends bk(in);
  bool caught = false;
  try {
    const FibrePresentation fp = emit_fibre(in, *bk.b1, *bk.b2);
    caught = !verify_subdirect(in, fp).pass;
  } catch (const FibreError&) {
    caught = true;
  }
  CHECK(caught);
}

TEST_CASE("embedding text is stable and parseable") {
  const FibreInput in = toy_commuting_input();
  const ToyBackends bk(in);
  const FibrePresentation fp = emit_fibre(in, *bk.b1, *bk.b2);
  const std::string text = fp.embedding_text(in.gamma.alpha, in.gamma2.alpha);
  CHECK(text == fp.embedding_text(in.gamma.alpha, in.gamma2.alpha));
  // One line per generator, each naming both coordinates.
  size_t lines = 0;
  for (const char ch : text) lines += ch == '\n';
  CHECK(lines == fp.pres.num_gens());
  CHECK(text.find("->") != std::string::npos);
  CHECK(text.find('(') != std::string::npos);
}

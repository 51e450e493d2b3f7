#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gforge/backend.hpp"
#include "gforge/presentation.hpp"
#include "gforge/rips.hpp"
#include "gforge/trivializer.hpp"

namespace gforge {

struct FibreError : std::runtime_error {
  std::string family;  // "R1" | "R2" | "" for setup failures
  size_t index = 0;
  FibreError(std::string fam, size_t idx, const std::string& msg)
      : std::runtime_error(msg), family(std::move(fam)), index(idx) {}
};

// The two maps onto a common quotient whose pullback is being presented:
// pi0: gamma -> q with kernel generated by kernel_gens, and f2: gamma2 -> q
// with one gamma-lift per gamma2 generator.
struct FibreInput {
  Presentation gamma;
  std::vector<int32_t> kernel_gens;
  GenMap pi0;
  Presentation q;
  bool q_aspherical = false;  // trusted flag; emission refuses false
  Presentation gamma2;
  GenMap f2;
  std::vector<Word> lifts;  // per gamma2 generator, a gamma-word over pi0-preimages
  std::string gamma_ref = "gamma";
  std::string gamma2_ref = "gamma2";
};

struct KernelExpressOptions {
  Int max_letters = Int(1) << 26;  // budget for materialized kernel words
  TrivializeOptions fallback;   // bounded search for residual skeletons in q
};

struct FibreRelator {
  std::string family;  // "R1" | "R2" | "R3"
  size_t index = 0;    // within the family
  Word word;           // over the output generators
  Word first_coord;    // image in gamma
  Word second_coord;   // image in gamma2
  WpResult first_check;
  WpResult second_check;
};

struct FibrePresentation {
  Presentation pres;
  std::vector<std::pair<Word, Word>> embedding;  // per generator: (gamma, gamma2)
  std::vector<FibreRelator> relators;            // same order as pres.relators
  size_t num_hats = 0;                           // leading generators covering the kernel
  std::string gamma_ref, gamma2_ref;

  // One line per generator: `ident -> ( <gamma-word> , <gamma2-word> )`.
  std::string embedding_text(const Alphabet& gamma_alpha, const Alphabet& gamma2_alpha) const;
};

// Rewrites a gamma-word with trivial q-image into a word over the kernel
// generators, certified equal by the caller's gamma backend afterwards.
// Conjugation bookkeeping is table-driven; a residual generator skeleton is
// matched verbatim against q-relators (which equal kernel words in gamma) or
// decomposed by a bounded search whose certificate is lifted step by step.
// Throws FibreError when the skeleton needs van Kampen data beyond the
// search or when the kernel-letter budget is exceeded.
class KernelExpressor {
 public:
  KernelExpressor(const FibreInput& in, KernelExpressOptions opt = {});
  Word express(const Word& w) const;
  const ConjTable& table() const { return table_; }

 private:
  const FibreInput& in_;
  KernelExpressOptions opt_;
  ConjTable table_;
  std::vector<std::optional<LetterVec>> relator_kernel_words_;  // per q relator
  std::shared_ptr<const SymmetrizedSet> qsym_;

  LetterVec conjugated(const LetterVec& sigma, const LetterVec& kword, const char* what) const;
  LetterVec lift_rotation(size_t cls, size_t rot) const;
};

Word kernel_express(const FibreInput& in, const Word& w, const KernelExpressOptions& opt = {});

// Generators {hat a : kernel} + {d_j : gamma2 generators}; relators R1 (one
// per gamma2 relator) and R2 (conjugation closure, both directions); every
// relator certified coordinate-wise or FibreError is thrown.
FibrePresentation emit_fibre(const FibreInput& in, const WpBackend& gamma_backend,
                             const WpBackend& gamma2_backend,
                             const KernelExpressOptions& opt = {});

struct SubdirectEntry {
  std::string check;
  bool pass = false;
  std::string detail;
};

struct SubdirectReport {
  bool pass = false;
  std::vector<SubdirectEntry> entries;
};

// (i) second coordinates cover the gamma2 generators; (ii) kernel images are
// non-trivial on the gamma side by the short-word criterion; (iii) the lift
// table is coordinate-compatible: pi0(lift_j) = f2(y_j) in q.
SubdirectReport verify_subdirect(const FibreInput& in, const FibrePresentation& fp);

struct PipelineOptions {
  int n_max = 3;
  KernelExpressOptions express;
  RipsParams rips;
};

struct PipelineStage {
  int n = 0;
  bool ok = false;
  std::string error;  // empty when ok
  std::optional<FibrePresentation> fp;
  std::optional<SubdirectReport> subdirect;
  Alphabet gamma_alpha, gamma2_alpha;  // for serializing the embedding
};

// pipeline 'A': gamma2 = gamma over the balanced amalgam, f2 twisted by the
// n-th power of the stable-letter endomorphism. pipeline 'B': gamma2 is the
// right-angled Artin group mapping onto the four-generator system with
// doubling exponents. Stages that exceed the kernel budget report the error
// and the series continues.
std::vector<PipelineStage> emit_series(char pipeline, const PipelineOptions& opt = {});

}  // namespace gforge

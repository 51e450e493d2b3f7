#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gforge/presentation.hpp"
#include "gforge/smallcanc.hpp"

namespace gforge {

struct RipsParams {
  int block_length = 10;  // factors per block word
  int stride = 10;        // exponent range stride between block words
  int max_attempts = 8;   // geometric escalation cap
  int lambda = 6;         // metric condition to enforce
};

// Small-cancellation cover of a presentation: same generators plus two
// kernel generators whose normal closure maps onto the kernel of pi0.
struct RipsOutput {
  Presentation source;
  Presentation gamma;
  GenMap pi0;                        // gamma -> source; kernel generators die
  std::vector<int32_t> kernel_gens;  // generator indices in gamma
  RipsParams used;                   // parameters that passed verification
  PieceReport metric;                // the passing metric report
  std::shared_ptr<const SymmetrizedSet> sym;  // symmetrized closure of gamma
};

// Attaches one fresh block word to every source relator and to every
// conjugate of a kernel generator by a source generator, escalating the
// block parameters geometrically until the metric condition verifies.
// Throws std::runtime_error when the escalation cap is reached.
RipsOutput rips_construct(const Presentation& q, RipsParams params = {});

// Per-relator result of erasing kernel letters and freely reducing: the
// image must be a source relator verbatim or empty.
struct FreeImageReport {
  bool pass = false;
  // For relator i: index of the matched source relator, -1 for empty image,
  // -2 for a mismatch.
  std::vector<int> matched;
};

FreeImageReport pi0_freely_well_defined(const RipsOutput& out);

// Conjugation rewriting rules harvested from relators of the shape
// x^e k^d x^-e * (kernel word): the conjugate of a kernel letter by a
// non-kernel letter is again a kernel word.
class ConjTable {
 public:
  ConjTable(const Presentation& pres, std::vector<int32_t> kernel_gens);

  bool is_kernel_letter(int32_t letter) const;
  // Null when no rule covers (xletter, kletter).
  const LetterVec* lookup(int32_t xletter, int32_t kletter) const;

  // sigma * [kletter] * sigma^-1 rewritten over kernel generators, innermost
  // conjugation first. Kernel letters inside sigma wrap literally. Throws
  // CapExceeded past letter_cap, std::invalid_argument on a missing rule.
  LetterVec conjugate(const LetterVec& sigma, int32_t kletter, size_t letter_cap) const;
  // Same, conjugating a whole kernel word.
  LetterVec conjugate_word(const LetterVec& sigma, const LetterVec& kword,
                           size_t letter_cap) const;

  // Exact letter count conjugate_word would produce before free reduction.
  Int predicted_letters(const LetterVec& sigma, const LetterVec& kword) const;

  const std::vector<int32_t>& kernel_gens() const { return kgens_; }

 private:
  std::vector<int32_t> kgens_;
  std::vector<char> is_k_;                       // by generator index
  std::unordered_map<int64_t, LetterVec> table_;  // (xletter, kletter) -> image
  // Dense signed-letter code local to the kernel generators.
  int kcode(int32_t letter) const;
  int32_t kletter_of_code(int code) const;
};

// g * [kgen] * g^-1 as a kernel word, by table rewriting. g is any word over
// the gamma generators.
Word kernel_conjugate(const RipsOutput& out, const Word& g, int32_t kgen,
                      size_t letter_cap = (1u << 25));
Word kernel_conjugate(const ConjTable& table, const Word& g, int32_t kgen,
                      size_t letter_cap = (1u << 25));

struct NormalityEntry {
  int32_t gen = 0;
  int32_t kgen = 0;
  bool ok = false;
  size_t check_letters = 0;  // length of the word fed to the rewriter
};

struct NormalityReport {
  bool all_pass = false;
  std::vector<NormalityEntry> entries;
};

// Certifies g k g^-1 = kernel_conjugate(g, k) in gamma for every generator g
// and kernel generator k, via the small-cancellation rewriter.
NormalityReport verify_normality(const RipsOutput& out, size_t letter_cap = (1u << 25));

}  // namespace gforge

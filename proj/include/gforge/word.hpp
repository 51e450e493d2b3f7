#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gforge/ints.hpp"

namespace gforge {

// Thrown when an expansion or substitution would exceed a caller-supplied
// size cap. Callers treat this as "too large", not as corruption.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Run {
  int32_t gen = 0;  // generator index, >= 0
  Int exp;          // nonzero

  bool operator==(const Run& o) const { return gen == o.gen && exp == o.exp; }
  bool operator!=(const Run& o) const { return !(*this == o); }
};

// Letters are signed codes +-(gen+1); a LetterVec is always freely reduced
// where stated.
using LetterVec = std::vector<int32_t>;

inline int32_t letter_of(int32_t gen, int s) { return s >= 0 ? gen + 1 : -(gen + 1); }
inline int32_t gen_of_letter(int32_t l) { return (l > 0 ? l : -l) - 1; }
// Dense code for a letter: 2*gen for positive, 2*gen+1 for negative.
inline int32_t code_of_letter(int32_t l) { return 2 * gen_of_letter(l) + (l < 0 ? 1 : 0); }

// A freely reduced word in run-length form: adjacent runs carry distinct
// generators and all exponents are nonzero. Every operation maintains the
// invariant, so structural equality is equality of reduced words.
class Word {
 public:
  Word() = default;

  static Word gen(int32_t g, Int e = 1);
  static Word from_runs(const std::vector<Run>& rs);
  static Word from_letters(const int32_t* p, size_t n);
  static Word from_letters(const LetterVec& v) { return from_letters(v.data(), v.size()); }

  const std::vector<Run>& runs() const { return runs_; }
  bool empty() const { return runs_.empty(); }
  size_t num_runs() const { return runs_.size(); }
  Int letter_length() const;

  // Appends one run, merging/cancelling with the current tail.
  void push(int32_t g, const Int& e);
  void push(const Run& r) { push(r.gen, r.exp); }

  Word& operator*=(const Word& o);
  friend Word operator*(Word a, const Word& b) {
    a *= b;
    return a;
  }
  Word inverse() const;
  // Repeated concatenation; |k| is expected to be small.
  Word pow_small(long long k) const;

  Int exponent_sum(int32_t g) const;
  bool uses_only(const std::function<bool(int32_t)>& allowed) const;
  int32_t max_gen() const;  // -1 when empty

  // w = conj * core * conj^-1 with core cyclically reduced.
  std::pair<Word, Word> cyclic_reduce() const;

  // Expands to signed letters; throws CapExceeded beyond cap letters.
  LetterVec to_letters(size_t cap) const;

  // Generator-wise substitution. Single-run images are applied in run space
  // (letter growth is free); multi-run images are repeated |exp| times and
  // count toward run_cap, as does the total run count of the result.
  Word substitute(const std::vector<Word>& images, size_t run_cap) const;

  bool operator==(const Word& o) const { return runs_ == o.runs_; }
  bool operator!=(const Word& o) const { return !(*this == o); }

  // Shortlex over letter codes: shorter first, then code_of_letter order.
  int compare_shortlex(const Word& o) const;
  bool operator<(const Word& o) const { return compare_shortlex(o) < 0; }

  size_t hash() const;

 private:
  std::vector<Run> runs_;
};

struct WordHash {
  size_t operator()(const Word& w) const { return w.hash(); }
};

struct WordPairHash {
  size_t operator()(const std::pair<Word, Word>& p) const {
    size_t h = p.first.hash();
    return h ^ (p.second.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

// Free reduction of a letter vector, in place.
void free_reduce_letters(LetterVec& v);

}  // namespace gforge

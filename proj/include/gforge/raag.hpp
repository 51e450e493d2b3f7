#pragma once

#include <set>
#include <utility>
#include <vector>

#include "gforge/certificate.hpp"
#include "gforge/presentation.hpp"
#include "gforge/word.hpp"

namespace gforge {

// Word problem in a graph group (right-angled Artin group): generators
// commute exactly along the given edge set. Normal form is the shortlex-least
// linearisation of the fully cancelled word; two words are equal iff their
// normal forms coincide.
class RaagSolver {
 public:
  RaagSolver(size_t num_gens, std::vector<std::pair<int32_t, int32_t>> edges);

  // Extracts the commutation graph from a presentation whose relators are
  // all commutators [x, y]; throws if any relator has another shape.
  static RaagSolver from_presentation(const Presentation& p);

  bool commute(int32_t g, int32_t h) const;
  size_t num_gens() const { return n_; }
  const std::vector<std::pair<int32_t, int32_t>>& edges() const { return edges_; }

  // Fully cancelled (no x ... x^-1 with everything between commuting with x).
  LetterVec reduce(const LetterVec& letters) const;
  Word normal_form(const Word& w, size_t letter_cap = 1u << 22) const;
  bool is_trivial(const Word& w, size_t letter_cap = 1u << 22) const;
  bool equal(const Word& u, const Word& v) const { return normal_form(u) == normal_form(v); }

  // Triviality certificate: a sequence of commute-swap steps on run positions
  // after which free reduction kills the word. Throws CertError if w is not
  // trivial.
  Certificate certify_trivial(const Word& w, const Alphabet& alpha) const;
  // Applies swap steps, validating commutation; returns the final word.
  Word replay(const Certificate& cert, const Word& start) const;

 private:
  size_t n_;
  std::vector<std::pair<int32_t, int32_t>> edges_;
  std::set<std::pair<int32_t, int32_t>> edge_set_;
};

}  // namespace gforge

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gforge/certificate.hpp"
#include "gforge/presentation.hpp"
#include "gforge/word.hpp"

namespace gforge {

// The symmetrized closure of a relator set: all cyclic rotations of all
// relators and their inverses. Rotations are grouped into cyclic classes
// (distinct relators can share a class); a class with minimal cyclic period
// pi contributes exactly pi distinct elements, the rotations of its
// canonical (lexicographically least) representative.
class SymmetrizedSet {
 public:
  struct ClassInfo {
    LetterVec doubled;  // canonical representative repeated twice
    size_t len = 0;
    size_t period = 0;                // number of distinct rotations
    std::vector<size_t> relators;     // source relator indices
  };

  explicit SymmetrizedSet(const Presentation& p);

  const Presentation& pres() const { return pres_; }
  const std::vector<ClassInfo>& classes() const { return classes_; }
  size_t num_elements() const { return num_elements_; }
  size_t min_len() const { return min_len_; }  // 0 when the set is empty
  size_t max_len() const { return max_len_; }
  bool has_empty_relator() const { return has_empty_; }
  const std::string& digest() const { return digest_; }

  // The rotation of class c starting at offset o (o < period).
  LetterVec rotation(size_t c, size_t o) const;
  // Letters of rotation(c, o) after its first `consumed` letters, inverted;
  // the Dehn replacement word.
  LetterVec complement_inverse(size_t c, size_t o, size_t consumed) const;

  // Coordinates of the inverse of rotation (c, o). Requires the rotation
  // index, which is built only for desk-scale sets.
  std::pair<size_t, size_t> inverse_coords(size_t c, size_t o) const;
  bool indexed() const { return indexed_; }
  // Coordinates of an explicit element word, if present.
  std::optional<std::pair<size_t, size_t>> find_element(const LetterVec& w) const;

 private:
  Presentation pres_;
  std::vector<ClassInfo> classes_;
  size_t num_elements_ = 0;
  size_t min_len_ = 0;
  size_t max_len_ = 0;
  bool has_empty_ = false;
  bool indexed_ = false;
  std::map<LetterVec, std::pair<size_t, size_t>> rotation_index_;
  std::string digest_;
};

struct PieceReport {
  int lambda = 6;
  bool pass = false;
  std::string reason;  // set when pass is false for a structural reason
  struct Row {
    size_t class_id;
    size_t len;
    size_t period;
    size_t max_piece;
    bool ok;
  };
  std::vector<Row> rows;
  size_t num_classes = 0;
  size_t num_elements = 0;

  size_t max_piece = 0;
  size_t min_relator_len = 0;
  // Longest piece found, with the two distinct symmetrized elements it
  // prefixes: (class, rotation offset) pairs.
  struct Witness {
    std::string piece;
    size_t class_a = 0, offset_a = 0;
    size_t class_b = 0, offset_b = 0;
  };
  std::optional<Witness> witness;
};

// Exact metric small-cancellation check: for every class, lambda times its
// longest piece must be strictly smaller than its length. Pieces are common
// prefixes of distinct elements, computed via one suffix array over the
// doubled representatives.
PieceReport verify_metric_condition(const SymmetrizedSet& sym, int lambda);

// Word problem in a verified C'(1/6) presentation via Dehn's algorithm:
// repeatedly replace any factor longer than half a relator by the inverse of
// its complement, cyclically. Complete for lambda = 6 (Greendlinger), which
// the constructor demands from its caller.
class DehnSolver {
 public:
  explicit DehnSolver(std::shared_ptr<const SymmetrizedSet> sym);

  struct Outcome {
    bool trivial;
    Certificate cert;  // transcript: relator-apply / rotate steps
    size_t final_letters;
  };
  // Throws CapExceeded if the expanded word exceeds letter_cap letters.
  Outcome decide(const Word& w, size_t letter_cap = (1u << 25)) const;

  // Words shorter than half the shortest relator admit no Dehn step, hence
  // are non-trivial when non-empty. Returns nullopt when inapplicable.
  std::optional<bool> shortword_nontrivial(const Word& w) const;

  // Validates a transcript independently of the matcher and returns the
  // final letter count (0 for verified triviality).
  size_t replay(const Certificate& cert, const Word& start, size_t letter_cap = (1u << 25)) const;

  const SymmetrizedSet& sym() const { return *sym_; }

 private:
  std::shared_ptr<const SymmetrizedSet> sym_;
  struct Matcher;
  std::shared_ptr<Matcher> matcher_;  // built lazily, shared across calls

  Matcher& matcher() const;
};

}  // namespace gforge

#pragma once

#include <memory>
#include <optional>

#include "gforge/certificate.hpp"
#include "gforge/smallcanc.hpp"
#include "gforge/word.hpp"

namespace gforge {

struct TrivializeOptions {
  size_t depth = 2;           // maximum number of relator insertions
  size_t max_states = 200000;
  size_t length_cap = 0;      // 0: start length + 2 * longest relator + 2
};

// Breadth-first search for a trivialization: insert symmetrized relators at
// every position and reduce freely. Sound always; complete only within the
// depth and state budget, so failure means unknown, not non-trivial.
class BoundedTrivializer {
 public:
  explicit BoundedTrivializer(std::shared_ptr<const SymmetrizedSet> sym);

  std::optional<Certificate> certify_trivial(const Word& w, const TrivializeOptions& opt = {}) const;

  // Validates an insertion transcript (relator-apply steps with consumed 0)
  // and checks the final word is empty.
  void replay(const Certificate& cert, const Word& start) const;

  const SymmetrizedSet& sym() const { return *sym_; }

 private:
  std::shared_ptr<const SymmetrizedSet> sym_;
};

}  // namespace gforge

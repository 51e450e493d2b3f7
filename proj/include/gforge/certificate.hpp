#pragma once

#include <string>
#include <vector>

#include "gforge/ints.hpp"

namespace gforge {

struct CertError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One rewriting step. Kinds in use:
//   free-cancel               (no args; words here are kept reduced, so this
//                              is a renormalisation marker)
//   pinch <dir> <k>           Britton sweep: remove t^dir a^(pk or qk) t^-dir,
//                              insert the carried power
//   slide <dir> <k>           Britton sweep: exchange a-power across t^dir
//   commute-swap <runpos>     swap adjacent commuting runs
//   relator-apply <class> <rot> <pos> <consumed> [<when>]
//                             replace `consumed` letters at `pos` matching a
//                             rotation of a symmetrized relator by the inverse
//                             of its complement; consumed=0 inserts. Streaming
//                             transcripts carry a fifth argument: the count of
//                             input letters consumed before the step fires
//   rotate <k>                cyclic shift by k letters (triviality-safe)
struct CertStep {
  std::string kind;
  std::vector<Int> args;
};

// A replayable transcript. `engine` names the replayer, `context` pins the
// inputs it needs (parameters, presentation digest), `start` is the word the
// transcript applies to, rendered in the engine's alphabet.
struct Certificate {
  std::string engine;
  std::string context;
  std::string start;
  std::string claim;  // "trivial" or "normal-form <word>"
  std::vector<CertStep> steps;

  std::string serialize() const;
  static Certificate parse(const std::string& text);
};

}  // namespace gforge

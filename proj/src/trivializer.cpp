#include "gforge/trivializer.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <boost/functional/hash.hpp>

#include "gforge/presentation.hpp"

namespace gforge {

namespace {

struct VecHash {
  size_t operator()(const LetterVec& v) const {
    size_t seed = v.size();
    for (int32_t x : v) boost::hash_combine(seed, x);
    return seed;
  }
};

LetterVec spliced(const LetterVec& base, size_t pos, const LetterVec& ins) {
  LetterVec out;
  out.reserve(base.size() + ins.size());
  out.insert(out.end(), base.begin(), base.begin() + static_cast<ptrdiff_t>(pos));
  out.insert(out.end(), ins.begin(), ins.end());
  out.insert(out.end(), base.begin() + static_cast<ptrdiff_t>(pos), base.end());
  free_reduce_letters(out);
  return out;
}

}  // namespace

BoundedTrivializer::BoundedTrivializer(std::shared_ptr<const SymmetrizedSet> sym) : sym_(std::move(sym)) {
  if (!sym_) throw std::invalid_argument("null symmetrized set");
  if (!sym_->indexed()) {
    throw std::invalid_argument("symmetrized set too large for bounded search");
  }
}

std::optional<Certificate> BoundedTrivializer::certify_trivial(const Word& w,
                                                               const TrivializeOptions& opt) const {
  Certificate cert;
  cert.engine = "bounded-insert";
  cert.context = "pres-sha256=" + sym_->digest();
  cert.start = word_to_string(w, sym_->pres().alpha);
  cert.claim = "trivial";

  LetterVec start = w.to_letters(1 << 22);
  if (start.empty()) return cert;

  const auto& classes = sym_->classes();
  if (classes.empty()) return std::nullopt;
  const size_t cap = opt.length_cap ? opt.length_cap : start.size() + 2 * sym_->max_len() + 2;

  struct Node {
    LetterVec word;
    int32_t parent;
    int32_t cls, rot, pos;  // move that produced this node
    size_t depth;
  };
  std::vector<Node> arena;
  std::unordered_set<LetterVec, VecHash> seen;
  arena.push_back({start, -1, -1, -1, -1, 0});
  seen.insert(start);

  for (size_t qi = 0; qi < arena.size(); ++qi) {
    // Arena references may dangle across push_back; work on a copy.
    const LetterVec base = arena[qi].word;
    const size_t depth = arena[qi].depth;
    if (depth >= opt.depth) continue;
    for (size_t pos = 0; pos <= base.size(); ++pos) {
      for (size_t c = 0; c < classes.size(); ++c) {
        for (size_t o = 0; o < classes[c].period; ++o) {
          LetterVec next = spliced(base, pos, sym_->rotation(c, o));
          if (next.size() > cap) continue;
          if (!seen.insert(next).second) continue;
          const bool done = next.empty();
          arena.push_back({std::move(next), static_cast<int32_t>(qi), static_cast<int32_t>(c),
                           static_cast<int32_t>(o), static_cast<int32_t>(pos), depth + 1});
          if (done) {
            std::vector<CertStep> rev;
            for (int32_t at = static_cast<int32_t>(arena.size() - 1); arena[at].parent >= 0;
                 at = arena[at].parent) {
              const auto [ic, io] = sym_->inverse_coords(static_cast<size_t>(arena[at].cls),
                                                         static_cast<size_t>(arena[at].rot));
              CertStep step;
              step.kind = "relator-apply";
              step.args = {Int(ic), Int(io), Int(arena[at].pos), Int(0)};
              rev.push_back(std::move(step));
            }
            cert.steps.assign(rev.rbegin(), rev.rend());
            return cert;
          }
          if (arena.size() >= opt.max_states) return std::nullopt;
        }
      }
    }
  }
  return std::nullopt;
}

void BoundedTrivializer::replay(const Certificate& cert, const Word& start) const {
  if (cert.engine != "bounded-insert") throw CertError("wrong engine for bounded replay");
  if (cert.context != "pres-sha256=" + sym_->digest()) {
    throw CertError("certificate bound to a different presentation");
  }
  if (cert.start != word_to_string(start, sym_->pres().alpha)) {
    throw CertError("certificate start word mismatch");
  }
  if (cert.claim != "trivial") throw CertError("bounded certificates only claim triviality");

  const auto& classes = sym_->classes();
  LetterVec cur = start.to_letters(1 << 22);
  for (const auto& step : cert.steps) {
    if (step.kind != "relator-apply" || step.args.size() != 4 || step.args[3] != 0) {
      throw CertError("bounded replay expects insertion steps");
    }
    if (step.args[0] < 0 || step.args[0] >= Int(classes.size())) throw CertError("class out of range");
    const size_t cls = static_cast<size_t>(to_ll(step.args[0]));
    if (step.args[1] < 0 || step.args[1] >= Int(classes[cls].period)) throw CertError("rotation out of range");
    const size_t rot = static_cast<size_t>(to_ll(step.args[1]));
    if (step.args[2] < 0 || step.args[2] > Int(cur.size())) throw CertError("position out of range");
    const size_t pos = static_cast<size_t>(to_ll(step.args[2]));
    cur = spliced(cur, pos, sym_->complement_inverse(cls, rot, 0));
  }
  if (!cur.empty()) throw CertError("claimed trivial but residue remains");
}

}  // namespace gforge

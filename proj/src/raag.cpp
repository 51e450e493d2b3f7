#include "gforge/raag.hpp"

#include <algorithm>

namespace gforge {

RaagSolver::RaagSolver(size_t num_gens, std::vector<std::pair<int32_t, int32_t>> edges)
    : n_(num_gens), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.first == e.second) throw std::invalid_argument("RaagSolver: self-loop");
    if (e.first > e.second) std::swap(e.first, e.second);
    edge_set_.insert(e);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

RaagSolver RaagSolver::from_presentation(const Presentation& p) {
  std::vector<std::pair<int32_t, int32_t>> edges;
  for (const Word& r : p.relators) {
    const auto& rs = r.runs();
    bool commutator = rs.size() == 4 && rs[0].gen == rs[2].gen && rs[1].gen == rs[3].gen &&
                      rs[0].exp == -rs[2].exp && rs[1].exp == -rs[3].exp && abs(rs[0].exp) == 1 &&
                      abs(rs[1].exp) == 1;
    if (!commutator) throw std::invalid_argument("RaagSolver: relator is not a commutator of generators");
    edges.emplace_back(rs[0].gen, rs[1].gen);
  }
  return RaagSolver(p.num_gens(), std::move(edges));
}

bool RaagSolver::commute(int32_t g, int32_t h) const {
  if (g == h) return false;
  auto e = g < h ? std::make_pair(g, h) : std::make_pair(h, g);
  return edge_set_.count(e) != 0;
}

LetterVec RaagSolver::reduce(const LetterVec& letters) const {
  LetterVec out;
  out.reserve(letters.size());
  for (int32_t l : letters) {
    int32_t g = gen_of_letter(l);
    bool cancelled = false;
    for (size_t j = out.size(); j-- > 0;) {
      int32_t m = out[j];
      if (m == -l) {
        out.erase(out.begin() + static_cast<ptrdiff_t>(j));
        cancelled = true;
        break;
      }
      if (gen_of_letter(m) == g || !commute(gen_of_letter(m), g)) break;
    }
    if (!cancelled) out.push_back(l);
  }
  return out;
}

Word RaagSolver::normal_form(const Word& w, size_t letter_cap) const {
  LetterVec red = reduce(w.to_letters(letter_cap));
  // Shortlex-least linearisation: repeatedly output the least available
  // letter, where "available" means every earlier non-commuting letter has
  // already been output.
  size_t n = red.size();
  std::vector<bool> used(n, false);
  LetterVec out;
  out.reserve(n);
  for (size_t step = 0; step < n; ++step) {
    size_t best = n;
    for (size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      bool avail = true;
      for (size_t j = 0; j < i && avail; ++j)
        if (!used[j] && (gen_of_letter(red[j]) == gen_of_letter(red[i]) ||
                         !commute(gen_of_letter(red[j]), gen_of_letter(red[i]))))
          avail = false;
      if (avail && (best == n || code_of_letter(red[i]) < code_of_letter(red[best]))) best = i;
    }
    used[best] = true;
    out.push_back(red[best]);
  }
  return Word::from_letters(out);
}

bool RaagSolver::is_trivial(const Word& w, size_t letter_cap) const {
  return reduce(w.to_letters(letter_cap)).empty();
}

Certificate RaagSolver::certify_trivial(const Word& w, const Alphabet& alpha) const {
  Certificate c;
  c.engine = "raag";
  std::string es;
  for (auto& e : edges_) {
    if (!es.empty()) es += ',';
    es += alpha.names.at(static_cast<size_t>(e.first)) + "-" + alpha.names.at(static_cast<size_t>(e.second));
  }
  c.context = "edges=" + (es.empty() ? "none" : es);
  c.start = word_to_string(w, alpha);
  c.claim = "trivial";

  Word cur = w;
  while (!cur.empty()) {
    const auto& rs = cur.runs();
    // Find the closest cancelling pair of runs with a commuting corridor.
    size_t bi = rs.size(), bj = rs.size();
    for (size_t i = 0; i < rs.size() && bi == rs.size(); ++i) {
      for (size_t j = i + 1; j < rs.size(); ++j) {
        if (rs[j].gen == rs[i].gen) {
          if (sign_of(rs[j].exp) != sign_of(rs[i].exp)) {
            bool ok = true;
            for (size_t m = i + 1; m < j && ok; ++m) ok = commute(rs[m].gen, rs[i].gen);
            if (ok) {
              bi = i;
              bj = j;
            }
          }
          break;  // nearer same-gen run blocks longer corridors
        }
        if (!commute(rs[j].gen, rs[i].gen)) break;
      }
    }
    if (bi == rs.size()) throw CertError("raag: word is not trivial");
    // Bubble run bj leftwards until adjacent to bi; each swap is recorded
    // against the word state at the time it is applied.
    Word next = cur;
    for (size_t pos = bj; pos-- > bi + 1;) {
      c.steps.push_back({"commute-swap", {Int(pos)}});
      std::vector<Run> v = next.runs();
      std::swap(v[pos], v[pos + 1]);
      next = Word::from_runs(v);
    }
    cur = next;
  }
  return c;
}

Word RaagSolver::replay(const Certificate& cert, const Word& start) const {
  if (cert.engine != "raag") throw CertError("replay: not a raag certificate");
  Word cur = start;
  for (const CertStep& s : cert.steps) {
    if (s.kind == "free-cancel") continue;
    if (s.kind != "commute-swap" || s.args.size() != 1)
      throw CertError("raag replay: unexpected step " + s.kind);
    size_t pos = static_cast<size_t>(to_ll(s.args[0]));
    const auto& rs = cur.runs();
    if (pos + 1 >= rs.size()) throw CertError("raag replay: swap position out of range");
    if (!commute(rs[pos].gen, rs[pos + 1].gen))
      throw CertError("raag replay: swap of non-commuting runs");
    std::vector<Run> v = rs;
    std::swap(v[pos], v[pos + 1]);
    cur = Word::from_runs(v);
  }
  if (cert.claim == "trivial" && !cur.empty()) throw CertError("raag replay: claimed trivial, is not");
  return cur;
}

}  // namespace gforge

#include "gforge/smallcanc.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gforge/sha256.hpp"

namespace gforge {

namespace {

constexpr int32_t kInf = std::numeric_limits<int32_t>::max();

// Index of the lexicographically least rotation (Zhou's two-pointer scan).
size_t least_rotation(const LetterVec& s) {
  const size_t n = s.size();
  size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    int32_t a = s[(i + k) % n];
    int32_t b = s[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i = std::max(i + k + 1, j);
    } else {
      j = std::max(j + k + 1, i);
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

// Number of distinct rotations: the minimal cyclic period when it divides
// the length, the full length otherwise.
size_t cyclic_period(const LetterVec& w) {
  const size_t n = w.size();
  std::vector<size_t> f(n, 0);
  for (size_t i = 1; i < n; ++i) {
    size_t j = f[i - 1];
    while (j > 0 && w[i] != w[j]) j = f[j - 1];
    if (w[i] == w[j]) ++j;
    f[i] = j;
  }
  const size_t p = n - f[n - 1];
  return (n % p == 0) ? p : n;
}

// Suffix array by rank doubling. Values must be positive; 0 is reserved.
std::vector<int32_t> suffix_array(const std::vector<int32_t>& text) {
  const int32_t n = static_cast<int32_t>(text.size());
  std::vector<int32_t> sa(n), rank(n), tmp(n);
  std::iota(sa.begin(), sa.end(), 0);
  for (int32_t i = 0; i < n; ++i) rank[i] = text[i];
  for (int32_t len = 1;; len *= 2) {
    auto key = [&](int32_t i) {
      return std::make_pair(rank[i], i + len < n ? rank[i + len] : -1);
    };
    std::sort(sa.begin(), sa.end(), [&](int32_t a, int32_t b) { return key(a) < key(b); });
    tmp[sa[0]] = 0;
    for (int32_t r = 1; r < n; ++r) {
      tmp[sa[r]] = tmp[sa[r - 1]] + (key(sa[r - 1]) < key(sa[r]) ? 1 : 0);
    }
    rank = tmp;
    if (rank[sa[n - 1]] == n - 1) break;
  }
  return sa;
}

// Kasai LCP: lcp[r] = longest common prefix of suffixes sa[r-1] and sa[r].
std::vector<int32_t> lcp_array(const std::vector<int32_t>& text, const std::vector<int32_t>& sa) {
  const int32_t n = static_cast<int32_t>(text.size());
  std::vector<int32_t> rank(n), lcp(n, 0);
  for (int32_t r = 0; r < n; ++r) rank[sa[r]] = r;
  int32_t h = 0;
  for (int32_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const int32_t j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
    lcp[rank[i]] = h;
    if (h > 0) --h;
  }
  return lcp;
}

LetterVec rotate_left(const LetterVec& w, size_t k) {
  LetterVec out;
  out.reserve(w.size());
  out.insert(out.end(), w.begin() + static_cast<ptrdiff_t>(k), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<ptrdiff_t>(k));
  return out;
}

// Maximal cyclic strip count: pairs (front, back) that cancel.
size_t cyclic_strip_count(const LetterVec& w) {
  size_t m = 0;
  const size_t n = w.size();
  while (2 * (m + 1) <= n && w[m] == -w[n - 1 - m]) ++m;
  return m;
}

}  // namespace

SymmetrizedSet::SymmetrizedSet(const Presentation& p) : pres_(p) {
  std::map<LetterVec, size_t> canon_to_class;
  for (size_t ri = 0; ri < p.relators.size(); ++ri) {
    const Word& r = p.relators[ri];
    if (r.empty()) {
      has_empty_ = true;
      continue;
    }
    for (int side = 0; side < 2; ++side) {
      const Word w = side ? r.inverse() : r;
      const LetterVec letters = w.to_letters(1u << 26);
      const size_t start = least_rotation(letters);
      LetterVec canon(letters.size());
      for (size_t i = 0; i < letters.size(); ++i) {
        canon[i] = letters[(start + i) % letters.size()];
      }
      auto it = canon_to_class.find(canon);
      if (it == canon_to_class.end()) {
        ClassInfo ci;
        ci.len = canon.size();
        ci.period = cyclic_period(canon);
        ci.doubled = canon;
        ci.doubled.insert(ci.doubled.end(), canon.begin(), canon.end());
        ci.relators.push_back(ri);
        canon_to_class.emplace(std::move(canon), classes_.size());
        classes_.push_back(std::move(ci));
      } else {
        auto& v = classes_[it->second].relators;
        if (v.empty() || v.back() != ri) v.push_back(ri);
      }
    }
  }
  size_t total_rotation_letters = 0;
  for (const auto& c : classes_) {
    num_elements_ += c.period;
    min_len_ = (min_len_ == 0) ? c.len : std::min(min_len_, c.len);
    max_len_ = std::max(max_len_, c.len);
    total_rotation_letters += c.period * c.len;
  }
  if (total_rotation_letters <= (1u << 20)) {
    for (size_t c = 0; c < classes_.size(); ++c) {
      for (size_t o = 0; o < classes_[c].period; ++o) {
        rotation_index_.emplace(rotation(c, o), std::make_pair(c, o));
      }
    }
    indexed_ = true;
  }
  digest_ = sha256_hex(p.to_text());
}

LetterVec SymmetrizedSet::rotation(size_t c, size_t o) const {
  const ClassInfo& ci = classes_.at(c);
  if (o >= ci.period) throw std::out_of_range("rotation offset out of range");
  return LetterVec(ci.doubled.begin() + static_cast<ptrdiff_t>(o),
                   ci.doubled.begin() + static_cast<ptrdiff_t>(o + ci.len));
}

LetterVec SymmetrizedSet::complement_inverse(size_t c, size_t o, size_t consumed) const {
  const ClassInfo& ci = classes_.at(c);
  if (o >= ci.period || consumed > ci.len) throw std::out_of_range("bad complement request");
  LetterVec out;
  out.reserve(ci.len - consumed);
  for (size_t i = ci.len; i > consumed; --i) {
    out.push_back(-ci.doubled[o + i - 1]);
  }
  return out;
}

std::pair<size_t, size_t> SymmetrizedSet::inverse_coords(size_t c, size_t o) const {
  if (!indexed_) throw std::logic_error("symmetrized set too large for rotation index");
  LetterVec rot = rotation(c, o);
  std::reverse(rot.begin(), rot.end());
  for (auto& l : rot) l = -l;
  auto it = rotation_index_.find(rot);
  if (it == rotation_index_.end()) throw std::logic_error("inverse rotation missing from index");
  return it->second;
}

std::optional<std::pair<size_t, size_t>> SymmetrizedSet::find_element(const LetterVec& w) const {
  if (!indexed_) throw std::logic_error("symmetrized set too large for rotation index");
  auto it = rotation_index_.find(w);
  if (it == rotation_index_.end()) return std::nullopt;
  return it->second;
}

PieceReport verify_metric_condition(const SymmetrizedSet& sym, int lambda) {
  PieceReport rep;
  rep.lambda = lambda;
  rep.num_classes = sym.classes().size();
  rep.num_elements = sym.num_elements();
  if (lambda < 2) throw std::invalid_argument("lambda must be at least 2");
  if (sym.has_empty_relator()) {
    rep.pass = false;
    rep.reason = "presentation has an empty relator";
    return rep;
  }
  const auto& classes = sym.classes();
  if (classes.empty()) {
    rep.pass = true;
    return rep;
  }

  // One text: every doubled representative, letters shifted above the class
  // sentinels so all values stay positive and pairwise comparable.
  const int32_t shift = static_cast<int32_t>(classes.size()) + 1;
  std::vector<int32_t> text;
  std::vector<int32_t> owner;   // class id per text position, -1 on sentinels
  std::vector<int32_t> offset;  // offset within the doubled word
  size_t total = 0;
  for (const auto& c : classes) total += c.doubled.size() + 1;
  text.reserve(total);
  owner.reserve(total);
  offset.reserve(total);
  for (size_t c = 0; c < classes.size(); ++c) {
    const auto& d = classes[c].doubled;
    for (size_t i = 0; i < d.size(); ++i) {
      text.push_back(static_cast<int32_t>(code_of_letter(d[i])) + shift);
      owner.push_back(static_cast<int32_t>(c));
      offset.push_back(static_cast<int32_t>(i));
    }
    text.push_back(static_cast<int32_t>(c) + 1);
    owner.push_back(-1);
    offset.push_back(-1);
  }

  const auto sa = suffix_array(text);
  const auto lcp = lcp_array(text, sa);

  // A suffix is marked when it starts one of the class's distinct rotations.
  // The longest piece involving a class is attained between rank-adjacent
  // marked suffixes, with the running minimum of lcp in between.
  std::vector<size_t> maxp(classes.size(), 0);
  bool have_prev = false;
  int32_t prev_class = -1, prev_off = -1;
  size_t prev_len = 0;
  int32_t runmin = kInf;
  for (size_t r = 0; r < sa.size(); ++r) {
    if (r > 0) runmin = std::min(runmin, lcp[r]);
    const int32_t pos = sa[r];
    const int32_t c = owner[pos];
    if (c < 0) continue;
    const int32_t o = offset[pos];
    if (o >= static_cast<int32_t>(classes[c].period)) continue;
    if (have_prev) {
      const size_t cap = std::min(prev_len, classes[c].len);
      const size_t piece = std::min<size_t>(static_cast<size_t>(std::max<int32_t>(runmin == kInf ? 0 : runmin, 0)), cap);
      maxp[prev_class] = std::max(maxp[prev_class], piece);
      maxp[c] = std::max(maxp[c], piece);
      if (piece > rep.max_piece) {
        rep.max_piece = piece;
        PieceReport::Witness wit;
        const auto& d = classes[prev_class].doubled;
        LetterVec letters(d.begin() + prev_off, d.begin() + prev_off + static_cast<ptrdiff_t>(piece));
        wit.piece = word_to_string(Word::from_letters(letters), sym.pres().alpha);
        wit.class_a = static_cast<size_t>(prev_class);
        wit.offset_a = static_cast<size_t>(prev_off);
        wit.class_b = static_cast<size_t>(c);
        wit.offset_b = static_cast<size_t>(o);
        rep.witness = std::move(wit);
      }
    }
    have_prev = true;
    prev_class = c;
    prev_off = o;
    prev_len = classes[c].len;
    runmin = kInf;
  }

  rep.min_relator_len = sym.min_len();
  rep.pass = true;
  for (size_t c = 0; c < classes.size(); ++c) {
    PieceReport::Row row;
    row.class_id = c;
    row.len = classes[c].len;
    row.period = classes[c].period;
    row.max_piece = maxp[c];
    row.ok = static_cast<size_t>(lambda) * maxp[c] < classes[c].len;
    if (!row.ok) rep.pass = false;
    rep.rows.push_back(row);
  }
  return rep;
}

// Generalized suffix automaton over the doubled representatives, with per
// state the smallest rewrite threshold among classes occurring there and a
// witness occurrence of that class.
struct DehnSolver::Matcher {
  struct State {
    int32_t link = -1;
    int32_t len = 0;
    std::vector<std::pair<int32_t, int32_t>> next;  // (letter code, state)
  };

  std::vector<State> st;
  std::vector<int32_t> thr;        // min floor(L/2)+1 over classes seen here
  std::vector<int32_t> thr_class;  // class attaining thr
  std::vector<int32_t> thr_end;    // end index of a witness in that class's doubled word
  std::vector<int32_t> trig;       // min firing length along the link chain
  std::vector<int32_t> cls_len;
  std::vector<int32_t> cls_period;
  std::vector<int32_t> cls_halfplus;

  explicit Matcher(const SymmetrizedSet& sym) {
    size_t total = 0;
    for (const auto& c : sym.classes()) total += c.doubled.size();
    st.reserve(2 * total + 4);
    new_state(-1, 0);

    for (const auto& c : sym.classes()) {
      int32_t last = 0;
      for (int32_t letter : c.doubled) {
        last = extend(last, static_cast<int32_t>(code_of_letter(letter)));
      }
    }

    thr.assign(st.size(), kInf);
    thr_class.assign(st.size(), -1);
    thr_end.assign(st.size(), -1);
    const auto& classes = sym.classes();
    cls_len.resize(classes.size());
    cls_period.resize(classes.size());
    cls_halfplus.resize(classes.size());
    for (size_t c = 0; c < classes.size(); ++c) {
      cls_len[c] = static_cast<int32_t>(classes[c].len);
      cls_period[c] = static_cast<int32_t>(classes[c].period);
      cls_halfplus[c] = static_cast<int32_t>(classes[c].len / 2 + 1);
    }
    for (size_t c = 0; c < classes.size(); ++c) {
      int32_t v = 0;
      const auto& d = classes[c].doubled;
      for (size_t i = 0; i < d.size(); ++i) {
        v = get(v, static_cast<int32_t>(code_of_letter(d[i])));
        assert(v > 0);
        mark(v, static_cast<int32_t>(c), static_cast<int32_t>(i));
      }
    }

    // Counting sort by len; marks flow to link parents (superset endpos),
    // trig flows from parents to children.
    std::vector<int32_t> order = sorted_by_len();
    for (size_t idx = order.size(); idx-- > 0;) {
      const int32_t v = order[idx];
      const int32_t p = st[v].link;
      if (p >= 0 && thr[v] < thr[p]) {
        thr[p] = thr[v];
        thr_class[p] = thr_class[v];
        thr_end[p] = thr_end[v];
      }
    }
    trig.assign(st.size(), kInf);
    for (int32_t v : order) {
      const int32_t p = st[v].link;
      int32_t t = (p >= 0) ? trig[p] : kInf;
      t = std::min(t, fire_len(v));
      trig[v] = t;
    }
  }

  int32_t new_state(int32_t link, int32_t len) {
    State s;
    s.link = link;
    s.len = len;
    st.push_back(std::move(s));
    return static_cast<int32_t>(st.size() - 1);
  }

  int32_t get(int32_t v, int32_t c) const {
    for (const auto& [cc, tt] : st[v].next) {
      if (cc == c) return tt;
    }
    return -1;
  }

  void set(int32_t v, int32_t c, int32_t to) {
    for (auto& [cc, tt] : st[v].next) {
      if (cc == c) {
        tt = to;
        return;
      }
    }
    st[v].next.emplace_back(c, to);
  }

  int32_t clone_of(int32_t q, int32_t len) {
    const int32_t c = new_state(st[q].link, len);
    st[c].next = st[q].next;
    return c;
  }

  int32_t extend(int32_t last, int32_t c) {
    const int32_t ex = get(last, c);
    if (ex != -1) {
      if (st[ex].len == st[last].len + 1) return ex;
      const int32_t clone = clone_of(ex, st[last].len + 1);
      int32_t p = last;
      while (p != -1 && get(p, c) == ex) {
        set(p, c, clone);
        p = st[p].link;
      }
      st[ex].link = clone;
      return clone;
    }
    const int32_t cur = new_state(0, st[last].len + 1);
    int32_t p = last;
    while (p != -1 && get(p, c) == -1) {
      set(p, c, cur);
      p = st[p].link;
    }
    if (p != -1) {
      const int32_t q = get(p, c);
      if (st[q].len == st[p].len + 1) {
        st[cur].link = q;
      } else {
        const int32_t clone = clone_of(q, st[p].len + 1);
        while (p != -1 && get(p, c) == q) {
          set(p, c, clone);
          p = st[p].link;
        }
        st[q].link = clone;
        st[cur].link = clone;
      }
    }
    return cur;
  }

  void mark(int32_t v, int32_t cls, int32_t end) {
    const int32_t cand = cls_halfplus[cls];
    if (cand < thr[v]) {
      thr[v] = cand;
      thr_class[v] = cls;
      thr_end[v] = end;
    }
  }

  std::vector<int32_t> sorted_by_len() const {
    int32_t maxlen = 0;
    for (const auto& s : st) maxlen = std::max(maxlen, s.len);
    std::vector<int32_t> cnt(maxlen + 2, 0);
    for (const auto& s : st) ++cnt[s.len + 1];
    for (int32_t i = 1; i <= maxlen + 1; ++i) cnt[i] += cnt[i - 1];
    std::vector<int32_t> order(st.size());
    for (int32_t v = 0; v < static_cast<int32_t>(st.size()); ++v) order[cnt[st[v].len]++] = v;
    return order;
  }

  int32_t minlen(int32_t v) const { return v > 0 ? st[st[v].link].len + 1 : 0; }

  int32_t fire_len(int32_t v) const {
    if (thr[v] == kInf || thr[v] > st[v].len) return kInf;
    return std::max(thr[v], minlen(v));
  }

  // Longest-suffix matching step; keeps the invariant ell <= len(v).
  void advance(int32_t& v, int32_t& ell, int32_t code) const {
    while (true) {
      const int32_t nx = get(v, code);
      if (nx >= 0) {
        v = nx;
        ++ell;
        return;
      }
      if (v == 0) {
        ell = 0;
        return;
      }
      v = st[v].link;
      ell = st[v].len;
    }
  }

  struct Fire {
    int32_t cls;
    int32_t rot;
    int32_t consumed;
  };

  // Deepest chain state admitting a rewrite of the current matched suffix,
  // with the factor length capped (the cap keeps cyclic rewrites no longer
  // than the word itself).
  std::optional<Fire> resolve(int32_t v, int32_t ell, int32_t cap) const {
    for (int32_t u = v; u != -1; u = st[u].link) {
      if (thr[u] == kInf || ell < minlen(u)) continue;
      const int32_t cls = thr_class[u];
      const int32_t lpp = std::min(std::min(ell, st[u].len), std::min(cls_len[cls], cap));
      if (lpp < thr[u]) continue;
      const int32_t end = thr_end[u];
      const int32_t start = end - lpp + 1;
      assert(start >= 0);
      // The representative's letters repeat with the class period, so the
      // rotation offset reduces mod the period.
      return Fire{cls, start % cls_period[cls], lpp};
    }
    return std::nullopt;
  }
};

DehnSolver::DehnSolver(std::shared_ptr<const SymmetrizedSet> sym) : sym_(std::move(sym)) {
  if (!sym_) throw std::invalid_argument("null symmetrized set");
}

DehnSolver::Matcher& DehnSolver::matcher() const {
  if (!matcher_) {
    const_cast<DehnSolver*>(this)->matcher_ = std::make_shared<Matcher>(*sym_);
  }
  return *matcher_;
}

std::optional<bool> DehnSolver::shortword_nontrivial(const Word& w) const {
  auto [core, conj] = w.cyclic_reduce();
  (void)conj;
  if (core.empty()) return std::nullopt;
  if (sym_->classes().empty()) return true;
  const Int n = core.letter_length();
  if (2 * n <= Int(sym_->min_len())) return true;
  return std::nullopt;
}

DehnSolver::Outcome DehnSolver::decide(const Word& w, size_t letter_cap) const {
  Matcher& m = matcher();

  Certificate cert;
  cert.engine = "dehn-stream";
  cert.context = "pres-sha256=" + sym_->digest();
  cert.start = word_to_string(w, sym_->pres().alpha);

  LetterVec cur = w.to_letters(letter_cap);
  long long counter = 0;

  // One streaming pass with rewrites; fires are recorded with the running
  // processed-letter counter so a replay can align them exactly.
  auto linear_pass = [&](const LetterVec& input) {
    LetterVec stack;
    std::vector<int32_t> states;
    std::vector<int32_t> mlens;
    stack.reserve(input.size());
    states.reserve(input.size());
    mlens.reserve(input.size());
    LetterVec pending;  // LIFO: processed before remaining input
    size_t ii = 0;
    while (ii < input.size() || !pending.empty()) {
      int32_t letter;
      if (!pending.empty()) {
        letter = pending.back();
        pending.pop_back();
      } else {
        letter = input[ii++];
      }
      ++counter;
      if (!stack.empty() && stack.back() == -letter) {
        stack.pop_back();
        states.pop_back();
        mlens.pop_back();
        continue;
      }
      int32_t v = stack.empty() ? 0 : states.back();
      int32_t ell = stack.empty() ? 0 : mlens.back();
      m.advance(v, ell, static_cast<int32_t>(code_of_letter(letter)));
      stack.push_back(letter);
      states.push_back(v);
      mlens.push_back(ell);
      if (ell >= m.trig[v]) {
        auto fire = m.resolve(v, ell, kInf);
        assert(fire.has_value());
        if (fire) {
          const size_t cls = static_cast<size_t>(fire->cls);
          const size_t consumed = static_cast<size_t>(fire->consumed);
          const size_t rot = static_cast<size_t>(fire->rot);
          const size_t pos = stack.size() - consumed;
          CertStep step;
          step.kind = "relator-apply";
          step.args = {Int(cls), Int(rot), Int(pos), Int(consumed), Int(counter)};
          cert.steps.push_back(std::move(step));
          stack.resize(pos);
          states.resize(pos);
          mlens.resize(pos);
          LetterVec repl = sym_->complement_inverse(cls, rot, consumed);
          pending.insert(pending.end(), repl.rbegin(), repl.rend());
        }
      }
    }
    return stack;
  };

  while (true) {
    LetterVec result = linear_pass(cur);
    if (result.empty()) {
      cur = std::move(result);
      break;
    }
    const size_t strip = cyclic_strip_count(result);
    if (strip > 0) {
      CertStep step;
      step.kind = "rotate";
      step.args = {Int(strip)};
      cert.steps.push_back(std::move(step));
      cur = rotate_left(result, strip);
      free_reduce_letters(cur);
      continue;
    }
    // Cyclically reduced fixpoint of the linear scan: probe the doubled word
    // for a rewrite spanning the seam.
    const size_t n = result.size();
    int32_t v = 0, ell = 0;
    std::optional<size_t> rotate_by;
    for (size_t s = 0; s < 2 * n; ++s) {
      const int32_t letter = result[s % n];
      m.advance(v, ell, static_cast<int32_t>(code_of_letter(letter)));
      if (s + 1 > n && ell >= m.trig[v]) {
        auto fire = m.resolve(v, ell, static_cast<int32_t>(n));
        if (!fire) continue;
        const size_t span_start = s + 1 - static_cast<size_t>(fire->consumed);
        if (span_start >= n) continue;
        rotate_by = s + 1 - n;
        break;
      }
    }
    if (rotate_by.has_value() && *rotate_by > 0) {
      CertStep step;
      step.kind = "rotate";
      step.args = {Int(*rotate_by)};
      cert.steps.push_back(std::move(step));
      cur = rotate_left(result, *rotate_by);
      continue;
    }
    cur = std::move(result);
    break;
  }

  Outcome out;
  out.trivial = cur.empty();
  out.final_letters = cur.size();
  if (out.trivial) {
    cert.claim = "trivial";
  } else {
    cert.claim = "normal-form " + word_to_string(Word::from_letters(cur), sym_->pres().alpha);
  }
  out.cert = std::move(cert);
  return out;
}

size_t DehnSolver::replay(const Certificate& cert, const Word& start, size_t letter_cap) const {
  if (cert.engine != "dehn-stream") throw CertError("wrong engine for dehn replay");
  if (cert.context != "pres-sha256=" + sym_->digest()) {
    throw CertError("certificate bound to a different presentation");
  }
  if (cert.start != word_to_string(start, sym_->pres().alpha)) {
    throw CertError("certificate start word mismatch");
  }
  const auto& classes = sym_->classes();

  LetterVec cur = start.to_letters(letter_cap);
  long long counter = 0;
  size_t si = 0;

  while (true) {
    LetterVec stack;
    stack.reserve(cur.size());
    LetterVec pending;
    size_t ii = 0;
    while (ii < cur.size() || !pending.empty()) {
      int32_t letter;
      if (!pending.empty()) {
        letter = pending.back();
        pending.pop_back();
      } else {
        letter = cur[ii++];
      }
      ++counter;
      if (!stack.empty() && stack.back() == -letter) {
        stack.pop_back();
        continue;
      }
      stack.push_back(letter);
      while (si < cert.steps.size() && cert.steps[si].kind == "relator-apply" &&
             cert.steps[si].args.size() == 5 && cert.steps[si].args[4] == Int(counter)) {
        const auto& a = cert.steps[si].args;
        if (a[0] < 0 || a[0] >= Int(classes.size())) throw CertError("relator class out of range");
        const size_t cls = static_cast<size_t>(to_ll(a[0]));
        if (a[1] < 0 || a[1] >= Int(classes[cls].period)) throw CertError("rotation out of range");
        const size_t rot = static_cast<size_t>(to_ll(a[1]));
        if (a[3] < 1 || a[3] > Int(classes[cls].len)) throw CertError("consumed out of range");
        const size_t consumed = static_cast<size_t>(to_ll(a[3]));
        if (consumed > stack.size()) throw CertError("match longer than stack");
        const size_t pos = stack.size() - consumed;
        if (a[2] != Int(pos)) throw CertError("match position mismatch");
        const LetterVec rotw = sym_->rotation(cls, rot);
        for (size_t i = 0; i < consumed; ++i) {
          if (stack[pos + i] != rotw[i]) throw CertError("matched factor differs from relator");
        }
        stack.resize(pos);
        LetterVec repl = sym_->complement_inverse(cls, rot, consumed);
        pending.insert(pending.end(), repl.rbegin(), repl.rend());
        ++si;
      }
    }
    if (si < cert.steps.size() && cert.steps[si].kind == "rotate") {
      const auto& a = cert.steps[si].args;
      if (a.size() != 1 || a[0] < 0 || a[0] > Int(stack.size())) throw CertError("bad rotate step");
      cur = rotate_left(stack, static_cast<size_t>(to_ll(a[0])));
      free_reduce_letters(cur);
      ++si;
      continue;
    }
    cur = std::move(stack);
    break;
  }

  if (si != cert.steps.size()) throw CertError("unused certificate steps");
  if (cert.claim == "trivial") {
    if (!cur.empty()) throw CertError("claimed trivial but residue remains");
  } else if (cert.claim.rfind("normal-form ", 0) == 0) {
    const Word want = parse_word(cert.claim.substr(12), sym_->pres().alpha, "claim");
    if (!(Word::from_letters(cur) == want)) throw CertError("final word differs from claim");
  } else {
    throw CertError("unknown claim");
  }
  return cur.size();
}

}  // namespace gforge

#include "gforge/word.hpp"

#include <algorithm>

#include <boost/functional/hash.hpp>

namespace gforge {

Word Word::gen(int32_t g, Int e) {
  Word w;
  if (e != 0) w.runs_.push_back({g, std::move(e)});
  return w;
}

Word Word::from_runs(const std::vector<Run>& rs) {
  Word w;
  for (const Run& r : rs) w.push(r.gen, r.exp);
  return w;
}

Word Word::from_letters(const int32_t* p, size_t n) {
  Word w;
  for (size_t i = 0; i < n; ++i) w.push(gen_of_letter(p[i]), p[i] > 0 ? 1 : -1);
  return w;
}

Int Word::letter_length() const {
  Int n = 0;
  for (const Run& r : runs_) n += abs(r.exp);
  return n;
}

void Word::push(int32_t g, const Int& e) {
  if (e == 0) return;
  if (!runs_.empty() && runs_.back().gen == g) {
    runs_.back().exp += e;
    if (runs_.back().exp == 0) runs_.pop_back();
    return;
  }
  runs_.push_back({g, e});
}

Word& Word::operator*=(const Word& o) {
  if (this == &o) {
    Word copy = o;
    for (const Run& r : copy.runs_) push(r.gen, r.exp);
    return *this;
  }
  for (const Run& r : o.runs_) push(r.gen, r.exp);
  return *this;
}

Word Word::inverse() const {
  Word w;
  w.runs_.reserve(runs_.size());
  for (auto it = runs_.rbegin(); it != runs_.rend(); ++it) w.runs_.push_back({it->gen, -it->exp});
  return w;
}

Word Word::pow_small(long long k) const {
  Word base = k >= 0 ? *this : inverse();
  long long n = k >= 0 ? k : -k;
  Word out;
  for (long long i = 0; i < n; ++i) out *= base;
  return out;
}

Int Word::exponent_sum(int32_t g) const {
  Int s = 0;
  for (const Run& r : runs_)
    if (r.gen == g) s += r.exp;
  return s;
}

bool Word::uses_only(const std::function<bool(int32_t)>& allowed) const {
  for (const Run& r : runs_)
    if (!allowed(r.gen)) return false;
  return true;
}

int32_t Word::max_gen() const {
  int32_t m = -1;
  for (const Run& r : runs_) m = std::max(m, r.gen);
  return m;
}

std::pair<Word, Word> Word::cyclic_reduce() const {
  Word core = *this;
  Word conj;
  while (core.runs_.size() >= 2) {
    Run& f = core.runs_.front();
    Run& b = core.runs_.back();
    if (f.gen != b.gen || sign_of(f.exp) == sign_of(b.exp)) break;
    Int m = std::min(abs(f.exp), abs(b.exp));
    Int peel = sign_of(f.exp) * m;
    conj.push(f.gen, peel);
    f.exp -= peel;
    b.exp += peel;
    if (b.exp == 0) core.runs_.pop_back();
    if (f.exp == 0) core.runs_.erase(core.runs_.begin());
    // Both ends cannot vanish into a same-gen merge: adjacency invariant.
  }
  return {core, conj};
}

LetterVec Word::to_letters(size_t cap) const {
  LetterVec out;
  size_t total = 0;
  for (const Run& r : runs_) {
    if (abs(r.exp) > Int(cap) || (total += static_cast<size_t>(to_ll(abs(r.exp)))) > cap)
      throw CapExceeded("letter expansion exceeds cap");
    int32_t l = letter_of(r.gen, sign_of(r.exp));
    for (Int i = 0; i < abs(r.exp); ++i) out.push_back(l);
  }
  return out;
}

Word Word::substitute(const std::vector<Word>& images, size_t run_cap) const {
  Word out;
  for (const Run& r : runs_) {
    if (r.gen < 0 || static_cast<size_t>(r.gen) >= images.size())
      throw std::out_of_range("substitute: generator without image");
    const Word& im = images[static_cast<size_t>(r.gen)];
    if (im.empty()) continue;
    if (im.num_runs() == 1) {
      out.push(im.runs()[0].gen, im.runs()[0].exp * r.exp);
    } else {
      if (abs(r.exp) > Int(run_cap)) throw CapExceeded("substitute: exponent too large for multi-run image");
      Word rep = r.exp > 0 ? im : im.inverse();
      for (Int i = 0; i < abs(r.exp); ++i) out *= rep;
    }
    if (out.num_runs() > run_cap) throw CapExceeded("substitute: run cap exceeded");
  }
  return out;
}

int Word::compare_shortlex(const Word& o) const {
  Int la = letter_length(), lb = o.letter_length();
  if (la != lb) return la < lb ? -1 : 1;
  size_t i = 0, j = 0;
  Int oi = 0, oj = 0;  // letters consumed within current run
  while (i < runs_.size() && j < o.runs_.size()) {
    int32_t ca = code_of_letter(letter_of(runs_[i].gen, sign_of(runs_[i].exp)));
    int32_t cb = code_of_letter(letter_of(o.runs_[j].gen, sign_of(o.runs_[j].exp)));
    if (ca != cb) return ca < cb ? -1 : 1;
    Int ra = abs(runs_[i].exp) - oi, rb = abs(o.runs_[j].exp) - oj;
    Int step = std::min(ra, rb);
    oi += step;
    oj += step;
    if (oi == abs(runs_[i].exp)) {
      ++i;
      oi = 0;
    }
    if (oj == abs(o.runs_[j].exp)) {
      ++j;
      oj = 0;
    }
  }
  if (i != runs_.size()) return 1;
  if (j != o.runs_.size()) return -1;
  return 0;
}

size_t Word::hash() const {
  size_t h = runs_.size();
  for (const Run& r : runs_) {
    boost::hash_combine(h, r.gen);
    boost::hash_combine(h, r.exp);
  }
  return h;
}

void free_reduce_letters(LetterVec& v) {
  size_t out = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    if (out > 0 && v[out - 1] == -v[i])
      --out;
    else
      v[out++] = v[i];
  }
  v.resize(out);
}

}  // namespace gforge

#include "gforge/rips.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace gforge {

namespace {

int64_t pack_pair(int32_t a, int32_t b) {
  return (static_cast<int64_t>(a) << 32) | static_cast<uint32_t>(b);
}

LetterVec invert_letters(const LetterVec& v) {
  LetterVec out;
  out.reserve(v.size());
  for (auto it = v.rbegin(); it != v.rend(); ++it) out.push_back(-*it);
  return out;
}

}  // namespace

RipsOutput rips_construct(const Presentation& q, RipsParams params) {
  if (q.num_gens() == 0) {
    throw std::invalid_argument("rips_construct: source has no generators");
  }
  if (params.block_length < 1 || params.stride < 1 || params.max_attempts < 1) {
    throw std::invalid_argument("rips_construct: parameters must be positive");
  }
  int L = params.block_length;
  int S = params.stride;
  std::string last_reason = "not attempted";
  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    Presentation gamma;
    for (const auto& name : q.alpha.names) gamma.add_gen(name);
    std::string n1 = "k1", n2 = "k2";
    while (gamma.alpha.find(n1) >= 0) n1 += "_";
    gamma.add_gen(n1);
    while (gamma.alpha.find(n2) >= 0) n2 += "_";
    gamma.add_gen(n2);
    const int32_t k1 = gamma.alpha.find(n1);
    const int32_t k2 = gamma.alpha.find(n2);

    // Every attachment word gets a globally disjoint exponent range, so no
    // k2-run bounded by k1 on both sides occurs twice anywhere.
    size_t word_idx = 0;
    auto block = [&]() {
      Word w;
      Int base = Int(S) * Int(word_idx + 1);
      for (int j = 1; j <= L; ++j) {
        w.push(k1, 1);
        w.push(k2, base + j);
      }
      ++word_idx;
      return w;
    };

    for (const Word& r : q.relators) gamma.add_relator(r * block().inverse());
    for (size_t x = 0; x < q.num_gens(); ++x) {
      Word xg = Word::gen(static_cast<int32_t>(x));
      for (int32_t k : {k1, k2}) {
        Word kg = Word::gen(k);
        gamma.add_relator(xg * kg * xg.inverse() * block().inverse());
        gamma.add_relator(xg.inverse() * kg * xg * block().inverse());
      }
    }

    auto sym = std::make_shared<SymmetrizedSet>(gamma);
    PieceReport metric = verify_metric_condition(*sym, params.lambda);
    if (metric.pass) {
      RipsOutput out;
      out.source = q;
      out.gamma = std::move(gamma);
      out.pi0.from_ref = "gamma";
      out.pi0.to_ref = "source";
      for (size_t x = 0; x < q.num_gens(); ++x) {
        out.pi0.images.push_back(Word::gen(static_cast<int32_t>(x)));
      }
      out.pi0.images.push_back(Word());
      out.pi0.images.push_back(Word());
      out.kernel_gens = {k1, k2};
      out.used = params;
      out.used.block_length = L;
      out.used.stride = S;
      out.metric = std::move(metric);
      out.sym = std::move(sym);
      return out;
    }
    last_reason = metric.reason.empty() ? "metric condition failed" : metric.reason;
    if (metric.witness) {
      last_reason += " (piece of " + std::to_string(metric.max_piece) + " letters)";
    }
    L = std::max(L + 1, static_cast<int>(std::ceil(L * 1.3)));
    S = std::max(S + 1, static_cast<int>(std::ceil(S * 1.5)));
  }
  throw std::runtime_error("rips_construct: escalation cap reached at block length " +
                           std::to_string(L) + ", stride " + std::to_string(S) + ": " +
                           last_reason);
}

FreeImageReport pi0_freely_well_defined(const RipsOutput& out) {
  FreeImageReport rep;
  rep.pass = true;
  for (const Word& r : out.gamma.relators) {
    Word image = out.pi0.apply(r);
    if (image.empty()) {
      rep.matched.push_back(-1);
      continue;
    }
    int hit = -2;
    for (size_t i = 0; i < out.source.relators.size(); ++i) {
      if (image == out.source.relators[i]) {
        hit = static_cast<int>(i);
        break;
      }
    }
    if (hit < 0) rep.pass = false;
    rep.matched.push_back(hit);
  }
  return rep;
}

ConjTable::ConjTable(const Presentation& pres, std::vector<int32_t> kernel_gens)
    : kgens_(std::move(kernel_gens)) {
  is_k_.assign(pres.num_gens(), 0);
  for (int32_t g : kgens_) {
    if (g < 0 || static_cast<size_t>(g) >= pres.num_gens()) {
      throw std::invalid_argument("ConjTable: kernel generator out of range");
    }
    is_k_[static_cast<size_t>(g)] = 1;
  }
  for (const Word& r : pres.relators) {
    LetterVec v = r.to_letters(1u << 22);
    size_t n = v.size();
    if (n < 4) continue;
    for (size_t o = 0; o < n; ++o) {
      auto at = [&](size_t i) { return v[(o + i) % n]; };
      int32_t x = at(0);
      if (is_kernel_letter(x)) continue;
      int32_t k = at(1);
      if (!is_kernel_letter(k)) continue;
      if (at(2) != -x) continue;
      bool rest_kernel = true;
      LetterVec rest;
      rest.reserve(n - 3);
      for (size_t i = 3; i < n; ++i) {
        if (!is_kernel_letter(at(i))) {
          rest_kernel = false;
          break;
        }
        rest.push_back(at(i));
      }
      if (!rest_kernel) continue;
      LetterVec image = invert_letters(rest);
      table_.emplace(pack_pair(x, k), image);
      table_.emplace(pack_pair(x, -k), invert_letters(image));
    }
  }
  // A single-letter rule x k x^-1 = b inverts syntactically to x^-1 b x = k.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<int64_t, LetterVec>> fresh;
    for (const auto& [key, im] : table_) {
      if (im.size() != 1) continue;
      int32_t x = static_cast<int32_t>(key >> 32);
      int32_t k = static_cast<int32_t>(static_cast<uint32_t>(key));
      int64_t rkey = pack_pair(-x, im[0]);
      if (!table_.count(rkey)) fresh.emplace_back(rkey, LetterVec{k});
    }
    for (auto& [key, im] : fresh) grew |= table_.emplace(key, std::move(im)).second;
  }
}

bool ConjTable::is_kernel_letter(int32_t letter) const {
  int32_t g = gen_of_letter(letter);
  return g >= 0 && static_cast<size_t>(g) < is_k_.size() && is_k_[static_cast<size_t>(g)];
}

const LetterVec* ConjTable::lookup(int32_t xletter, int32_t kletter) const {
  auto it = table_.find(pack_pair(xletter, kletter));
  return it == table_.end() ? nullptr : &it->second;
}

LetterVec ConjTable::conjugate_word(const LetterVec& sigma, const LetterVec& kword,
                                    size_t letter_cap) const {
  LetterVec cur = kword;
  free_reduce_letters(cur);
  for (auto it = sigma.rbegin(); it != sigma.rend(); ++it) {
    int32_t L = *it;
    if (is_kernel_letter(L)) {
      LetterVec next;
      next.reserve(cur.size() + 2);
      next.push_back(L);
      next.insert(next.end(), cur.begin(), cur.end());
      next.push_back(-L);
      free_reduce_letters(next);
      cur = std::move(next);
    } else {
      LetterVec next;
      for (int32_t c : cur) {
        const LetterVec* im = lookup(L, c);
        if (!im) {
          throw std::invalid_argument("ConjTable: no conjugation rule for generator code " +
                                      std::to_string(L) + " acting on kernel code " +
                                      std::to_string(c));
        }
        if (next.size() + im->size() > letter_cap) {
          throw CapExceeded("kernel conjugation exceeds letter cap");
        }
        next.insert(next.end(), im->begin(), im->end());
      }
      free_reduce_letters(next);
      cur = std::move(next);
    }
    if (cur.size() > letter_cap) throw CapExceeded("kernel conjugation exceeds letter cap");
  }
  return cur;
}

LetterVec ConjTable::conjugate(const LetterVec& sigma, int32_t kletter,
                               size_t letter_cap) const {
  return conjugate_word(sigma, LetterVec{kletter}, letter_cap);
}

int ConjTable::kcode(int32_t letter) const {
  for (size_t i = 0; i < kgens_.size(); ++i) {
    if (gen_of_letter(letter) == kgens_[i]) return static_cast<int>(2 * i + (letter < 0 ? 1 : 0));
  }
  return -1;
}

int32_t ConjTable::kletter_of_code(int code) const {
  int32_t g = kgens_[static_cast<size_t>(code / 2)];
  return code % 2 == 0 ? letter_of(g, +1) : letter_of(g, -1);
}

Int ConjTable::predicted_letters(const LetterVec& sigma, const LetterVec& kword) const {
  size_t dim = 2 * kgens_.size();
  std::vector<Int> hist(dim, 0);
  for (int32_t c : kword) {
    int code = kcode(c);
    if (code < 0) throw std::invalid_argument("predicted_letters: non-kernel letter in word");
    hist[static_cast<size_t>(code)] += 1;
  }
  for (auto it = sigma.rbegin(); it != sigma.rend(); ++it) {
    int32_t L = *it;
    if (is_kernel_letter(L)) {
      int code = kcode(L);
      hist[static_cast<size_t>(code)] += 1;
      hist[static_cast<size_t>(code ^ 1)] += 1;
      continue;
    }
    std::vector<Int> next(dim, 0);
    for (size_t i = 0; i < dim; ++i) {
      if (hist[i] == 0) continue;
      const LetterVec* im = lookup(L, kletter_of_code(static_cast<int>(i)));
      if (!im) throw std::invalid_argument("predicted_letters: missing conjugation rule");
      for (int32_t c : *im) {
        int code = kcode(c);
        next[static_cast<size_t>(code)] += hist[i];
      }
    }
    hist = std::move(next);
  }
  Int total = 0;
  for (const Int& h : hist) total += h;
  return total;
}

Word kernel_conjugate(const ConjTable& table, const Word& g, int32_t kgen, size_t letter_cap) {
  LetterVec sigma = g.to_letters(letter_cap);
  LetterVec out = table.conjugate(sigma, letter_of(kgen, +1), letter_cap);
  return Word::from_letters(out);
}

Word kernel_conjugate(const RipsOutput& out, const Word& g, int32_t kgen, size_t letter_cap) {
  ConjTable table(out.gamma, out.kernel_gens);
  return kernel_conjugate(table, g, kgen, letter_cap);
}

NormalityReport verify_normality(const RipsOutput& out, size_t letter_cap) {
  NormalityReport rep;
  rep.all_pass = true;
  ConjTable table(out.gamma, out.kernel_gens);
  DehnSolver solver(out.sym);
  for (size_t g = 0; g < out.gamma.num_gens(); ++g) {
    Word gw = Word::gen(static_cast<int32_t>(g));
    for (int32_t k : out.kernel_gens) {
      NormalityEntry e;
      e.gen = static_cast<int32_t>(g);
      e.kgen = k;
      Word conj = kernel_conjugate(table, gw, k, letter_cap);
      Word check = gw * Word::gen(k) * gw.inverse() * conj.inverse();
      e.check_letters = static_cast<size_t>(check.letter_length());
      e.ok = solver.decide(check, letter_cap).trivial;
      if (!e.ok) rep.all_pass = false;
      rep.entries.push_back(e);
    }
  }
  return rep;
}

}  // namespace gforge

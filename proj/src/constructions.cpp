#include "gforge/constructions.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "gforge/parallel.hpp"

namespace gforge {

namespace {

// [x, y x y^-1] over an alphabet where x, y are generator indices.
Word stable_commutator_witness(int32_t x, int32_t y) {
  Word wx = Word::gen(x);
  Word wy = Word::gen(y);
  Word inner = wy * wx * wy.inverse();
  return wx * inner * wx.inverse() * inner.inverse();
}

}  // namespace

Presentation build_s() {
  Presentation p;
  p.add_gen("a");
  p.add_gen("t");
  p.add_relator("t a^2 t^-1 a^-3");
  return p;
}

Presentation build_b() {
  Presentation p;
  p.add_gen("a1");
  p.add_gen("t1");
  p.add_gen("a2");
  p.add_gen("t2");
  p.add_relator("t1 a1^2 t1^-1 a1^-3");
  p.add_relator("t2 a2^2 t2^-1 a2^-3");
  // The stable letter of each side kills the other side's commutator
  // witness, so neither witness survives in any proper quotient.
  p.add_relator("t2^-1 a1 t1 a1 t1^-1 a1^-1 t1 a1^-1 t1^-1");
  p.add_relator("t1^-1 a2 t2 a2 t2^-1 a2^-1 t2 a2^-1 t2^-1");
  return p;
}

Presentation build_q() {
  Presentation p;
  p.add_gen("a");
  p.add_gen("t");
  p.add_gen("a1");
  p.add_gen("t1");
  p.add_gen("a2");
  p.add_gen("t2");
  p.add_relator("t a^2 t^-1 a^-3");
  // Identifying the stable letters amalgamates the two-generator system
  // with the four-generator one and keeps the presentation balanced.
  p.add_relator("t t1^-1");
  p.add_relator("t1 a1^2 t1^-1 a1^-3");
  p.add_relator("t2 a2^2 t2^-1 a2^-3");
  p.add_relator("t2^-1 a1 t1 a1 t1^-1 a1^-1 t1 a1^-1 t1^-1");
  p.add_relator("t1^-1 a2 t2 a2 t2^-1 a2^-1 t2 a2^-1 t2^-1");
  return p;
}

Presentation build_lambda() {
  Presentation p;
  p.add_gen("alpha1");
  p.add_gen("tau1");
  p.add_gen("alpha2");
  p.add_gen("tau2");
  p.add_gen("zeta");
  p.add_relator("zeta alpha1 zeta^-1 alpha1^-1");
  p.add_relator("zeta tau1 zeta^-1 tau1^-1");
  return p;
}

NamedSystem build_system(const std::string& name) {
  NamedSystem sys;
  sys.name = name;
  if (name == "s") {
    sys.pres = build_s();
    sys.distinguished["c"] = stable_commutator_witness(0, 1);
    sys.maps["psi"] = psi_map();
  } else if (name == "b") {
    sys.pres = build_b();
    sys.distinguished["c1"] = stable_commutator_witness(0, 1);
    sys.distinguished["c2"] = stable_commutator_witness(2, 3);
  } else if (name == "q") {
    sys.pres = build_q();
    sys.distinguished["c"] = stable_commutator_witness(0, 1);
    sys.distinguished["b"] = Word::gen(3);
    sys.distinguished["beta"] = Word::gen(3, -1);
    sys.maps["Psi"] = big_psi_map();
  } else if (name == "lambda") {
    sys.pres = build_lambda();
  } else {
    throw std::invalid_argument("build_system: unknown system '" + name + "'");
  }
  return sys;
}

GenMap psi_map() {
  GenMap m;
  m.from_ref = "s";
  m.to_ref = "s";
  m.images = {Word::gen(0, 2), Word::gen(1)};
  return m;
}

GenMap big_psi_map() {
  GenMap m;
  m.from_ref = "q";
  m.to_ref = "q";
  m.images = {Word::gen(0, 2), Word::gen(1), Word::gen(2),
              Word::gen(3),    Word::gen(4), Word::gen(5)};
  return m;
}

GenMap psi_power(int n) {
  if (n < 0) throw std::invalid_argument("psi_power: negative exponent");
  GenMap acc;
  acc.from_ref = "s";
  acc.to_ref = "s";
  acc.images = {Word::gen(0), Word::gen(1)};
  GenMap step = psi_map();
  for (int i = 0; i < n; ++i) acc = compose_genmap(acc, step);
  return acc;
}

GenMap compose_genmap(const GenMap& inner, const GenMap& outer, size_t run_cap) {
  if (!inner.to_ref.empty() && !outer.from_ref.empty() && inner.to_ref != outer.from_ref) {
    throw std::invalid_argument("compose_genmap: inner maps into '" + inner.to_ref +
                                "' but outer starts from '" + outer.from_ref + "'");
  }
  GenMap out;
  out.from_ref = inner.from_ref;
  out.to_ref = outer.to_ref;
  out.images.reserve(inner.images.size());
  for (const Word& w : inner.images) out.images.push_back(outer.apply(w, run_cap));
  return out;
}

GenMap qn_map(int n) {
  if (n < 0) throw std::invalid_argument("qn_map: negative level");
  Int e = Int(1) << n;
  GenMap m;
  m.from_ref = "lambda";
  m.to_ref = "b";
  m.images = {Word::gen(0, e), Word::gen(1), Word::gen(2, e), Word::gen(3), Word()};
  return m;
}

Word sigma_preimage(int n, int i) {
  if (n < 0) throw std::invalid_argument("sigma_preimage: negative level");
  if (i != 1 && i != 2) throw std::invalid_argument("sigma_preimage: side must be 1 or 2");
  Word alpha = Word::gen(i == 1 ? 0 : 2);
  Word tau = Word::gen(i == 1 ? 1 : 3);
  Word w = alpha;
  for (int k = 0; k < n; ++k) w = tau * w * tau.inverse() * w.inverse();
  return w;
}

Word kernel_witness(int n, int m) {
  if (n < 0) throw std::invalid_argument("kernel_witness: negative level");
  if (m <= n) throw std::invalid_argument("kernel_witness: need m > n");
  Word w = sigma_preimage(n, 1);
  Word tau1 = Word::gen(1);
  Word conj = tau1 * w * tau1.inverse();
  return w * conj * w.inverse() * conj.inverse();
}

std::pair<Word, Word> sigma_pair(int n) {
  if (n < 0) throw std::invalid_argument("sigma_pair: negative level");
  return {Word::gen(1), Word::gen(0, Int(1) << n)};
}

EpiCheckReport check_epimorphism(const Presentation& domain, const Presentation& codomain,
                                 const GenMap& m, const std::vector<Word>& preimages,
                                 const WpBackend& backend) {
  if (m.images.size() != domain.num_gens()) {
    throw std::invalid_argument("check_epimorphism: map image count does not match domain");
  }
  if (preimages.size() != codomain.num_gens()) {
    throw std::invalid_argument("check_epimorphism: need one preimage per codomain generator");
  }
  EpiCheckReport rep;
  rep.preimages = preimages;
  rep.well_defined = true;
  for (const Word& r : domain.relators) {
    WpResult res = backend.decide(m.apply(r));
    if (res.status != WpStatus::Trivial) {
      rep.well_defined = false;
      if (res.status == WpStatus::Unknown) rep.unknown = true;
    }
    rep.relator_results.push_back(std::move(res));
  }
  rep.surjective = true;
  for (size_t g = 0; g < codomain.num_gens(); ++g) {
    Word probe = m.apply(preimages[g]) * Word::gen(static_cast<int32_t>(g), -1);
    WpResult res = backend.decide(probe);
    if (res.status != WpStatus::Trivial) {
      rep.surjective = false;
      if (res.status == WpStatus::Unknown) rep.unknown = true;
    }
    rep.generator_results.push_back(std::move(res));
  }
  return rep;
}

namespace {

using WordPair = std::pair<Word, Word>;

// The elementary moves on a generating pair: swap, entrywise inversion, and
// left/right multiplication of either entry by the other or its inverse.
// The set is closed under taking inverse moves, so reachability within a
// fixed depth is symmetric.
std::array<WordPair, 11> nielsen_children(const WordPair& st) {
  const Word& u = st.first;
  const Word& v = st.second;
  Word ui = u.inverse();
  Word vi = v.inverse();
  return {WordPair{v, u},      {ui, v},         {u, vi},     {u * v, v},
          WordPair{u * vi, v}, {v * u, v},      {vi * u, v}, {u, v * u},
          WordPair{u, v * ui}, {u, u * v},      {u, ui * v}};
}

}  // namespace

NielsenOrbitReport nielsen_orbit(const BsSolver& solver, const Alphabet& alpha,
                                 const std::vector<std::pair<Word, Word>>& pairs, size_t depth,
                                 size_t max_states, int jobs) {
  NielsenOrbitReport rep;
  rep.depth = depth;
  auto canon = [&](const WordPair& p) {
    return WordPair{solver.normal_form(p.first), solver.normal_form(p.second)};
  };
  auto key_of = [&](const WordPair& p) {
    return word_to_string(p.first, alpha) + " | " + word_to_string(p.second, alpha);
  };

  std::vector<std::unordered_set<std::string>> balls;
  balls.reserve(pairs.size());
  size_t total_states = 0;

  for (const auto& seed : pairs) {
    std::unordered_set<std::string> seen;
    std::vector<WordPair> frontier;
    if (!rep.budget_exceeded) {
      WordPair p0 = canon(seed);
      seen.insert(key_of(p0));
      frontier.push_back(std::move(p0));
      ++total_states;
    }
    for (size_t d = 0; d < depth && !frontier.empty() && !rep.budget_exceeded; ++d) {
      // Children are generated in frontier order, chunked across jobs, then
      // deduplicated sequentially, so the ball is independent of jobs.
      size_t n = frontier.size();
      size_t nchunks = jobs > 1 ? std::min<size_t>(static_cast<size_t>(jobs), n) : 1;
      std::vector<std::vector<WordPair>> produced(nchunks);
      parallel_chunks(n, static_cast<int>(nchunks), [&](int chunk, size_t lo, size_t hi) {
        auto& out = produced[static_cast<size_t>(chunk)];
        out.reserve((hi - lo) * 11);
        for (size_t idx = lo; idx < hi; ++idx) {
          for (auto& kid : nielsen_children(frontier[idx])) out.push_back(canon(kid));
        }
      });
      std::vector<WordPair> next;
      for (auto& chunk : produced) {
        for (auto& kid : chunk) {
          std::string key = key_of(kid);
          if (seen.count(key)) continue;
          if (total_states >= max_states) {
            rep.budget_exceeded = true;
            break;
          }
          seen.insert(std::move(key));
          next.push_back(std::move(kid));
          ++total_states;
        }
        if (rep.budget_exceeded) break;
      }
      frontier = std::move(next);
    }
    rep.ball_sizes.push_back(seen.size());
    balls.push_back(std::move(seen));
  }

  for (size_t i = 0; i < balls.size(); ++i) {
    for (size_t j = i + 1; j < balls.size(); ++j) {
      const auto& small = balls[i].size() <= balls[j].size() ? balls[i] : balls[j];
      const auto& large = balls[i].size() <= balls[j].size() ? balls[j] : balls[i];
      std::string witness;
      bool hit = false;
      for (const auto& key : small) {
        if (!large.count(key)) continue;
        if (!hit || key < witness) witness = key;
        hit = true;
      }
      if (hit) {
        rep.intersecting.push_back({i, j});
        rep.merge_witnesses.push_back(std::move(witness));
      }
    }
  }
  return rep;
}

}  // namespace gforge

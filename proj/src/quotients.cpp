#include "gforge/quotients.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "gforge/matrix.hpp"

namespace gforge {

Perm::Perm(int deg) : deg_(deg) {
  if (deg < 1 || deg > kMaxDeg) throw std::invalid_argument("degree out of range");
  img_.fill(0);
  for (int i = 0; i < deg; ++i) img_[static_cast<size_t>(i)] = static_cast<uint8_t>(i);
}

Perm Perm::compose(const Perm& rhs) const {
  Perm out(deg_);
  for (int i = 0; i < deg_; ++i) out.img_[static_cast<size_t>(i)] = img_[rhs.img_[static_cast<size_t>(i)]];
  return out;
}

Perm Perm::inverse() const {
  Perm out(deg_);
  for (int i = 0; i < deg_; ++i) out.img_[img_[static_cast<size_t>(i)]] = static_cast<uint8_t>(i);
  return out;
}

int Perm::order() const {
  std::array<bool, kMaxDeg> seen{};
  int ord = 1;
  for (int i = 0; i < deg_; ++i) {
    if (seen[static_cast<size_t>(i)]) continue;
    int len = 0;
    for (int j = i; !seen[static_cast<size_t>(j)]; j = img_[static_cast<size_t>(j)]) {
      seen[static_cast<size_t>(j)] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

Perm Perm::pow(const Int& e) const {
  long long k;
  if (e >= -16 && e <= 16) {
    k = to_ll(e);
    if (k < 0) return inverse().pow(Int(-k));
  } else {
    k = to_ll(euclid_mod(e, Int(order())));
  }
  Perm base = *this;
  Perm acc = Perm::identity(deg_);
  while (k > 0) {
    if (k & 1) acc = acc.compose(base);
    base = base.compose(base);
    k >>= 1;
  }
  return acc;
}

bool Perm::is_identity() const {
  for (int i = 0; i < deg_; ++i) {
    if (img_[static_cast<size_t>(i)] != i) return false;
  }
  return true;
}

std::vector<Perm> all_perms(int deg) {
  std::array<uint8_t, Perm::kMaxDeg> idx{};
  for (int i = 0; i < deg; ++i) idx[static_cast<size_t>(i)] = static_cast<uint8_t>(i);
  std::vector<Perm> out;
  do {
    Perm p(deg);
    for (int i = 0; i < deg; ++i) p.set(i, idx[static_cast<size_t>(i)]);
    out.push_back(p);
  } while (std::next_permutation(idx.begin(), idx.begin() + deg));
  return out;
}

namespace {

Int factorial(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void partitions_rec(int rest, int maxpart, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (rest == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(rest, maxpart); k >= 1; --k) {
    cur.push_back(k);
    partitions_rec(rest - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<ConjClass> conjugacy_classes(int deg) {
  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  partitions_rec(deg, deg, cur, parts);
  std::vector<ConjClass> out;
  for (const auto& part : parts) {
    Perm rep(deg);
    int at = 0;
    for (int len : part) {
      for (int i = 0; i < len; ++i) {
        rep.set(at + i, static_cast<uint8_t>(at + (i + 1) % len));
      }
      at += len;
    }
    Int denom = 1;
    int run = 1;
    for (size_t i = 0; i < part.size(); ++i) {
      denom *= part[i];
      if (i + 1 < part.size() && part[i + 1] == part[i]) {
        ++run;
      } else {
        denom *= factorial(run);
        run = 1;
      }
    }
    ConjClass cc{rep, factorial(deg) / denom, part};
    out.push_back(std::move(cc));
  }
  return out;
}

namespace {

struct PlanStep {
  enum class Kind { Enumerate, Forced } kind;
  int32_t gen;
  size_t relator;               // Forced only: the solving relator
  std::vector<size_t> checks;   // relators fully assigned after this step
};

struct SweepPlan {
  std::vector<PlanStep> steps;
  std::vector<int32_t> free_gens;  // occur in no relator
  std::vector<size_t> empty_checks;  // relators with no generators at all
};

SweepPlan make_plan(const Presentation& p) {
  const size_t G = p.alpha.names.size();
  const size_t R = p.relators.size();
  std::vector<std::vector<int32_t>> rel_gens(R);
  std::vector<bool> in_some(G, false);
  for (size_t r = 0; r < R; ++r) {
    std::vector<bool> seen(G, false);
    for (const Run& run : p.relators[r].runs()) {
      if (!seen[static_cast<size_t>(run.gen)]) {
        seen[static_cast<size_t>(run.gen)] = true;
        rel_gens[r].push_back(run.gen);
        in_some[static_cast<size_t>(run.gen)] = true;
      }
    }
  }

  SweepPlan plan;
  for (size_t g = 0; g < G; ++g) {
    if (!in_some[g]) plan.free_gens.push_back(static_cast<int32_t>(g));
  }

  std::vector<bool> assigned(G, false);
  std::vector<bool> checked(R, false);
  for (size_t r = 0; r < R; ++r) {
    if (rel_gens[r].empty()) {
      plan.empty_checks.push_back(r);
      checked[r] = true;
    }
  }

  auto unassigned_in = [&](size_t r) {
    std::vector<int32_t> out;
    for (int32_t g : rel_gens[r]) {
      if (!assigned[static_cast<size_t>(g)]) out.push_back(g);
    }
    return out;
  };

  size_t remaining = 0;
  for (size_t g = 0; g < G; ++g) {
    if (in_some[g]) ++remaining;
  }

  while (remaining > 0) {
    PlanStep step;
    step.gen = -1;
    // A relator with exactly one unassigned generator, occurring once at
    // exponent +-1, pins that generator.
    for (size_t r = 0; r < R && step.gen < 0; ++r) {
      if (checked[r]) continue;
      auto un = unassigned_in(r);
      if (un.size() != 1) continue;
      const int32_t g = un[0];
      int occurrences = 0;
      Int exp = 0;
      for (const Run& run : p.relators[r].runs()) {
        if (run.gen == g) {
          ++occurrences;
          exp = run.exp;
        }
      }
      if (occurrences == 1 && (exp == 1 || exp == -1)) {
        step.kind = PlanStep::Kind::Forced;
        step.gen = g;
        step.relator = r;
      }
    }
    if (step.gen < 0) {
      // Greedy: the generator whose relators are closest to complete.
      int32_t best = -1;
      long best_score = 0;
      for (size_t g = 0; g < G; ++g) {
        if (assigned[g] || !in_some[g]) continue;
        long score = 0;
        for (size_t r = 0; r < R; ++r) {
          if (checked[r]) continue;
          const auto un = unassigned_in(r);
          if (std::find(un.begin(), un.end(), static_cast<int32_t>(g)) == un.end()) continue;
          score += 100 / static_cast<long>(un.size());
        }
        if (best < 0 || score > best_score) {
          best = static_cast<int32_t>(g);
          best_score = score;
        }
      }
      step.kind = PlanStep::Kind::Enumerate;
      step.gen = best;
    }
    assigned[static_cast<size_t>(step.gen)] = true;
    --remaining;
    for (size_t r = 0; r < R; ++r) {
      if (!checked[r] && unassigned_in(r).empty()) {
        checked[r] = true;
        if (step.kind == PlanStep::Kind::Forced && step.relator == r) continue;
        step.checks.push_back(r);
      }
    }
    plan.steps.push_back(std::move(step));
  }
  return plan;
}

Perm eval_relator(const Word& rel, const std::vector<Perm>& img, int deg) {
  Perm acc = Perm::identity(deg);
  for (const Run& run : rel.runs()) {
    acc = acc.compose(img[static_cast<size_t>(run.gen)].pow(run.exp));
  }
  return acc;
}

// Splits r = prefix . g^e . suffix at the unique occurrence of g and solves
// prefix . g^e . suffix = id for g.
Perm solve_forced(const Word& rel, int32_t gen, const std::vector<Perm>& img, int deg) {
  Perm pre = Perm::identity(deg);
  Perm post = Perm::identity(deg);
  Int exp = 0;
  bool before = true;
  for (const Run& run : rel.runs()) {
    if (run.gen == gen) {
      exp = run.exp;
      before = false;
      continue;
    }
    const Perm part = img[static_cast<size_t>(run.gen)].pow(run.exp);
    if (before) {
      pre = pre.compose(part);
    } else {
      post = post.compose(part);
    }
  }
  Perm val = pre.inverse().compose(post.inverse());
  if (exp == -1) val = val.inverse();
  return val;
}

struct SweepContext {
  const Presentation* pres;
  const SweepPlan* plan;
  const std::vector<Perm>* elements;
  int deg;
};

struct SliceResult {
  Int count = 0;
  unsigned long long nodes = 0;
  std::optional<std::vector<Perm>> sample;
};

bool any_nontrivial(const std::vector<Perm>& img) {
  for (const Perm& p : img) {
    if (!p.is_identity()) return true;
  }
  return false;
}

Int count_from(const SweepContext& ctx, size_t step_idx, std::vector<Perm>& img, SliceResult& acc) {
  if (step_idx == ctx.plan->steps.size()) {
    if (!acc.sample.has_value() && any_nontrivial(img)) acc.sample = img;
    return 1;
  }
  const PlanStep& step = ctx.plan->steps[step_idx];
  const auto check_ok = [&]() {
    for (size_t r : step.checks) {
      if (!eval_relator(ctx.pres->relators[r], img, ctx.deg).is_identity()) return false;
    }
    return true;
  };
  Int total = 0;
  if (step.kind == PlanStep::Kind::Forced) {
    ++acc.nodes;
    const Perm val = solve_forced(ctx.pres->relators[step.relator], step.gen, img, ctx.deg);
    img[static_cast<size_t>(step.gen)] = val;
    if (!eval_relator(ctx.pres->relators[step.relator], img, ctx.deg).is_identity()) return 0;
    if (!check_ok()) return 0;
    total = count_from(ctx, step_idx + 1, img, acc);
  } else {
    for (const Perm& cand : *ctx.elements) {
      ++acc.nodes;
      img[static_cast<size_t>(step.gen)] = cand;
      if (!check_ok()) continue;
      total += count_from(ctx, step_idx + 1, img, acc);
    }
  }
  return total;
}

}  // namespace

PermSweepResult count_perm_quotients(const Presentation& p, int degree, int jobs) {
  if (degree < 1 || degree > Perm::kMaxDeg) throw std::invalid_argument("degree out of range");
  if (jobs < 1) jobs = 1;

  PermSweepResult res;
  res.degree = degree;

  const SweepPlan plan = make_plan(p);
  for (size_t r : plan.empty_checks) {
    if (!p.relators[r].empty()) throw std::logic_error("empty check on nonempty relator");
  }

  Int free_factor = 1;
  const Int dfact = factorial(degree);
  for (size_t i = 0; i < plan.free_gens.size(); ++i) free_factor *= dfact;

  if (plan.steps.empty()) {
    res.total = free_factor;
    res.nontrivial = res.total - 1;
    return res;
  }

  const std::vector<Perm> elements = all_perms(degree);
  SweepContext ctx{&p, &plan, &elements, degree};
  const size_t G = p.alpha.names.size();

  // The first enumerated generator only ranges over class representatives;
  // conjugating a homomorphism pointwise is a bijection on solutions.
  Int total = 0;
  if (plan.steps[0].kind == PlanStep::Kind::Enumerate) {
    const auto classes = conjugacy_classes(degree);
    std::vector<SliceResult> slices(classes.size());
    auto work = [&](size_t lo, size_t hi) {
      for (size_t ci = lo; ci < hi; ++ci) {
        std::vector<Perm> img(G, Perm::identity(degree));
        img[static_cast<size_t>(plan.steps[0].gen)] = classes[ci].rep;
        ++slices[ci].nodes;
        bool ok = true;
        for (size_t r : plan.steps[0].checks) {
          if (!eval_relator(p.relators[r], img, degree).is_identity()) {
            ok = false;
            break;
          }
        }
        if (ok) slices[ci].count = classes[ci].size * count_from(ctx, 1, img, slices[ci]);
      }
    };
    const size_t n = classes.size();
    const size_t nthreads = std::min(static_cast<size_t>(jobs), n);
    if (nthreads <= 1) {
      work(0, n);
    } else {
      std::vector<std::thread> pool;
      for (size_t t = 0; t < nthreads; ++t) {
        const size_t lo = n * t / nthreads;
        const size_t hi = n * (t + 1) / nthreads;
        pool.emplace_back(work, lo, hi);
      }
      for (auto& th : pool) th.join();
    }
    for (const auto& s : slices) {
      total += s.count;
      res.nodes += s.nodes;
      if (!res.sample.has_value() && s.sample.has_value()) res.sample = s.sample;
    }
  } else {
    std::vector<Perm> img(G, Perm::identity(degree));
    SliceResult slice;
    total = count_from(ctx, 0, img, slice);
    res.nodes = slice.nodes;
    res.sample = slice.sample;
  }

  res.total = total * free_factor;
  res.nontrivial = res.total - 1;
  if (!res.sample.has_value() && res.nontrivial > 0 && !plan.free_gens.empty() && degree >= 2) {
    std::vector<Perm> img(G, Perm::identity(degree));
    Perm swap01(degree);
    swap01.set(0, 1);
    swap01.set(1, 0);
    img[static_cast<size_t>(plan.free_gens[0])] = swap01;
    res.sample = std::move(img);
  }
  return res;
}

std::string perm_to_cycles(const Perm& p) {
  if (p.is_identity()) return "id";
  std::string out;
  std::array<bool, Perm::kMaxDeg> seen{};
  for (int i = 0; i < p.deg(); ++i) {
    if (seen[static_cast<size_t>(i)] || p.at(i) == i) continue;
    out += "(";
    int j = i;
    bool first = true;
    while (!seen[static_cast<size_t>(j)]) {
      seen[static_cast<size_t>(j)] = true;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
      j = p.at(j);
    }
    out += ")";
  }
  return out;
}

ZnCountResult count_zn_homs(const Presentation& p, const Int& n, Int budget) {
  if (n <= 0) throw std::invalid_argument("modulus must be positive");
  ZnCountResult res;
  res.n = n;
  res.predicted = count_hom_to_zn(p, n);

  Int space = 1;
  const size_t G = p.alpha.names.size();
  bool feasible = true;
  for (size_t i = 0; i < G; ++i) {
    space *= n;
    if (space > budget) {
      feasible = false;
      break;
    }
  }
  if (!feasible) return res;

  const long long nn = to_ll(n);
  std::vector<long long> val(G, 0);
  Int count = 0;
  while (true) {
    bool ok = true;
    for (const Word& rel : p.relators) {
      Int sum = 0;
      for (const Run& run : rel.runs()) sum += run.exp * val[static_cast<size_t>(run.gen)];
      if (euclid_mod(sum, n) != 0) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    size_t i = 0;
    while (i < G && ++val[i] == nn) {
      val[i] = 0;
      ++i;
    }
    if (i == G) break;
  }
  res.brute = count;
  res.brute_ran = true;
  return res;
}

}  // namespace gforge

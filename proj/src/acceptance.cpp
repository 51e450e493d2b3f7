#include "gforge/acceptance.hpp"

#include <chrono>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gforge/backend.hpp"
#include "gforge/constructions.hpp"
#include "gforge/matrix.hpp"
#include "gforge/quotients.hpp"
#include "gforge/rips.hpp"
#include "gforge/trivializer.hpp"

namespace gforge {

namespace {

using Clock = std::chrono::steady_clock;

struct Checker {
  bool ok = true;
  std::string msg;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    append(what);
  }
  void note(const std::string& what) { append(what); }

 private:
  void append(const std::string& what) {
    if (!msg.empty()) msg += "; ";
    msg += what;
  }
};

std::string clip(const std::string& s, size_t n = 200) {
  if (s.size() <= n) return s;
  return s.substr(0, n) + "...";
}

Perm eval_on_perms(const Word& w, const std::vector<Perm>& img, int deg) {
  Perm acc = Perm::identity(deg);
  for (const Run& run : w.runs()) {
    acc = acc.compose(img[static_cast<size_t>(run.gen)].pow(run.exp));
  }
  return acc;
}

void criterion_homology(Checker& ck) {
  const H1Result hs = homology_h1(build_s());
  ck.expect(hs.free_rank == 1 && hs.torsion.empty(),
            "two-generator system: expected H1 = Z, got " + hs.pretty());
  const H1Result hb = homology_h1(build_b());
  ck.expect(hb.trivial(), "four-generator system: expected trivial H1, got " + hb.pretty());
  const H1Result hq = homology_h1(build_q());
  ck.expect(hq.trivial(), "six-generator system: expected trivial H1, got " + hq.pretty());
  const H1Result hl = homology_h1(build_lambda());
  ck.expect(hl.free_rank == 5 && hl.torsion.empty(),
            "graph group: expected H1 = Z^5, got " + hl.pretty());
  ck.expect(h2_trivial_corroborated(build_q()) == std::optional<bool>(true),
            "six-generator system: balanced presentation with trivial H1 must corroborate H2 = 0");
  ck.expect(h2_trivial_corroborated(build_b()) == std::optional<bool>(true),
            "four-generator system: balanced presentation with trivial H1 must corroborate H2 = 0");
}

void criterion_britton(Checker& ck) {
  NamedSystem ssys = build_system("s");
  auto solver = std::make_shared<BsSolver>(Int(2), Int(3), 0, 1);
  const Word c = ssys.distinguished.at("c");
  ck.expect(!solver->is_trivial(c), "commutator witness must survive in the two-generator system");
  const GenMap psi = ssys.maps.at("psi");
  ck.expect(solver->is_trivial(psi.apply(c)), "commutator witness must die under the doubling map");

  BrittonBackend sbk(solver, ssys.pres.alpha);
  const std::vector<Word> pre_s = {parse_word("t a t^-1 a^-1", ssys.pres.alpha, "preimage"),
                                   Word::gen(1)};
  const EpiCheckReport ep = check_epimorphism(ssys.pres, ssys.pres, psi, pre_s, sbk);
  ck.expect(ep.well_defined, "doubling map: every relator image must certify trivial");
  ck.expect(ep.surjective, "doubling map: every generator needs a certified preimage");

  NamedSystem qsys = build_system("q");
  auto qbrit = std::make_shared<BrittonBackend>(solver, qsys.pres.alpha);
  auto qbound =
      std::make_shared<BoundedBackend>(std::make_shared<SymmetrizedSet>(qsys.pres));
  const ChainBackend qchain({qbrit, qbound});
  const GenMap big = qsys.maps.at("Psi");
  std::vector<Word> pre_q = {parse_word("t a t^-1 a^-1", qsys.pres.alpha, "preimage")};
  for (int32_t g = 1; g < 6; ++g) pre_q.push_back(Word::gen(g));
  const EpiCheckReport ep2 = check_epimorphism(qsys.pres, qsys.pres, big, pre_q, qchain);
  ck.expect(ep2.well_defined, "six-generator doubling map: relator images must certify trivial");
  ck.expect(ep2.surjective, "six-generator doubling map: generator preimages must certify");

  const Word wit = parse_word("t a t^-1 a^-1", ssys.pres.alpha, "witness");
  ck.expect(solver->equal(psi.apply(wit), Word::gen(0)),
            "the image of t a t^-1 a^-1 under the doubling map must equal a");

  const Word rel = parse_word("t a^2 t^-1 a^-3", ssys.pres.alpha, "relator");
  std::mt19937_64 rng(20260819u);
  std::uniform_int_distribution<int> nruns(1, 6), dgen(0, 1), dexp(1, 3), dsign(0, 1);
  auto rand_word = [&](int max_runs) {
    Word w;
    const int n = std::uniform_int_distribution<int>(1, max_runs)(rng);
    for (int i = 0; i < n; ++i) {
      const int e = dexp(rng) * (dsign(rng) ? 1 : -1);
      w = w * Word::gen(dgen(rng), e);
    }
    return w;
  };
  (void)nruns;
  const BoundedTrivializer bt(std::make_shared<SymmetrizedSet>(ssys.pres));
  size_t bounded_hits = 0;
  bool consistent = true;
  for (int i = 0; i < 10000 && consistent; ++i) {
    const Word w = rand_word(6);
    const Word nw = solver->normal_form(w);
    if (!(solver->normal_form(nw) == nw)) {
      ck.expect(false, "normal form must be a fixpoint of itself");
      consistent = false;
      break;
    }
    const Word g = rand_word(2);
    const Word w2 = w * g * ((i & 1) ? rel.inverse() : rel) * g.inverse();
    if (!(solver->normal_form(w2) == nw)) {
      ck.expect(false, "normal form must be invariant under relator insertion");
      consistent = false;
      break;
    }
    if (i % 100 == 0) {
      const auto cert = bt.certify_trivial(w);
      if (cert.has_value()) {
        ++bounded_hits;
        if (!solver->is_trivial(w)) {
          ck.expect(false, "bounded search certified a word the normal form rejects");
          consistent = false;
        }
      }
    }
  }
  if (consistent) {
    ck.note("10000 random words consistent, " + std::to_string(bounded_hits) +
            " bounded certificates cross-checked");
  }
}

void criterion_quotients(Checker& ck, const AcceptanceOptions& opt) {
  const Presentation s = build_s();
  const Presentation b = build_b();
  const Presentation q = build_q();
  const Presentation lam = build_lambda();
  const int deg = opt.quotient_degree;

  const PermSweepResult rb = count_perm_quotients(b, deg, opt.jobs);
  ck.expect(rb.nontrivial == 0, "four-generator system: expected no nontrivial degree-" +
                                    std::to_string(deg) + " actions, found " +
                                    rb.nontrivial.str());
  const PermSweepResult rq = count_perm_quotients(q, deg, opt.jobs);
  ck.expect(rq.nontrivial == 0, "six-generator system: expected no nontrivial degree-" +
                                    std::to_string(deg) + " actions, found " +
                                    rq.nontrivial.str());
  const PermSweepResult rs = count_perm_quotients(s, 3, opt.jobs);
  ck.expect(rs.nontrivial > 0, "two-generator system: expected nontrivial degree-3 actions");
  if (rs.sample.has_value()) {
    bool sample_ok = false;
    for (const Perm& p : *rs.sample) sample_ok |= !p.is_identity();
    for (const Word& r : s.relators) {
      sample_ok &= eval_on_perms(r, *rs.sample, 3).is_identity();
    }
    ck.expect(sample_ok, "sample degree-3 action must be nontrivial and satisfy the relators");
  } else {
    ck.expect(rs.nontrivial == 0, "nontrivial actions reported without a sample");
  }

  const std::pair<const Presentation*, const char*> systems[] = {
      {&s, "two-generator"}, {&b, "four-generator"}, {&q, "six-generator"}, {&lam, "graph"}};
  for (const auto& [pres, label] : systems) {
    for (const int p : {2, 3, 5}) {
      const ZnCountResult z = count_zn_homs(*pres, Int(p));
      ck.expect(z.brute_ran && z.brute == z.predicted,
                std::string(label) + " system: Z/" + std::to_string(p) +
                    " count mismatch, brute=" + z.brute.str() +
                    " predicted=" + z.predicted.str());
    }
  }
  std::ostringstream os;
  os << "sweep nodes: " << rb.nodes << " + " << rq.nodes;
  ck.note(os.str());
}

void criterion_cover(Checker& ck) {
  NamedSystem qsys = build_system("q");
  const RipsOutput ro = rips_construct(qsys.pres);
  ck.expect(ro.metric.pass, "metric small-cancellation condition at lambda 6");
  const FreeImageReport fi = pi0_freely_well_defined(ro);
  ck.expect(fi.pass, "erasing kernel letters must send every relator to a source relator");
  const NormalityReport nr = verify_normality(ro);
  ck.expect(nr.all_pass, "every generator conjugate of a kernel generator must certify");
  ck.note("block length " + std::to_string(ro.used.block_length) + ", stride " +
          std::to_string(ro.used.stride) + ", max piece " + std::to_string(ro.metric.max_piece) +
          " against shortest relator " + std::to_string(ro.metric.min_relator_len));
}

std::string stage_summary(char tag, const std::vector<PipelineStage>& stages, bool* all_ok) {
  std::string out;
  for (const PipelineStage& st : stages) {
    if (!out.empty()) out += "; ";
    out += tag;
    out += "[" + std::to_string(st.n) + "] ";
    if (st.ok) {
      out += "ok";
    } else {
      *all_ok = false;
      out += "FAIL: " + clip(st.error, 160);
    }
  }
  return out;
}

void criterion_pipelines(Checker& ck) {
  bool all_ok = true;
  std::string summary;
  {
    PipelineOptions pb;
    pb.n_max = 3;
    auto stages = emit_series('B', pb);
    summary += stage_summary('B', stages, &all_ok);
  }
  {
    PipelineOptions pa;
    pa.n_max = 2;
    auto stages = emit_series('A', pa);
    if (!summary.empty()) summary += "; ";
    summary += stage_summary('A', stages, &all_ok);
  }
  ck.expect(all_ok, summary);
  if (all_ok) ck.note(summary);
}

void criterion_toys(Checker& ck) {
  for (const int which : {0, 1}) {
    const FibreInput in = which == 0 ? toy_commuting_input() : toy_collapsing_input();
    const char* label = which == 0 ? "commuting toy" : "collapsing toy";
    const BoundedBackend g1(std::make_shared<SymmetrizedSet>(in.gamma));
    const BoundedBackend g2(std::make_shared<SymmetrizedSet>(in.gamma2));
    const FibrePresentation fp = emit_fibre(in, g1, g2);
    const H1Result h = homology_h1(fp.pres);
    const size_t want_rank = which == 0 ? 2 : 1;
    ck.expect(h.free_rank == want_rank && h.torsion.empty(),
              std::string(label) + ": expected free H1 of rank " + std::to_string(want_rank) +
                  ", got " + h.pretty());
    for (const int p : {2, 3}) {
      const ZnCountResult z = count_zn_homs(fp.pres, Int(p));
      const Int want = which == 0 ? Int(p * p) : Int(p);
      ck.expect(z.brute_ran && z.brute == want && z.predicted == want,
                std::string(label) + ": Z/" + std::to_string(p) + " count, brute=" +
                    z.brute.str() + " predicted=" + z.predicted.str() + " want=" + want.str());
    }
    const SubdirectReport sd = verify_subdirect(in, fp);
    ck.expect(sd.pass, std::string(label) + ": subdirectness checks");
  }
}

void criterion_separation(Checker& ck) {
  NamedSystem bsys = build_system("b");
  const BsSolver bs(Int(2), Int(3), 0, 1);
  const Word c1 = bsys.distinguished.at("c1");
  ck.expect(!bs.is_trivial(c1), "commutator witness must survive at its own level");
  int pairs = 0;
  for (int n = 0; n <= 5; ++n) {
    for (int m = n + 1; m <= 5; ++m) {
      const Word u = kernel_witness(n, m);
      const Word um = qn_map(m).apply(u);
      if (!bs.is_trivial(um)) {
        ck.expect(false, "witness for level " + std::to_string(n) + " must die at level " +
                             std::to_string(m));
        continue;
      }
      const Certificate cm = bs.certify(um, bsys.pres.alpha);
      if (!bs.replay(cm, um).empty()) {
        ck.expect(false, "trivial certificate failed to replay at levels " + std::to_string(n) +
                             "," + std::to_string(m));
        continue;
      }
      const Word un = qn_map(n).apply(u);
      if (!bs.equal(un, c1) || bs.is_trivial(un)) {
        ck.expect(false, "witness for level " + std::to_string(n) +
                             " must land on the commutator witness at its own level");
        continue;
      }
      ++pairs;
    }
  }
  ck.expect(pairs == 15, "all 15 level pairs certified");
  ck.note(
      "non-triviality transfers to the four-generator amalgam through the trusted "
      "two-generator embedding; no machine check covers that step");
}

void criterion_nielsen(Checker& ck, const AcceptanceOptions& opt) {
  NamedSystem ssys = build_system("s");
  const BsSolver solver(Int(2), Int(3), 0, 1);
  const std::vector<std::pair<Word, Word>> pairs = {sigma_pair(0), sigma_pair(1), sigma_pair(2)};
  const NielsenOrbitReport rep =
      nielsen_orbit(solver, ssys.pres.alpha, pairs, 8, 2000000, opt.jobs);
  ck.expect(!rep.budget_exceeded, "depth-8 exploration must fit the state budget");
  ck.expect(rep.intersecting.empty(), "level generating pairs must stay in disjoint balls");
  std::string sizes;
  for (const size_t s : rep.ball_sizes) {
    if (!sizes.empty()) sizes += ", ";
    sizes += std::to_string(s);
  }
  ck.note("ball sizes " + sizes);

  const std::vector<std::pair<Word, Word>> merge = {
      {Word::gen(1), Word::gen(0)}, {Word::gen(1), Word::gen(1) * Word::gen(0)}};
  const NielsenOrbitReport rep2 =
      nielsen_orbit(solver, ssys.pres.alpha, merge, 1, 100000, opt.jobs);
  ck.expect(rep2.intersecting.size() == 1,
            "(t, a) and (t, t a) must meet after one elementary move");
}

void criterion_determinism(Checker& ck) {
  PipelineOptions po;
  po.n_max = 3;
  auto snapshot = [&](std::vector<PipelineStage>&& stages) {
    std::vector<std::string> blobs;
    for (PipelineStage& st : stages) {
      std::string blob =
          "stage " + std::to_string(st.n) + " ok=" + (st.ok ? "1" : "0") + " err=" + st.error;
      if (st.fp.has_value()) {
        blob += "\n";
        blob += st.fp->pres.to_text();
        blob += "\n";
        blob += st.fp->embedding_text(st.gamma_alpha, st.gamma2_alpha);
      }
      blobs.push_back(std::move(blob));
      st.fp.reset();
    }
    return blobs;
  };
  const auto first = snapshot(emit_series('B', po));
  const auto second = snapshot(emit_series('B', po));
  ck.expect(first.size() == second.size(), "both runs must emit the same number of stages");
  for (size_t i = 0; i < first.size() && i < second.size(); ++i) {
    ck.expect(first[i] == second[i],
              "stage " + std::to_string(i) + " bytes differ between runs");
  }
  ck.note(std::to_string(first.size()) + " stages byte-identical across two runs");
}

}  // namespace

FibreInput toy_commuting_input() {
  FibreInput in;
  in.gamma.add_gen("x");
  in.gamma.add_gen("a");
  in.gamma.add_relator("x a x^-1 a^-1");
  in.kernel_gens = {1};
  in.q.add_gen("x");
  in.pi0.from_ref = "gamma";
  in.pi0.to_ref = "q";
  in.pi0.images = {Word::gen(0), Word()};
  in.q_aspherical = true;
  in.gamma2.add_gen("y");
  in.f2.from_ref = "gamma2";
  in.f2.to_ref = "q";
  in.f2.images = {Word::gen(0)};
  in.lifts = {Word::gen(0)};
  in.gamma_ref = "toy-plane";
  in.gamma2_ref = "toy-line";
  return in;
}

FibreInput toy_collapsing_input() {
  FibreInput in = toy_commuting_input();
  in.q.add_relator("x");
  in.gamma2 = Presentation();
  in.gamma2.add_gen("y");
  in.gamma2.add_relator("y");
  in.f2.images = {Word()};
  in.lifts = {Word()};
  in.gamma2_ref = "toy-point";
  return in;
}

int num_criteria() { return 9; }

AcceptanceResult run_criterion(int criterion, const AcceptanceOptions& opt) {
  // Wall-clock bounds that are part of the criterion itself; 0 means none.
  static const double kBounds[10] = {0, 1.0, 10.0, 600.0, 60.0, 300.0, 1.0, 5.0, 120.0, 0.0};
  AcceptanceResult res;
  res.criterion = criterion;
  if (criterion < 1 || criterion > 9) {
    res.detail = "no such criterion";
    return res;
  }
  Checker ck;
  const auto t0 = Clock::now();
  try {
    switch (criterion) {
      case 1: criterion_homology(ck); break;
      case 2: criterion_britton(ck); break;
      case 3: criterion_quotients(ck, opt); break;
      case 4: criterion_cover(ck); break;
      case 5: criterion_pipelines(ck); break;
      case 6: criterion_toys(ck); break;
      case 7: criterion_separation(ck); break;
      case 8: criterion_nielsen(ck, opt); break;
      case 9: criterion_determinism(ck); break;
      default: break;
    }
  } catch (const std::exception& e) {
    ck.expect(false, std::string("exception: ") + e.what());
  }
  res.seconds =
      std::chrono::duration_cast<std::chrono::duration<double>>(Clock::now() - t0).count();
  const double bound = kBounds[criterion];
  if (bound > 0 && res.seconds >= bound) {
    std::ostringstream os;
    os << "took " << res.seconds << " s, over the " << bound << " s bound";
    ck.expect(false, os.str());
  }
  res.pass = ck.ok;
  res.detail = ck.msg.empty() ? "all checks passed" : ck.msg;
  return res;
}

}  // namespace gforge

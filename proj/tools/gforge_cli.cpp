#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gforge/acceptance.hpp"
#include "gforge/backend.hpp"
#include "gforge/constructions.hpp"
#include "gforge/fibre.hpp"
#include "gforge/matrix.hpp"
#include "gforge/quotients.hpp"
#include "gforge/report.hpp"
#include "gforge/rips.hpp"

namespace fs = std::filesystem;
using namespace gforge;

namespace {

// The one statement no engine checks: Britton non-triviality established in
// the two-generator group carries over to the amalgams only because the
// defining embedding is injective. Every witness report repeats this.
const char* kEmbeddingNote =
    "non-triviality transfers from the two-generator system to the amalgam "
    "through the trusted embedding of the defining inclusion; no machine "
    "check covers that step";

std::string g_command;  // argv joined, for report headers

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int env_jobs() {
  const char* e = std::getenv("GFORGE_JOBS");
  if (!e) return 1;
  const int v = std::atoi(e);
  return v >= 1 ? v : 1;
}

fs::path exe_dir() {
  std::error_code ec;
  const fs::path p = fs::read_symlink("/proc/self/exe", ec);
  if (ec) return fs::current_path();
  return p.parent_path();
}

std::string resolve_builtin(const std::string& name) {
  std::vector<fs::path> roots;
  if (const char* d = std::getenv("GFORGE_DATA")) roots.emplace_back(d);
  roots.push_back(exe_dir() / ".." / "presentations");
  roots.emplace_back("presentations");
  for (const fs::path& r : roots) {
    const fs::path f = r / (name + ".pres");
    std::error_code ec;
    if (fs::exists(f, ec)) return f.string();
  }
  std::string tried;
  for (const fs::path& r : roots) {
    if (!tried.empty()) tried += ", ";
    tried += (r / (name + ".pres")).string();
  }
  throw UsageError("no data file for builtin '" + name + "' (tried " + tried + ")");
}

// A presentation argument: a file path, or --builtin resolved against the
// data directory.
struct PresSource {
  std::string builtin;
  std::string path;

  void attach(CLI::App* cmd) {
    cmd->add_option("pres", path, "presentation file");
    cmd->add_option("--builtin", builtin, "packaged system: s, b, q or lambda");
  }
  void attach_named(CLI::App* cmd, const std::string& flag, const std::string& what) {
    cmd->add_option(flag, path, what + " presentation file");
  }

  Presentation load(std::string* label) const {
    if (!builtin.empty() && !path.empty()) {
      throw UsageError("give a presentation file or --builtin, not both");
    }
    if (builtin.empty() && path.empty()) {
      throw UsageError("a presentation is required: file argument or --builtin");
    }
    const std::string f = builtin.empty() ? path : resolve_builtin(builtin);
    if (label) *label = builtin.empty() ? path : builtin;
    return Presentation::parse(read_file(f), f);
  }
};

struct BsShape {
  Int p, q;
  int32_t a = 0, t = 0;
};

// Recognizes a single ascending one-relator pair t a^p t^-1 a^-q up to
// rotation and inversion.
std::optional<BsShape> detect_bs(const Presentation& pres) {
  if (pres.num_gens() != 2 || pres.num_relators() != 1) return std::nullopt;
  for (const Word& cand : {pres.relators[0], pres.relators[0].inverse()}) {
    const auto& runs = cand.runs();
    if (runs.size() != 4) continue;
    for (size_t i = 0; i < 4; ++i) {
      const Run& rt = runs[i];
      const Run& ra = runs[(i + 1) % 4];
      const Run& rt2 = runs[(i + 2) % 4];
      const Run& ra2 = runs[(i + 3) % 4];
      if (rt.exp != 1 || rt2.exp != -1 || rt.gen != rt2.gen) continue;
      if (ra.gen != ra2.gen || ra.gen == rt.gen) continue;
      if (ra.exp <= 0 || ra2.exp >= 0) continue;
      BsShape s;
      s.p = ra.exp;
      s.q = -ra2.exp;
      s.a = ra.gen;
      s.t = rt.gen;
      return s;
    }
  }
  return std::nullopt;
}

// Picks a word-problem engine for the presentation. "auto" tries the exact
// engines first and falls back to the bounded search.
std::shared_ptr<const WpBackend> make_backend(const std::string& method,
                                              const Presentation& pres, std::string* why) {
  std::string reasons;
  auto fail = [&](const std::string& m) {
    if (!reasons.empty()) reasons += "; ";
    reasons += m;
  };
  if (method == "britton" || method == "auto") {
    if (const auto bs = detect_bs(pres)) {
      auto solver = std::make_shared<BsSolver>(bs->p, bs->q, bs->a, bs->t);
      return std::make_shared<BrittonBackend>(solver, pres.alpha);
    }
    fail("britton: not a single ascending one-relator pair");
    if (method == "britton") {
      *why = reasons;
      return nullptr;
    }
  }
  if (method == "raag" || method == "auto") {
    try {
      auto solver = std::make_shared<RaagSolver>(RaagSolver::from_presentation(pres));
      return std::make_shared<RaagBackend>(solver, pres.alpha);
    } catch (const std::exception& e) {
      fail(std::string("raag: ") + e.what());
      if (method == "raag") {
        *why = reasons;
        return nullptr;
      }
    }
  }
  if (method == "dehn" || method == "auto") {
    try {
      auto sym = std::make_shared<SymmetrizedSet>(pres);
      return std::make_shared<DehnBackend>(sym);
    } catch (const std::exception& e) {
      fail(std::string("dehn: ") + e.what());
      if (method == "dehn") {
        *why = reasons;
        return nullptr;
      }
    }
  }
  if (method == "bounded" || method == "auto") {
    try {
      auto sym = std::make_shared<SymmetrizedSet>(pres);
      return std::make_shared<BoundedBackend>(sym);
    } catch (const std::exception& e) {
      fail(std::string("bounded: ") + e.what());
    }
  }
  *why = reasons.empty() ? "no applicable engine" : reasons;
  return nullptr;
}

Json timed_base(const std::string& tool, double seconds) {
  Json j = report_base(tool);
  j["tool"]["command"] = g_command;
  j["timing"]["seconds"] = seconds;
  return j;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration_cast<std::chrono::duration<double>>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

Perm eval_on_perms(const Word& w, const std::vector<Perm>& img, int deg) {
  Perm acc = Perm::identity(deg);
  for (const Run& run : w.runs()) {
    acc = acc.compose(img[static_cast<size_t>(run.gen)].pow(run.exp));
  }
  return acc;
}

// ---- subcommand state ----

struct BuildArgs {
  std::string name;
  std::string out;
  bool json = false;
};

struct WpArgs {
  PresSource src;
  std::string word;
  std::string method = "auto";
  std::string cert_out;
  bool json = false;
};

struct SmallcancArgs {
  PresSource src;
  int lambda = 6;
  bool json = false;
};

struct H1Args {
  PresSource src;
  bool json = false;
};

struct QuotientsArgs {
  PresSource src;
  int degree = 5;
  std::vector<int> zn;
  int jobs = 0;
  bool json = false;
};

struct RipsArgs {
  PresSource src;
  int block_length = 10;
  int stride = 10;
  std::string out;
  std::string map_out;
  bool json = false;
};

struct FibreArgs {
  std::string gamma_file, gamma2_file, q_file, f1_file, f2_file, lifts_file;
  std::string kernel;
  std::string out, embed_out;
  bool aspherical = false;
  long long max_kernel_letters = 0;
  int depth = 2;
  std::string gamma_backend = "auto";
  std::string gamma2_backend = "auto";
  bool json = false;
};

struct PipelineArgs {
  std::string which;
  int n_max = 3;
  std::string out_dir;
  long long kernel_budget = 0;
  bool json = false;
};

struct WitnessArgs {
  int n = -1, m = -1;
  int n_max = 5;
  std::string cert_dir;
  bool json = false;
};

struct NielsenArgs {
  std::string sigma = "0,1,2";
  std::string pairs;
  int depth = 8;
  long long max_states = 2000000;
  int jobs = 0;
  bool json = false;
};

struct CheckArgs {
  int criterion = 0;
  bool fail_fast = false;
  int jobs = 0;
  int degree = 5;
  bool json = false;
};

int cmd_build(const BuildArgs& a) {
  const Timer timer;
  NamedSystem sys = build_system(a.name);
  const std::string text = sys.pres.to_text();
  if (!a.out.empty()) write_file(a.out, text);
  if (a.json) {
    Json j = timed_base("build", timer.seconds());
    j["name"] = sys.name;
    j["generators"] = sys.pres.alpha.names;
    j["num_relators"] = sys.pres.num_relators();
    j["text"] = text;
    Json dist = Json::object();
    for (const auto& [nm, w] : sys.distinguished) dist[nm] = word_to_string(w, sys.pres.alpha);
    j["distinguished"] = dist;
    Json maps = Json::object();
    for (const auto& [nm, m] : sys.maps) maps[nm] = m.to_text(sys.pres.alpha, sys.pres.alpha);
    j["maps"] = maps;
    emit(j);
  } else {
    std::cout << text;
    if (a.out.empty()) {
      for (const auto& [nm, w] : sys.distinguished) {
        std::cout << "# " << nm << " = " << word_to_string(w, sys.pres.alpha) << "\n";
      }
    }
  }
  return 0;
}

int cmd_wp(const WpArgs& a) {
  const Timer timer;
  std::string label;
  const Presentation pres = a.src.load(&label);
  const Word w = parse_word(a.word, pres.alpha, "word");
  std::string why;
  const auto backend = make_backend(a.method, pres, &why);
  if (!backend) {
    std::cerr << "error: no engine for '" << label << "': " << why << "\n";
    return 1;
  }
  const WpResult res = backend->decide(w);
  std::string cert_path;
  if (!a.cert_out.empty() && res.cert.has_value()) {
    write_file(a.cert_out, res.cert->serialize());
    cert_path = a.cert_out;
  }
  if (a.json) {
    Json j = timed_base("wp", timer.seconds());
    j["presentation"] = label;
    j["word"] = word_to_string(w, pres.alpha);
    j["result"] = to_json(res);
    if (!cert_path.empty()) j["certificate_file"] = cert_path;
    emit(j);
  } else {
    std::cout << wp_status_name(res.status) << "\n";
    std::cout << "  engine: " << res.method;
    if (!res.detail.empty()) std::cout << " (" << res.detail << ")";
    std::cout << "\n";
    if (!cert_path.empty()) std::cout << "  certificate: " << cert_path << "\n";
  }
  return res.status == WpStatus::Unknown ? 1 : 0;
}

int cmd_smallcanc(const SmallcancArgs& a) {
  const Timer timer;
  std::string label;
  const Presentation pres = a.src.load(&label);
  const SymmetrizedSet sym(pres);
  const PieceReport rep = verify_metric_condition(sym, a.lambda);
  if (a.json) {
    Json j = timed_base("smallcanc", timer.seconds());
    j["presentation"] = label;
    j["report"] = to_json(rep);
    emit(j);
  } else {
    std::cout << (rep.pass ? "pass" : "fail") << ": lambda " << rep.lambda << ", " << rep.num_classes
              << " classes, max piece " << rep.max_piece << ", shortest relator "
              << rep.min_relator_len << "\n";
    if (!rep.pass && !rep.reason.empty()) std::cout << "  " << rep.reason << "\n";
    if (rep.witness.has_value()) {
      std::cout << "  longest piece: " << rep.witness->piece << "\n";
    }
  }
  return rep.pass ? 0 : 1;
}

int cmd_h1(const H1Args& a) {
  const Timer timer;
  std::string label;
  const Presentation pres = a.src.load(&label);
  const H1Result h = homology_h1(pres);
  const std::optional<bool> h2 = h2_trivial_corroborated(pres);
  if (a.json) {
    Json j = timed_base("h1", timer.seconds());
    j["presentation"] = label;
    j["h1"] = to_json(h);
    if (h2.has_value()) {
      j["h2_trivial_corroborated"] = *h2;
    } else {
      j["h2_trivial_corroborated"] = nullptr;
    }
    emit(j);
  } else {
    std::cout << h.pretty() << "\n";
    if (h2.has_value() && *h2) {
      std::cout << "  balanced with trivial first homology: second homology trivial\n";
    }
  }
  return 0;
}

int cmd_quotients(const QuotientsArgs& a) {
  const Timer timer;
  std::string label;
  const Presentation pres = a.src.load(&label);
  const int jobs = a.jobs > 0 ? a.jobs : env_jobs();
  const PermSweepResult sweep = count_perm_quotients(pres, a.degree, jobs);

  bool consistent = true;
  std::string sample_status = "none";
  if (sweep.sample.has_value()) {
    bool ok = false;
    for (const Perm& p : *sweep.sample) ok |= !p.is_identity();
    for (const Word& r : pres.relators) {
      ok &= eval_on_perms(r, *sweep.sample, a.degree).is_identity();
    }
    sample_status = ok ? "verified" : "INVALID";
    consistent &= ok;
  }
  std::vector<ZnCountResult> zres;
  for (const int n : a.zn) {
    zres.push_back(count_zn_homs(pres, Int(n)));
    const ZnCountResult& z = zres.back();
    consistent &= !z.brute_ran || z.brute == z.predicted;
  }
  if (a.json) {
    Json j = timed_base("quotients", timer.seconds());
    j["presentation"] = label;
    j["sweep"] = to_json(sweep, pres);
    j["sample_status"] = sample_status;
    Json zn = Json::array();
    for (const ZnCountResult& z : zres) zn.push_back(to_json(z));
    j["zn_counts"] = zn;
    j["consistent"] = consistent;
    emit(j);
  } else {
    std::cout << "degree " << sweep.degree << ": " << sweep.total.str() << " actions, "
              << sweep.nontrivial.str() << " nontrivial (" << sweep.nodes << " nodes)\n";
    if (sweep.sample.has_value()) {
      std::cout << "  sample (" << sample_status << "):";
      for (size_t g = 0; g < sweep.sample->size(); ++g) {
        std::cout << " " << pres.alpha.names[g] << " -> "
                  << perm_to_cycles((*sweep.sample)[g]);
      }
      std::cout << "\n";
    }
    for (const ZnCountResult& z : zres) {
      std::cout << "  Z/" << z.n.str() << ": predicted " << z.predicted.str();
      if (z.brute_ran) {
        std::cout << ", brute " << z.brute.str()
                  << (z.brute == z.predicted ? " (match)" : " (MISMATCH)");
      }
      std::cout << "\n";
    }
  }
  return consistent ? 0 : 1;
}

int cmd_rips(const RipsArgs& a) {
  const Timer timer;
  std::string label;
  const Presentation pres = a.src.load(&label);
  RipsParams params;
  params.block_length = a.block_length;
  params.stride = a.stride;
  const RipsOutput ro = rips_construct(pres, params);
  const FreeImageReport fi = pi0_freely_well_defined(ro);
  const NormalityReport nr = verify_normality(ro);
  const bool pass = ro.metric.pass && fi.pass && nr.all_pass;

  if (!a.out.empty()) {
    std::string text = "# small-cancellation cover of " + label + "\n";
    text += "# kernel generators:";
    for (const int32_t k : ro.kernel_gens) {
      text += " " + ro.gamma.alpha.names[static_cast<size_t>(k)];
    }
    text += "\n" + ro.gamma.to_text();
    write_file(a.out, text);
  }
  if (!a.map_out.empty()) {
    write_file(a.map_out, ro.pi0.to_text(ro.gamma.alpha, ro.source.alpha));
  }
  if (a.json) {
    Json j = timed_base("rips", timer.seconds());
    j["presentation"] = label;
    j["generators"] = ro.gamma.alpha.names;
    Json kg = Json::array();
    for (const int32_t k : ro.kernel_gens) kg.push_back(ro.gamma.alpha.names[static_cast<size_t>(k)]);
    j["kernel_generators"] = kg;
    j["params"] = {{"block_length", ro.used.block_length},
                   {"stride", ro.used.stride},
                   {"lambda", ro.used.lambda}};
    j["metric"] = to_json(ro.metric);
    j["projection_free_image"] = to_json(fi);
    j["normality"] = to_json(nr, ro.gamma.alpha);
    if (!a.out.empty()) j["files"]["presentation"] = a.out;
    if (!a.map_out.empty()) j["files"]["projection"] = a.map_out;
    j["pass"] = pass;
    emit(j);
  } else {
    std::cout << (pass ? "pass" : "fail") << ": " << ro.gamma.num_gens() << " generators, "
              << ro.gamma.num_relators() << " relators, block length " << ro.used.block_length
              << ", stride " << ro.used.stride << "\n";
    std::cout << "  metric: " << (ro.metric.pass ? "pass" : "fail") << " (max piece "
              << ro.metric.max_piece << " vs shortest relator " << ro.metric.min_relator_len
              << ")\n";
    std::cout << "  projection erases to source relators: " << (fi.pass ? "yes" : "NO") << "\n";
    std::cout << "  kernel normality certificates: " << (nr.all_pass ? "pass" : "FAIL") << "\n";
  }
  return pass ? 0 : 1;
}

int cmd_fibre(const FibreArgs& a) {
  const Timer timer;
  FibreInput in;
  in.gamma = Presentation::parse(read_file(a.gamma_file), a.gamma_file);
  in.gamma2 = Presentation::parse(read_file(a.gamma2_file), a.gamma2_file);
  in.q = Presentation::parse(read_file(a.q_file), a.q_file);
  in.pi0 = GenMap::parse(read_file(a.f1_file), in.gamma.alpha, in.q.alpha, a.f1_file);
  in.f2 = GenMap::parse(read_file(a.f2_file), in.gamma2.alpha, in.q.alpha, a.f2_file);
  in.gamma_ref = a.gamma_file;
  in.gamma2_ref = a.gamma2_file;
  in.q_aspherical = a.aspherical;
  if (!a.aspherical) {
    std::cerr << "error: the construction is only valid over an aspherical presentation; "
                 "pass --aspherical to assert that the quotient presentation is one\n";
    return 1;
  }

  std::stringstream ks(a.kernel);
  std::string kname;
  while (std::getline(ks, kname, ',')) {
    if (kname.empty()) continue;
    const int idx = in.gamma.alpha.find(kname);
    if (idx < 0) {
      throw UsageError("kernel generator '" + kname + "' is not a generator of " + a.gamma_file);
    }
    in.kernel_gens.push_back(static_cast<int32_t>(idx));
  }
  if (in.kernel_gens.empty()) throw UsageError("--kernel needs at least one generator name");

  if (!a.lifts_file.empty()) {
    const GenMap lm =
        GenMap::parse(read_file(a.lifts_file), in.gamma2.alpha, in.gamma.alpha, a.lifts_file);
    in.lifts = lm.images;
  } else {
    // Derive lifts: substitute a one-generator projection preimage for every
    // quotient generator appearing in the f2 images.
    std::vector<Word> pre(in.q.num_gens());
    std::vector<bool> have(in.q.num_gens(), false);
    for (size_t g = 0; g < in.gamma.num_gens(); ++g) {
      bool is_k = false;
      for (const int32_t k : in.kernel_gens) is_k |= k == static_cast<int32_t>(g);
      if (is_k) continue;
      const Word& img = in.pi0.images[g];
      const auto& runs = img.runs();
      if (runs.size() == 1 && runs[0].exp == 1) {
        const auto qg = static_cast<size_t>(runs[0].gen);
        if (!have[qg]) {
          pre[qg] = Word::gen(static_cast<int32_t>(g));
          have[qg] = true;
        }
      }
    }
    for (size_t j = 0; j < in.f2.images.size(); ++j) {
      for (const Run& r : in.f2.images[j].runs()) {
        if (!have[static_cast<size_t>(r.gen)]) {
          throw UsageError("cannot derive a lift for generator " + in.gamma2.alpha.names[j] +
                           ": no single-generator preimage of " +
                           in.q.alpha.names[static_cast<size_t>(r.gen)] +
                           "; provide --lifts");
        }
      }
      in.lifts.push_back(in.f2.images[j].substitute(pre, 1u << 22));
    }
  }

  KernelExpressOptions opt;
  if (a.max_kernel_letters > 0) opt.max_letters = Int(a.max_kernel_letters);
  opt.fallback.depth = static_cast<size_t>(a.depth);

  std::string why1, why2;
  auto b1 = a.gamma_backend == "auto" ? make_backend("dehn", in.gamma, &why1) : nullptr;
  if (!b1) b1 = make_backend(a.gamma_backend == "auto" ? "bounded" : a.gamma_backend, in.gamma, &why1);
  if (!b1) {
    std::cerr << "error: no engine for the cover presentation: " << why1 << "\n";
    return 1;
  }
  const auto b2 = make_backend(a.gamma2_backend, in.gamma2, &why2);
  if (!b2) {
    std::cerr << "error: no engine for the second factor: " << why2 << "\n";
    return 1;
  }

  const FibrePresentation fp = emit_fibre(in, *b1, *b2, opt);
  const SubdirectReport sd = verify_subdirect(in, fp);
  if (!a.out.empty()) write_file(a.out, fp.pres.to_text());
  if (!a.embed_out.empty()) {
    write_file(a.embed_out, fp.embedding_text(in.gamma.alpha, in.gamma2.alpha));
  }
  if (a.json) {
    Json j = timed_base("fibre", timer.seconds());
    j["fibre"] = fibre_summary(fp);
    j["subdirect"] = to_json(sd);
    j["engines"] = {{"gamma", b1->name()}, {"gamma2", b2->name()}};
    if (!a.out.empty()) j["files"]["presentation"] = a.out;
    if (!a.embed_out.empty()) j["files"]["embedding"] = a.embed_out;
    j["pass"] = sd.pass;
    emit(j);
  } else {
    std::cout << (sd.pass ? "pass" : "fail") << ": " << fp.pres.num_gens() << " generators, "
              << fp.pres.num_relators() << " relators, every relator certified coordinate-wise\n";
    for (const SubdirectEntry& e : sd.entries) {
      if (!e.pass) std::cout << "  failed: " << e.check << " (" << e.detail << ")\n";
    }
  }
  return sd.pass ? 0 : 1;
}

int cmd_pipeline(const PipelineArgs& a) {
  const Timer timer;
  PipelineOptions po;
  po.n_max = a.n_max;
  if (a.kernel_budget > 0) po.express.max_letters = Int(a.kernel_budget);
  const char which = a.which[0];
  auto stages = emit_series(which, po);

  fs::create_directories(a.out_dir);
  bool all_ok = true;
  Json stage_reports = Json::array();
  for (PipelineStage& st : stages) {
    all_ok &= st.ok;
    const std::string base = (fs::path(a.out_dir) / ("p_" + std::to_string(st.n))).string();
    Json j = report_base("pipeline");
    j["tool"]["command"] = g_command;
    j["pipeline"] = std::string(1, static_cast<char>(std::toupper(which)));
    j["n"] = st.n;
    j["ok"] = st.ok;
    if (!st.error.empty()) j["error"] = st.error;
    if (st.fp.has_value()) {
      write_file(base + ".pres", st.fp->pres.to_text());
      write_file(base + ".embed", st.fp->embedding_text(st.gamma_alpha, st.gamma2_alpha));
      j["fibre"] = fibre_summary(*st.fp);
      j["files"] = {{"presentation", base + ".pres"}, {"embedding", base + ".embed"}};
    }
    if (st.subdirect.has_value()) j["subdirect"] = to_json(*st.subdirect);
    j["timing"]["seconds"] = timer.seconds();
    write_file(base + ".json", j.dump(2) + "\n");
    if (!a.json) {
      std::cout << "stage " << st.n << ": " << (st.ok ? "ok" : ("FAIL: " + st.error)) << "\n";
    }
    j.erase("timing");
    stage_reports.push_back(std::move(j));
    st.fp.reset();  // keep peak memory bounded while later stages are written
  }
  Json summary = timed_base("pipeline", timer.seconds());
  summary["pipeline"] = std::string(1, static_cast<char>(std::toupper(which)));
  summary["n_max"] = a.n_max;
  summary["ok"] = all_ok;
  summary["stages"] = stage_reports;
  write_file((fs::path(a.out_dir) / "summary.json").string(), summary.dump(2) + "\n");
  if (a.json) emit(summary);
  return all_ok ? 0 : 1;
}

int cmd_witness(const WitnessArgs& a) {
  const Timer timer;
  NamedSystem bsys = build_system("b");
  const BsSolver bs(Int(2), Int(3), 0, 1);
  const Word c1 = bsys.distinguished.at("c1");

  std::vector<std::pair<int, int>> level_pairs;
  if (a.n >= 0 || a.m >= 0) {
    if (a.n < 0 || a.m <= a.n) throw UsageError("--n and --m need 0 <= n < m");
    level_pairs.emplace_back(a.n, a.m);
  } else {
    for (int n = 0; n <= a.n_max; ++n) {
      for (int m = n + 1; m <= a.n_max; ++m) level_pairs.emplace_back(n, m);
    }
  }
  if (!a.cert_dir.empty()) fs::create_directories(a.cert_dir);

  bool all_ok = true;
  Json rows = Json::array();
  for (const auto& [n, m] : level_pairs) {
    const Word u = kernel_witness(n, m);
    const Word um = qn_map(m).apply(u);
    const Word un = qn_map(n).apply(u);
    const bool dies = bs.is_trivial(um);
    const bool lands = bs.equal(un, c1) && !bs.is_trivial(un);
    all_ok &= dies && lands;
    Json row;
    row["n"] = n;
    row["m"] = m;
    row["dies_at_m"] = dies;
    row["equals_witness_at_n"] = lands;
    if (!a.cert_dir.empty()) {
      const std::string p1 =
          (fs::path(a.cert_dir) / ("u" + std::to_string(n) + "_level" + std::to_string(m) + ".cert"))
              .string();
      write_file(p1, bs.certify(um, bsys.pres.alpha).serialize());
      const std::string p2 =
          (fs::path(a.cert_dir) / ("u" + std::to_string(n) + "_level" + std::to_string(n) + ".cert"))
              .string();
      write_file(p2, bs.certify(un, bsys.pres.alpha).serialize());
      row["certificates"] = {p1, p2};
    }
    rows.push_back(std::move(row));
    if (!a.json) {
      std::cout << "u_" << n << ": dies at level " << m << " " << (dies ? "(certified)" : "FAILED")
                << ", equals the witness at level " << n << " "
                << (lands ? "(certified non-trivial)" : "FAILED") << "\n";
    }
  }
  if (a.json) {
    Json j = timed_base("witness", timer.seconds());
    j["pairs"] = rows;
    j["note"] = kEmbeddingNote;
    j["ok"] = all_ok;
    emit(j);
  } else {
    std::cout << "note: " << kEmbeddingNote << "\n";
  }
  return all_ok ? 0 : 1;
}

int cmd_nielsen(const NielsenArgs& a) {
  const Timer timer;
  NamedSystem ssys = build_system("s");
  const BsSolver solver(Int(2), Int(3), 0, 1);
  std::vector<std::pair<Word, Word>> pairs;
  std::vector<std::string> names;
  {
    std::stringstream ss(a.sigma);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      const int lvl = std::stoi(tok);
      pairs.push_back(sigma_pair(lvl));
      names.push_back("level " + tok);
    }
  }
  {
    std::stringstream ss(a.pairs);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
      const size_t bar = tok.find('|');
      if (tok.find_first_not_of(" \t") == std::string::npos) continue;
      if (bar == std::string::npos) {
        throw UsageError("--pairs entries look like \"<word> | <word>\", separated by ';'");
      }
      pairs.emplace_back(parse_word(tok.substr(0, bar), ssys.pres.alpha, "pair"),
                         parse_word(tok.substr(bar + 1), ssys.pres.alpha, "pair"));
      names.push_back(tok);
    }
  }
  if (pairs.empty()) throw UsageError("no generating pairs given");

  const int jobs = a.jobs > 0 ? a.jobs : env_jobs();
  const NielsenOrbitReport rep =
      nielsen_orbit(solver, ssys.pres.alpha, pairs, static_cast<size_t>(a.depth),
                    static_cast<size_t>(a.max_states), jobs);
  if (a.json) {
    Json j = timed_base("nielsen", timer.seconds());
    j["pairs"] = names;
    j["report"] = to_json(rep);
    emit(j);
  } else {
    for (size_t i = 0; i < pairs.size(); ++i) {
      std::cout << names[i] << ": ball size " << rep.ball_sizes[i] << "\n";
    }
    if (rep.intersecting.empty()) {
      std::cout << "all balls pairwise disjoint to depth " << a.depth << "\n";
    }
    for (size_t i = 0; i < rep.intersecting.size(); ++i) {
      std::cout << names[rep.intersecting[i][0]] << " meets " << names[rep.intersecting[i][1]]
                << " at " << rep.merge_witnesses[i] << "\n";
    }
    if (rep.budget_exceeded) std::cout << "state budget exceeded before the target depth\n";
  }
  return rep.budget_exceeded ? 1 : 0;
}

int cmd_check(const CheckArgs& a) {
  const Timer timer;
  AcceptanceOptions opt;
  opt.jobs = a.jobs > 0 ? a.jobs : env_jobs();
  opt.quotient_degree = a.degree;
  std::vector<int> todo;
  if (a.criterion > 0) {
    todo.push_back(a.criterion);
  } else {
    for (int i = 1; i <= num_criteria(); ++i) todo.push_back(i);
  }
  bool all = true;
  Json rows = Json::array();
  for (const int c : todo) {
    const AcceptanceResult r = run_criterion(c, opt);
    all &= r.pass;
    if (a.json) {
      Json row;
      row["criterion"] = r.criterion;
      row["pass"] = r.pass;
      row["seconds"] = r.seconds;
      row["detail"] = r.detail;
      rows.push_back(std::move(row));
    } else {
      std::ostringstream os;
      os.precision(2);
      os << std::fixed << r.seconds;
      std::cout << "criterion " << r.criterion << ": " << (r.pass ? "PASS" : "FAIL") << " ("
                << os.str() << " s) - " << r.detail << "\n";
    }
    if (!r.pass && a.fail_fast) break;
  }
  if (a.json) {
    Json j = timed_base("check", timer.seconds());
    j["criteria"] = rows;
    j["ok"] = all;
    emit(j);
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) {
    if (i) g_command += " ";
    g_command += argv[i];
  }

  CLI::App app{"constructive toolkit for finitely presented groups"};
  app.require_subcommand(1);

  BuildArgs build_args;
  auto* c_build = app.add_subcommand("build", "materialize a packaged presentation");
  c_build->add_option("name", build_args.name, "s, b, q or lambda")
      ->required()
      ->check(CLI::IsMember({"s", "b", "q", "lambda"}));
  c_build->add_option("-o,--out", build_args.out, "write the presentation here");
  c_build->add_flag("--json", build_args.json, "machine-readable report");

  WpArgs wp_args;
  auto* c_wp = app.add_subcommand("wp", "decide whether a word is trivial");
  wp_args.src.attach(c_wp);
  c_wp->add_option("--word", wp_args.word, "word over the presentation's generators")->required();
  c_wp->add_option("--method", wp_args.method, "engine (default auto)")
      ->check(CLI::IsMember({"auto", "britton", "dehn", "bounded", "raag"}));
  c_wp->add_option("--cert-out", wp_args.cert_out, "write the certificate here");
  c_wp->add_flag("--json", wp_args.json, "machine-readable report");

  SmallcancArgs sc_args;
  auto* c_sc = app.add_subcommand("smallcanc", "verify the metric small-cancellation condition");
  sc_args.src.attach(c_sc);
  c_sc->add_option("--lambda", sc_args.lambda, "pieces per relator to exclude (default 6)");
  c_sc->add_flag("--json", sc_args.json, "machine-readable report");

  H1Args h1_args;
  auto* c_h1 = app.add_subcommand("h1", "abelianization invariants");
  h1_args.src.attach(c_h1);
  c_h1->add_flag("--json", h1_args.json, "machine-readable report");

  QuotientsArgs qu_args;
  auto* c_qu = app.add_subcommand("quotients", "sweep small permutation actions");
  qu_args.src.attach(c_qu);
  c_qu->add_option("--degree", qu_args.degree, "symmetric group degree (default 5)")
      ->check(CLI::Range(1, 7));
  c_qu->add_option("--zn", qu_args.zn, "also count maps to Z/n (repeatable)");
  c_qu->add_option("--jobs", qu_args.jobs, "worker threads (default GFORGE_JOBS or 1)");
  c_qu->add_flag("--json", qu_args.json, "machine-readable report");

  RipsArgs rips_args;
  auto* c_rips = app.add_subcommand("rips", "small-cancellation cover with kernel generators");
  rips_args.src.attach(c_rips);
  c_rips->add_option("--block-length", rips_args.block_length, "factors per block word");
  c_rips->add_option("--stride", rips_args.stride, "exponent stride between block words");
  c_rips->add_option("-o,--out", rips_args.out, "write the cover presentation here");
  c_rips->add_option("--map-out", rips_args.map_out, "write the projection map here");
  c_rips->add_flag("--json", rips_args.json, "machine-readable report");

  FibreArgs fib_args;
  auto* c_fib = app.add_subcommand("fibre", "present a pullback subgroup of a direct product");
  c_fib->add_option("--gamma", fib_args.gamma_file, "cover presentation")->required();
  c_fib->add_option("--gamma2", fib_args.gamma2_file, "second factor presentation")->required();
  c_fib->add_option("--q", fib_args.q_file, "common quotient presentation")->required();
  c_fib->add_option("--f1", fib_args.f1_file, "projection map gamma -> q")->required();
  c_fib->add_option("--f2", fib_args.f2_file, "map gamma2 -> q")->required();
  c_fib->add_option("--kernel", fib_args.kernel, "comma-separated kernel generators of f1")
      ->required();
  c_fib->add_option("--lifts", fib_args.lifts_file,
                    "gamma-lifts of the gamma2 generators (derived when omitted)");
  c_fib->add_option("-o,--out", fib_args.out, "write the pullback presentation here");
  c_fib->add_option("--embed-out", fib_args.embed_out, "write the coordinate embedding here");
  c_fib->add_flag("--aspherical", fib_args.aspherical,
                  "assert that the quotient presentation is aspherical (required)");
  c_fib->add_option("--max-kernel-letters", fib_args.max_kernel_letters,
                    "budget for materialized kernel words");
  c_fib->add_option("--depth", fib_args.depth, "bounded search depth for residual skeletons");
  c_fib->add_option("--gamma-backend", fib_args.gamma_backend, "engine for the cover")
      ->check(CLI::IsMember({"auto", "dehn", "bounded"}));
  c_fib->add_option("--gamma2-backend", fib_args.gamma2_backend, "engine for the second factor")
      ->check(CLI::IsMember({"auto", "britton", "raag", "dehn", "bounded"}));
  c_fib->add_flag("--json", fib_args.json, "machine-readable report");

  PipelineArgs pipe_args;
  auto* c_pipe = app.add_subcommand("pipeline", "emit a series of pullback presentations");
  c_pipe->add_option("which", pipe_args.which, "A (endomorphism-twisted) or B (graph group)")
      ->required()
      ->check(CLI::IsMember({"A", "B", "a", "b"}));
  c_pipe->add_option("--n-max", pipe_args.n_max, "last stage index (default 3)");
  c_pipe->add_option("-o,--out", pipe_args.out_dir, "output directory")->required();
  c_pipe->add_option("--kernel-budget", pipe_args.kernel_budget,
                     "letter budget for kernel rewriting");
  c_pipe->add_flag("--json", pipe_args.json, "machine-readable report");

  WitnessArgs wit_args;
  auto* c_wit = app.add_subcommand("witness", "kernel separation witnesses across levels");
  c_wit->add_option("--n", wit_args.n, "witness level");
  c_wit->add_option("--m", wit_args.m, "level at which the witness dies");
  c_wit->add_option("--n-max", wit_args.n_max, "sweep all pairs up to this level (default 5)");
  c_wit->add_option("--cert-dir", wit_args.cert_dir, "write certificates into this directory");
  c_wit->add_flag("--json", wit_args.json, "machine-readable report");

  NielsenArgs ni_args;
  auto* c_ni = app.add_subcommand("nielsen", "elementary-move balls around generating pairs");
  c_ni->add_option("--sigma", ni_args.sigma, "comma-separated image levels (default 0,1,2)");
  c_ni->add_option("--pairs", ni_args.pairs, "extra pairs \"<u> | <v> ; <u> | <v>\"");
  c_ni->add_option("--depth", ni_args.depth, "ball radius (default 8)");
  c_ni->add_option("--max-states", ni_args.max_states, "total state budget");
  c_ni->add_option("--jobs", ni_args.jobs, "worker threads (default GFORGE_JOBS or 1)");
  c_ni->add_flag("--json", ni_args.json, "machine-readable report");

  CheckArgs chk_args;
  auto* c_chk = app.add_subcommand("check", "run the toolkit's end-to-end checks");
  c_chk->add_option("--criterion", chk_args.criterion, "run a single numbered check");
  c_chk->add_flag("--fail-fast", chk_args.fail_fast, "stop at the first failure");
  c_chk->add_option("--jobs", chk_args.jobs, "worker threads (default GFORGE_JOBS or 1)");
  c_chk->add_option("--degree", chk_args.degree, "permutation sweep degree (default 5)")
      ->check(CLI::Range(1, 7));
  c_chk->add_flag("--json", chk_args.json, "machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (c_build->parsed()) return cmd_build(build_args);
    if (c_wp->parsed()) return cmd_wp(wp_args);
    if (c_sc->parsed()) return cmd_smallcanc(sc_args);
    if (c_h1->parsed()) return cmd_h1(h1_args);
    if (c_qu->parsed()) return cmd_quotients(qu_args);
    if (c_rips->parsed()) return cmd_rips(rips_args);
    if (c_fib->parsed()) return cmd_fibre(fib_args);
    if (c_pipe->parsed()) return cmd_pipeline(pipe_args);
    if (c_wit->parsed()) return cmd_witness(wit_args);
    if (c_ni->parsed()) return cmd_nielsen(ni_args);
    if (c_chk->parsed()) return cmd_check(chk_args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

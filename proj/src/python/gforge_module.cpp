#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>
#include <stdexcept>

#include "gforge/backend.hpp"
#include "gforge/constructions.hpp"
#include "gforge/fibre.hpp"
#include "gforge/matrix.hpp"
#include "gforge/quotients.hpp"
#include "gforge/report.hpp"
#include "gforge/rips.hpp"

namespace py = pybind11;
using namespace gforge;

namespace {

// The Python surface is string-based: presentations and words travel in the
// same text format the CLI reads and writes, so round-trips are trivial and
// no big-integer bridging is needed (counts come back as decimal strings).

Presentation parse_pres(const std::string& text) { return Presentation::parse(text, "python"); }

struct BackendChoice {
  std::shared_ptr<const WpBackend> backend;
  std::string why;
};

BackendChoice choose_backend(const std::string& method, const Presentation& pres) {
  BackendChoice out;
  auto try_bs = [&]() -> std::shared_ptr<const WpBackend> {
    if (pres.num_gens() != 2 || pres.num_relators() != 1) return nullptr;
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
        auto solver = std::make_shared<BsSolver>(ra.exp, -ra2.exp, ra.gen, rt.gen);
        return std::make_shared<BrittonBackend>(solver, pres.alpha);
      }
    }
    return nullptr;
  };
  auto note = [&](const std::string& m) {
    if (!out.why.empty()) out.why += "; ";
    out.why += m;
  };
  if (method == "britton" || method == "auto") {
    if ((out.backend = try_bs())) return out;
    note("britton: not a single ascending one-relator pair");
    if (method == "britton") return out;
  }
  if (method == "raag" || method == "auto") {
    try {
      auto solver = std::make_shared<RaagSolver>(RaagSolver::from_presentation(pres));
      out.backend = std::make_shared<RaagBackend>(solver, pres.alpha);
      return out;
    } catch (const std::exception& e) {
      note(std::string("raag: ") + e.what());
      if (method == "raag") return out;
    }
  }
  if (method == "dehn" || method == "auto") {
    try {
      out.backend = std::make_shared<DehnBackend>(std::make_shared<SymmetrizedSet>(pres));
      return out;
    } catch (const std::exception& e) {
      note(std::string("dehn: ") + e.what());
      if (method == "dehn") return out;
    }
  }
  if (method == "bounded" || method == "auto") {
    try {
      out.backend = std::make_shared<BoundedBackend>(std::make_shared<SymmetrizedSet>(pres));
      return out;
    } catch (const std::exception& e) {
      note(std::string("bounded: ") + e.what());
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_gforge, m) {
  m.doc() = "constructive toolkit for finitely presented groups";

  m.def("version", []() { return std::string(kToolVersion); });

  m.def("builtin_text", [](const std::string& name) { return build_system(name).pres.to_text(); },
        py::arg("name"), "presentation text of a packaged system: s, b, q or lambda");

  m.def(
      "distinguished",
      [](const std::string& name) {
        const NamedSystem sys = build_system(name);
        std::map<std::string, std::string> out;
        for (const auto& [nm, w] : sys.distinguished) out[nm] = word_to_string(w, sys.pres.alpha);
        return out;
      },
      py::arg("name"), "named distinguished words of a packaged system");

  m.def(
      "generators",
      [](const std::string& pres_text) { return parse_pres(pres_text).alpha.names; },
      py::arg("presentation"));

  m.def(
      "num_relators",
      [](const std::string& pres_text) { return parse_pres(pres_text).num_relators(); },
      py::arg("presentation"));

  m.def(
      "wp",
      [](const std::string& pres_text, const std::string& word, const std::string& method) {
        const Presentation pres = parse_pres(pres_text);
        const Word w = parse_word(word, pres.alpha, "word");
        const BackendChoice c = choose_backend(method, pres);
        if (!c.backend) throw std::runtime_error("no word-problem engine: " + c.why);
        const WpResult r = c.backend->decide(w);
        return py::make_tuple(std::string(wp_status_name(r.status)), r.method, r.detail);
      },
      py::arg("presentation"), py::arg("word"), py::arg("method") = "auto",
      "decide a word; returns (status, engine, detail)");

  m.def(
      "h1",
      [](const std::string& pres_text) {
        const H1Result h = homology_h1(parse_pres(pres_text));
        std::vector<std::string> torsion;
        for (const Int& d : h.torsion) torsion.push_back(d.str());
        return py::make_tuple(h.free_rank, torsion, h.pretty());
      },
      py::arg("presentation"), "abelianization invariants: (rank, torsion, pretty)");

  m.def(
      "smallcanc",
      [](const std::string& pres_text, int lambda) {
        const SymmetrizedSet sym(parse_pres(pres_text));
        const PieceReport rep = verify_metric_condition(sym, lambda);
        py::dict d;
        d["pass"] = rep.pass;
        d["lambda"] = rep.lambda;
        d["classes"] = rep.num_classes;
        d["max_piece"] = rep.max_piece;
        d["min_relator_len"] = rep.min_relator_len;
        return d;
      },
      py::arg("presentation"), py::arg("lam") = 6, "metric small-cancellation check");

  m.def(
      "quotients",
      [](const std::string& pres_text, int degree, int jobs) {
        const PermSweepResult r = count_perm_quotients(parse_pres(pres_text), degree, jobs);
        py::dict d;
        d["degree"] = r.degree;
        d["total"] = r.total.str();
        d["nontrivial"] = r.nontrivial.str();
        d["nodes"] = r.nodes;
        return d;
      },
      py::arg("presentation"), py::arg("degree") = 5, py::arg("jobs") = 1,
      "count actions on {1..degree}; counts are decimal strings");

  m.def(
      "zn_count",
      [](const std::string& pres_text, long long n) {
        const ZnCountResult r = count_zn_homs(parse_pres(pres_text), Int(n));
        return py::make_tuple(r.predicted.str(), r.brute.str(), r.brute_ran);
      },
      py::arg("presentation"), py::arg("n"), "(predicted, brute, brute_ran) for maps to Z/n");

  m.def(
      "rips",
      [](const std::string& pres_text, int block_length, int stride) {
        RipsParams params;
        params.block_length = block_length;
        params.stride = stride;
        const RipsOutput ro = rips_construct(parse_pres(pres_text), params);
        const FreeImageReport fi = pi0_freely_well_defined(ro);
        const NormalityReport nr = verify_normality(ro);
        py::dict d;
        d["gamma"] = ro.gamma.to_text();
        d["projection"] = ro.pi0.to_text(ro.gamma.alpha, ro.source.alpha);
        d["metric_pass"] = ro.metric.pass;
        d["free_image_pass"] = fi.pass;
        d["normality_pass"] = nr.all_pass;
        d["block_length"] = ro.used.block_length;
        d["stride"] = ro.used.stride;
        std::vector<std::string> kg;
        for (const int32_t k : ro.kernel_gens) kg.push_back(ro.gamma.alpha.names[static_cast<size_t>(k)]);
        d["kernel_generators"] = kg;
        return d;
      },
      py::arg("presentation"), py::arg("block_length") = 10, py::arg("stride") = 10,
      "small-cancellation cover with kernel generators");

  m.def(
      "witness_check",
      [](int n, int mm) {
        const NamedSystem bsys = build_system("b");
        const BsSolver bs(Int(2), Int(3), 0, 1);
        const Word u = kernel_witness(n, mm);
        const bool dies = bs.is_trivial(qn_map(mm).apply(u));
        const Word un = qn_map(n).apply(u);
        const bool lands = bs.equal(un, bsys.distinguished.at("c1")) && !bs.is_trivial(un);
        return py::make_tuple(dies, lands);
      },
      py::arg("n"), py::arg("m"),
      "(dies_at_m, equals_witness_at_n) for the level-(n, m) kernel witness");

  m.def(
      "kernel_witness_word",
      [](int n, int mm) {
        const NamedSystem lam = build_system("lambda");
        return word_to_string(kernel_witness(n, mm), lam.pres.alpha);
      },
      py::arg("n"), py::arg("m"));

  m.def(
      "nielsen_disjoint",
      [](const std::vector<int>& levels, int depth, long long max_states, int jobs) {
        const NamedSystem ssys = build_system("s");
        const BsSolver solver(Int(2), Int(3), 0, 1);
        std::vector<std::pair<Word, Word>> pairs;
        for (const int lvl : levels) pairs.push_back(sigma_pair(lvl));
        const NielsenOrbitReport rep =
            nielsen_orbit(solver, ssys.pres.alpha, pairs, static_cast<size_t>(depth),
                          static_cast<size_t>(max_states), jobs);
        py::dict d;
        d["disjoint"] = rep.intersecting.empty();
        d["budget_exceeded"] = rep.budget_exceeded;
        d["ball_sizes"] = rep.ball_sizes;
        return d;
      },
      py::arg("levels"), py::arg("depth") = 8, py::arg("max_states") = 2000000, py::arg("jobs") = 1,
      "whether elementary-move balls around the level pairs stay disjoint");

  m.def(
      "pipeline",
      [](const std::string& which, int n_max) {
        if (which.size() != 1 || (which != "A" && which != "B" && which != "a" && which != "b")) {
          throw std::runtime_error("pipeline is 'A' or 'B'");
        }
        PipelineOptions opt;
        opt.n_max = n_max;
        auto stages = emit_series(which[0], opt);
        py::list out;
        for (PipelineStage& st : stages) {
          py::dict d;
          d["n"] = st.n;
          d["ok"] = st.ok;
          d["error"] = st.error;
          if (st.fp.has_value()) {
            d["presentation"] = st.fp->pres.to_text();
            d["embedding"] = st.fp->embedding_text(st.gamma_alpha, st.gamma2_alpha);
          }
          st.fp.reset();
          out.append(std::move(d));
        }
        return out;
      },
      py::arg("which"), py::arg("n_max") = 1,
      "emit pullback stages; failed stages carry the error instead of text");
}

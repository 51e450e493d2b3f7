#include "gforge/report.hpp"

namespace gforge {

Json report_base(const std::string& tool) {
  Json j;
  j["schema"] = kReportSchema;
  j["tool"] = {{"name", "gforge"}, {"version", kToolVersion}, {"command", tool}};
  j["timing"] = Json::object();
  return j;
}

const char* wp_status_name(WpStatus s) {
  switch (s) {
    case WpStatus::Trivial:
      return "trivial";
    case WpStatus::NonTrivial:
      return "non-trivial";
    default:
      return "unknown";
  }
}

Json to_json(const WpResult& r) {
  Json j;
  j["status"] = wp_status_name(r.status);
  j["method"] = r.method;
  j["detail"] = r.detail;
  j["has_certificate"] = r.cert.has_value();
  return j;
}

Json to_json(const PieceReport& r) {
  Json j;
  j["lambda"] = r.lambda;
  j["pass"] = r.pass;
  j["reason"] = r.reason;
  j["num_classes"] = r.num_classes;
  j["num_elements"] = r.num_elements;
  j["max_piece"] = r.max_piece;
  j["min_relator_len"] = r.min_relator_len;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"class", row.class_id},
                    {"len", row.len},
                    {"period", row.period},
                    {"max_piece", row.max_piece},
                    {"ok", row.ok}});
  }
  j["classes"] = std::move(rows);
  if (r.witness) {
    j["witness"] = {{"piece", r.witness->piece},
                    {"class_a", r.witness->class_a},
                    {"offset_a", r.witness->offset_a},
                    {"class_b", r.witness->class_b},
                    {"offset_b", r.witness->offset_b}};
  }
  return j;
}

Json to_json(const H1Result& r) {
  Json j;
  j["free_rank"] = r.free_rank;
  Json tor = Json::array();
  for (const Int& t : r.torsion) tor.push_back(t.str());
  j["torsion"] = std::move(tor);
  j["pretty"] = r.pretty();
  return j;
}

Json to_json(const PermSweepResult& r, const Presentation& pres) {
  Json j;
  j["degree"] = r.degree;
  j["total"] = r.total.str();
  j["nontrivial"] = r.nontrivial.str();
  j["nodes"] = r.nodes;
  if (r.sample) {
    Json sample = Json::object();
    for (size_t g = 0; g < r.sample->size(); ++g) {
      sample[pres.alpha.names[g]] = perm_to_cycles((*r.sample)[g]);
    }
    j["sample"] = std::move(sample);
  }
  return j;
}

Json to_json(const ZnCountResult& r) {
  Json j;
  j["n"] = r.n.str();
  j["predicted"] = r.predicted.str();
  j["brute_ran"] = r.brute_ran;
  if (r.brute_ran) j["brute"] = r.brute.str();
  return j;
}

Json to_json(const EpiCheckReport& r, const Alphabet& dom, const Alphabet& cod) {
  Json j;
  j["well_defined"] = r.well_defined;
  j["surjective"] = r.surjective;
  j["unknown"] = r.unknown;
  Json rel = Json::array();
  for (const auto& res : r.relator_results) rel.push_back(to_json(res));
  j["relators"] = std::move(rel);
  Json gens = Json::array();
  for (size_t g = 0; g < r.generator_results.size(); ++g) {
    Json e = to_json(r.generator_results[g]);
    e["generator"] = cod.names[g];
    e["preimage"] = word_to_string(r.preimages[g], dom);
    gens.push_back(std::move(e));
  }
  j["generators"] = std::move(gens);
  return j;
}

Json to_json(const NielsenOrbitReport& r) {
  Json j;
  j["depth"] = r.depth;
  j["budget_exceeded"] = r.budget_exceeded;
  j["ball_sizes"] = r.ball_sizes;
  Json inter = Json::array();
  for (size_t i = 0; i < r.intersecting.size(); ++i) {
    inter.push_back({{"a", r.intersecting[i][0]},
                     {"b", r.intersecting[i][1]},
                     {"witness", r.merge_witnesses[i]}});
  }
  j["intersecting"] = std::move(inter);
  return j;
}

Json to_json(const FreeImageReport& r) {
  Json j;
  j["pass"] = r.pass;
  Json m = Json::array();
  for (int v : r.matched) {
    if (v == -1) {
      m.push_back("empty");
    } else if (v < 0) {
      m.push_back("mismatch");
    } else {
      m.push_back(v);
    }
  }
  j["relator_images"] = std::move(m);
  return j;
}

Json to_json(const NormalityReport& r, const Alphabet& alpha) {
  Json j;
  j["all_pass"] = r.all_pass;
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"generator", alpha.names[static_cast<size_t>(e.gen)]},
                       {"kernel_generator", alpha.names[static_cast<size_t>(e.kgen)]},
                       {"ok", e.ok},
                       {"check_letters", e.check_letters}});
  }
  j["entries"] = std::move(entries);
  return j;
}

Json to_json(const SubdirectReport& r) {
  Json j;
  j["pass"] = r.pass;
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"check", e.check}, {"pass", e.pass}, {"detail", e.detail}});
  }
  j["entries"] = std::move(entries);
  return j;
}

Json fibre_summary(const FibrePresentation& fp) {
  Json j;
  j["generators"] = fp.pres.num_gens();
  j["relators"] = fp.pres.num_relators();
  j["hats"] = fp.num_hats;
  j["gamma_ref"] = fp.gamma_ref;
  j["gamma2_ref"] = fp.gamma2_ref;
  Json rels = Json::array();
  for (const auto& fr : fp.relators) {
    rels.push_back({{"family", fr.family},
                    {"index", fr.index},
                    {"first_check", to_json(fr.first_check)},
                    {"second_check", to_json(fr.second_check)}});
  }
  j["relator_checks"] = std::move(rels);
  return j;
}

}  // namespace gforge

#include "gforge/backend.hpp"

#include <stdexcept>
#include <utility>

namespace gforge {

BrittonBackend::BrittonBackend(std::shared_ptr<const BsSolver> solver, Alphabet alpha)
    : solver_(std::move(solver)), alpha_(std::move(alpha)) {
  if (!solver_) throw std::invalid_argument("BrittonBackend: null solver");
}

WpResult BrittonBackend::decide(const Word& w) const {
  WpResult res;
  res.method = "britton";
  const int32_t a = solver_->a_gen();
  const int32_t t = solver_->t_gen();
  for (const auto& run : w.runs()) {
    if (run.gen != a && run.gen != t) {
      res.status = WpStatus::Unknown;
      res.detail = "word leaves the {" + alpha_.names[static_cast<size_t>(a)] + "," +
                   alpha_.names[static_cast<size_t>(t)] + "} sub-alphabet";
      return res;
    }
  }
  try {
    Word nf = solver_->normal_form(w);
    res.cert = solver_->certify(w, alpha_);
    if (nf.empty()) {
      res.status = WpStatus::Trivial;
      res.detail = "pinch sequence empties the word";
    } else {
      res.status = WpStatus::NonTrivial;
      res.detail = "normal form " + word_to_string(nf, alpha_);
    }
  } catch (const std::exception& e) {
    res.status = WpStatus::Unknown;
    res.detail = std::string("britton sweep aborted: ") + e.what();
  }
  return res;
}

RaagBackend::RaagBackend(std::shared_ptr<const RaagSolver> solver, Alphabet alpha)
    : solver_(std::move(solver)), alpha_(std::move(alpha)) {
  if (!solver_) throw std::invalid_argument("RaagBackend: null solver");
}

WpResult RaagBackend::decide(const Word& w) const {
  WpResult res;
  res.method = "raag";
  try {
    Word nf = solver_->normal_form(w);
    if (nf.empty()) {
      res.status = WpStatus::Trivial;
      res.cert = solver_->certify_trivial(w, alpha_);
      res.detail = "commutation moves cancel every letter";
    } else {
      res.status = WpStatus::NonTrivial;
      res.detail = "normal form " + word_to_string(nf, alpha_);
    }
  } catch (const std::exception& e) {
    res.status = WpStatus::Unknown;
    res.detail = std::string("raag reduction aborted: ") + e.what();
  }
  return res;
}

BoundedBackend::BoundedBackend(std::shared_ptr<const SymmetrizedSet> sym, TrivializeOptions opt)
    : triv_(std::move(sym)), opt_(opt) {}

WpResult BoundedBackend::decide(const Word& w) const {
  WpResult res;
  res.method = "bounded";
  auto cert = triv_.certify_trivial(w, opt_);
  if (cert) {
    res.status = WpStatus::Trivial;
    res.detail = "relator insertions cancel the word within depth " + std::to_string(opt_.depth);
    res.cert = std::move(*cert);
  } else {
    res.status = WpStatus::Unknown;
    res.detail = "no trivialization found within depth " + std::to_string(opt_.depth);
  }
  return res;
}

DehnBackend::DehnBackend(std::shared_ptr<const SymmetrizedSet> sym, size_t letter_cap)
    : solver_(sym), metric_(verify_metric_condition(*sym, 6)), letter_cap_(letter_cap) {
  if (!metric_.pass) {
    throw std::invalid_argument("DehnBackend: presentation fails C'(1/6): " + metric_.reason);
  }
}

WpResult DehnBackend::decide(const Word& w) const {
  WpResult res;
  res.method = "dehn";
  if (auto fast = solver_.shortword_nontrivial(w); fast && *fast) {
    res.status = WpStatus::NonTrivial;
    res.detail = "cyclically reduced and shorter than half the shortest relator";
    return res;
  }
  try {
    auto out = solver_.decide(w, letter_cap_);
    res.cert = std::move(out.cert);
    if (out.trivial) {
      res.status = WpStatus::Trivial;
      res.detail = "greedy relator replacement empties the word";
    } else {
      res.status = WpStatus::NonTrivial;
      res.detail = "rewriting halts on a nonempty word with no long relator factor";
    }
  } catch (const std::exception& e) {
    res.status = WpStatus::Unknown;
    res.detail = std::string("dehn rewriting aborted: ") + e.what();
  }
  return res;
}

ChainBackend::ChainBackend(std::vector<std::shared_ptr<const WpBackend>> legs)
    : legs_(std::move(legs)) {
  if (legs_.empty()) throw std::invalid_argument("ChainBackend: no legs");
  for (const auto& leg : legs_) {
    if (!leg) throw std::invalid_argument("ChainBackend: null leg");
  }
}

WpResult ChainBackend::decide(const Word& w) const {
  WpResult last;
  last.method = "chain";
  last.detail = "every leg answered Unknown";
  for (const auto& leg : legs_) {
    WpResult res = leg->decide(w);
    if (res.status != WpStatus::Unknown) return res;
    last.detail = res.method + ": " + res.detail;
  }
  last.status = WpStatus::Unknown;
  return last;
}

}  // namespace gforge

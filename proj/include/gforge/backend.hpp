#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gforge/bs.hpp"
#include "gforge/certificate.hpp"
#include "gforge/raag.hpp"
#include "gforge/smallcanc.hpp"
#include "gforge/trivializer.hpp"

namespace gforge {

enum class WpStatus { Trivial, NonTrivial, Unknown };

struct WpResult {
  WpStatus status = WpStatus::Unknown;
  std::string method;
  std::string detail;
  std::optional<Certificate> cert;
};

// A word-problem decision procedure. Implementations answer only within
// their domain of soundness and say Unknown otherwise; NonTrivial and
// Trivial are both hard claims.
class WpBackend {
 public:
  virtual ~WpBackend() = default;
  virtual std::string name() const = 0;
  virtual WpResult decide(const Word& w) const = 0;
};

// Britton sweep over one Baumslag-Solitar generator pair. Words touching any
// other generator return Unknown. Trivial verdicts transfer to any group in
// which the defining relator holds; NonTrivial verdicts are statements about
// the Baumslag-Solitar group itself.
class BrittonBackend : public WpBackend {
 public:
  BrittonBackend(std::shared_ptr<const BsSolver> solver, Alphabet alpha);
  std::string name() const override { return "britton"; }
  WpResult decide(const Word& w) const override;
  const BsSolver& solver() const { return *solver_; }

 private:
  std::shared_ptr<const BsSolver> solver_;
  Alphabet alpha_;
};

class RaagBackend : public WpBackend {
 public:
  RaagBackend(std::shared_ptr<const RaagSolver> solver, Alphabet alpha);
  std::string name() const override { return "raag"; }
  WpResult decide(const Word& w) const override;
  const RaagSolver& solver() const { return *solver_; }

 private:
  std::shared_ptr<const RaagSolver> solver_;
  Alphabet alpha_;
};

// Bounded relator-insertion search: Trivial or Unknown, never NonTrivial.
class BoundedBackend : public WpBackend {
 public:
  BoundedBackend(std::shared_ptr<const SymmetrizedSet> sym, TrivializeOptions opt = {});
  std::string name() const override { return "bounded"; }
  WpResult decide(const Word& w) const override;

 private:
  BoundedTrivializer triv_;
  TrivializeOptions opt_;
};

// Dehn's algorithm; constructor re-verifies the metric small-cancellation
// condition at lambda = 6 and refuses presentations that fail it, since the
// NonTrivial verdict leans on that hypothesis.
class DehnBackend : public WpBackend {
 public:
  explicit DehnBackend(std::shared_ptr<const SymmetrizedSet> sym, size_t letter_cap = (1u << 25));
  std::string name() const override { return "dehn"; }
  WpResult decide(const Word& w) const override;
  const DehnSolver& solver() const { return solver_; }
  const PieceReport& metric_report() const { return metric_; }

 private:
  DehnSolver solver_;
  PieceReport metric_;
  size_t letter_cap_;
};

// Tries each leg in order; the first definite answer wins.
class ChainBackend : public WpBackend {
 public:
  explicit ChainBackend(std::vector<std::shared_ptr<const WpBackend>> legs);
  std::string name() const override { return "chain"; }
  WpResult decide(const Word& w) const override;

 private:
  std::vector<std::shared_ptr<const WpBackend>> legs_;
};

}  // namespace gforge

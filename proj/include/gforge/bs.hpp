#pragma once

#include <optional>

#include "gforge/certificate.hpp"
#include "gforge/presentation.hpp"
#include "gforge/word.hpp"

namespace gforge {

// Word problem in BS(p,q) = <a, t | t a^p t^-1 a^-q> via a canonical HNN
// normal form: sweeping left to right, the a-exponent before each t is
// reduced into [0,q) and before each t^-1 into [0,p), the quotient power is
// carried across the stable letter, and pinches cancel. Two words are equal
// in the group iff their sweeps agree, and pinches act on run exponents, so
// a^(2^n) costs polynomial in n.
class BsSolver {
 public:
  BsSolver(Int p, Int q, int32_t a_gen, int32_t t_gen);

  int32_t a_gen() const { return a_; }
  int32_t t_gen() const { return t_; }
  const Int& p() const { return p_; }
  const Int& q() const { return q_; }

  // Throws CapExceeded when more than t_cap stable letters are processed.
  Word normal_form(const Word& w, std::vector<CertStep>* transcript = nullptr) const;
  bool is_trivial(const Word& w) const { return normal_form(w).empty(); }
  bool equal(const Word& u, const Word& v) const { return is_trivial(u * v.inverse()); }

  Certificate certify(const Word& w, const Alphabet& alpha) const;
  // Re-runs the sweep validating each transcript step arithmetically; throws
  // CertError on any mismatch. Returns the replayed normal form.
  Word replay(const Certificate& cert, const Word& start) const;

  static constexpr size_t t_cap = 1u << 20;

 private:
  Int p_, q_;
  int32_t a_, t_;

  Word sweep(const Word& w, std::vector<CertStep>* transcript, const Certificate* check,
             size_t* cursor) const;
};

}  // namespace gforge

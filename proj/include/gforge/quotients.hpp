#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gforge/ints.hpp"
#include "gforge/presentation.hpp"

namespace gforge {

// Permutations on up to 7 points; large enough for every sweep the toolkit
// runs, small enough to live in a register-sized array.
class Perm {
 public:
  static constexpr int kMaxDeg = 7;

  explicit Perm(int deg);
  static Perm identity(int deg) { return Perm(deg); }

  int deg() const { return deg_; }
  uint8_t at(int i) const { return img_[static_cast<size_t>(i)]; }
  void set(int i, uint8_t v) { img_[static_cast<size_t>(i)] = v; }

  Perm compose(const Perm& rhs) const;  // apply rhs first, then this
  Perm inverse() const;
  Perm pow(const Int& e) const;
  int order() const;
  bool is_identity() const;
  bool operator==(const Perm& o) const { return deg_ == o.deg_ && img_ == o.img_; }

 private:
  int deg_;
  std::array<uint8_t, kMaxDeg> img_;
};

std::vector<Perm> all_perms(int deg);

struct ConjClass {
  Perm rep;
  Int size;
  std::vector<int> cycle_type;  // partition, descending
};
std::vector<ConjClass> conjugacy_classes(int deg);

struct PermSweepResult {
  int degree = 0;
  Int total = 0;       // homomorphisms to S_degree, trivial one included
  Int nontrivial = 0;  // total minus the trivial homomorphism
  unsigned long long nodes = 0;  // assignments tried during the sweep
  // One non-trivial homomorphism, generator order, when any exists in the
  // searched slice.
  std::optional<std::vector<Perm>> sample;
};

std::string perm_to_cycles(const Perm& p);

// Counts homomorphisms by depth-first assignment along a precomputed order:
// forced generators (single occurrence at exponent +-1 in an otherwise
// assigned relator) are solved, the first enumerated generator ranges over
// conjugacy class representatives with orbit weights, and generators in no
// relator contribute a free factor.
PermSweepResult count_perm_quotients(const Presentation& p, int degree, int jobs = 1);

struct ZnCountResult {
  Int n;
  Int brute = 0;      // direct enumeration of assignments
  Int predicted = 0;  // from the abelianization invariants
  bool brute_ran = false;
};

// Homomorphisms to Z/n. The brute count is skipped (brute_ran false) when
// n^generators exceeds the budget.
ZnCountResult count_zn_homs(const Presentation& p, const Int& n, Int budget = Int(10000000));

}  // namespace gforge

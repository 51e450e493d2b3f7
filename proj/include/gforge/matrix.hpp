#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gforge/ints.hpp"
#include "gforge/presentation.hpp"

namespace gforge {

using IntMat = std::vector<std::vector<Int>>;  // row-major, rectangular

IntMat mat_identity(size_t n);
IntMat mat_mul(const IntMat& a, const IntMat& b);

struct SnfResult {
  IntMat d;               // diagonal form, same shape as the input
  IntMat u, v;            // unimodular with u * m * v == d
  std::vector<Int> diag;  // positive diagonal entries, each dividing the next
  size_t rank = 0;
};

SnfResult smith_normal_form(const IntMat& m);

struct H1Result {
  size_t free_rank = 0;
  std::vector<Int> torsion;  // entries > 1, divisibility chain
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string pretty() const;
};

// Exponent-sum matrix: one row per relator, one column per generator.
IntMat abelianization_matrix(const Presentation& p);
H1Result homology_h1(const Presentation& p);

// A balanced presentation with trivial first homology has trivial second
// homology; returns true in that case, nullopt when the test cannot speak.
std::optional<bool> h2_trivial_corroborated(const Presentation& p);

// |Hom(G, Z/n)| from the cokernel invariants.
Int count_hom_to_zn(const Presentation& p, const Int& n);

}  // namespace gforge

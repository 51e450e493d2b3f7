#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gforge/backend.hpp"
#include "gforge/presentation.hpp"

namespace gforge {

// A presentation with named distinguished words and named self/cross maps.
struct NamedSystem {
  std::string name;
  Presentation pres;
  std::map<std::string, Word> distinguished;
  std::map<std::string, GenMap> maps;
};

// Baumslag-Solitar group on generators a, t with t a^2 t^-1 = a^3.
Presentation build_s();
// Two commuting-witness copies glued by mixed commutator relators; generators
// a1, t1, a2, t2.
Presentation build_b();
// Balanced amalgam of the two: generators a, t, a1, t1, a2, t2 with the
// stable letters identified by the relator t t1^-1.
Presentation build_q();
// Right-angled Artin group on alpha1, tau1, alpha2, tau2, zeta where zeta
// commutes with alpha1 and tau1 and nothing else commutes.
Presentation build_lambda();

// name is one of "s", "b", "q", "lambda".
NamedSystem build_system(const std::string& name);

// a -> a^2, t -> t as a self-map of the two-generator system.
GenMap psi_map();
// The same on the a, t block of the six-generator system, identity elsewhere.
GenMap big_psi_map();
// n-fold composite of psi_map; sends a to a^(2^n).
GenMap psi_power(int n);
// pointwise outer(inner(g)) for every generator of inner's domain.
GenMap compose_genmap(const GenMap& inner, const GenMap& outer, size_t run_cap = (1u << 22));

// lambda -> b: alpha_i -> a_i^(2^n), tau_i -> t_i, zeta -> empty.
GenMap qn_map(int n);

// Word over {alpha_i, tau_i} built by w_0 = alpha_i and
// w_{k+1} = tau_i w_k tau_i^-1 w_k^-1, iterated n times. Its image under
// qn_map(m) is a_i^(2^(m-n)) for every m >= n, and it has 3*2^n - 2 letters.
Word sigma_preimage(int n, int i);

// u_n = [w_n, tau1 w_n tau1^-1] with w_n = sigma_preimage(n, 1). Dies under
// qn_map(m) for every m > n but maps onto the commutator witness under
// qn_map(n).
Word kernel_witness(int n, int m);

// Generating pair (t, a^(2^n)) of the image of psi_power(n).
std::pair<Word, Word> sigma_pair(int n);

struct EpiCheckReport {
  bool well_defined = false;
  bool surjective = false;
  bool unknown = false;  // some check returned Unknown rather than failing
  std::vector<WpResult> relator_results;    // one per domain relator image
  std::vector<Word> preimages;              // one per codomain generator
  std::vector<WpResult> generator_results;  // image(preimage) * gen^-1 per generator
};

// Certifies that m defines a homomorphism (every relator image is trivial in
// the codomain) and that it is onto (each codomain generator has an exhibited
// preimage whose image times the inverse generator is trivial). Verdicts are
// whatever the backend can certify; Unknown is reported, never asserted.
EpiCheckReport check_epimorphism(const Presentation& domain, const Presentation& codomain,
                                 const GenMap& m, const std::vector<Word>& preimages,
                                 const WpBackend& backend);

struct NielsenOrbitReport {
  size_t depth = 0;
  bool budget_exceeded = false;
  std::vector<size_t> ball_sizes;                   // one per input pair
  std::vector<std::array<size_t, 2>> intersecting;  // index pairs i < j with common states
  std::vector<std::string> merge_witnesses;         // lex-least common state per pair above
};

// Breadth-first balls of elementary Nielsen moves around each input pair,
// with states canonicalized entrywise by Britton normal form. Two pairs
// generate the same subgroup up to the explored depth iff their balls meet.
NielsenOrbitReport nielsen_orbit(const BsSolver& solver, const Alphabet& alpha,
                                 const std::vector<std::pair<Word, Word>>& pairs, size_t depth,
                                 size_t max_states = 2000000, int jobs = 1);

}  // namespace gforge

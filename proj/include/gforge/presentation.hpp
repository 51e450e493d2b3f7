#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "gforge/word.hpp"

namespace gforge {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Alphabet {
  std::vector<std::string> names;
  std::unordered_map<std::string, int32_t> index;

  int32_t add(const std::string& name);
  // -1 when absent.
  int32_t find(const std::string& name) const;
  size_t size() const { return names.size(); }
  bool operator==(const Alphabet& o) const { return names == o.names; }
};

std::string word_to_string(const Word& w, const Alphabet& a);
// Throws ParseError on unknown generators or malformed tokens. `where` is
// used in diagnostics.
Word parse_word(const std::string& text, const Alphabet& a, const std::string& where);

// A finite presentation. Relators are stored cyclically reduced (the
// conjugator does not change the normal closure); the relator count is
// preserved exactly as written, including relators that reduce to the
// empty word.
struct Presentation {
  Alphabet alpha;
  std::vector<Word> relators;

  size_t num_gens() const { return alpha.size(); }
  size_t num_relators() const { return relators.size(); }
  void add_gen(const std::string& name) { alpha.add(name); }
  void add_relator(const Word& w) { relators.push_back(w.cyclic_reduce().first); }
  void add_relator(const std::string& text) { add_relator(parse_word(text, alpha, "relator")); }

  std::string to_text() const;
  static Presentation parse(const std::string& text, const std::string& what);
};

// Generator map between two presentations' alphabets. The from:/to: lines
// are recorded references (paths or names); resolution of the presentations
// themselves is the caller's business.
struct GenMap {
  std::string from_ref;
  std::string to_ref;
  std::vector<Word> images;  // indexed by domain generator

  Word apply(const Word& w, size_t run_cap = 1u << 22) const { return w.substitute(images, run_cap); }

  std::string to_text(const Alphabet& dom, const Alphabet& cod) const;
  static GenMap parse(const std::string& text, const Alphabet& dom, const Alphabet& cod,
                      const std::string& what);
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace gforge

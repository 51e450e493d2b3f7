#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "gforge/constructions.hpp"
#include "gforge/presentation.hpp"

using namespace gforge;

namespace {

std::string data_file(const std::string& name) {
  const char* root = std::getenv("GFORGE_DATA");
  const std::filesystem::path base = root ? std::filesystem::path(root) : "presentations";
  return (base / (name + ".pres")).string();
}

}  // namespace

TEST_CASE("presentation text round trips") {
  Presentation p;
  p.add_gen("a");
  p.add_gen("t");
  p.add_relator("t a^2 t^-1 a^-3");
  const Presentation q = Presentation::parse(p.to_text(), "roundtrip");
  CHECK(q.alpha == p.alpha);
  CHECK(q.relators == p.relators);
}

TEST_CASE("relators are stored cyclically reduced") {
  Presentation p;
  p.add_gen("x");
  p.add_gen("y");
  p.add_relator("x y x y^-1 x^-1");
  // Both conjugating layers are stripped; the normal closure is unchanged.
  CHECK(p.relators[0] == Word::gen(0));
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(Presentation::parse("rel: x\n", "bad"), ParseError);
  CHECK_THROWS_AS(Presentation::parse("gens: x\ngens: y\n", "bad"), ParseError);
  CHECK_THROWS_AS(Presentation::parse("gens: x\nrel: y\n", "bad"), ParseError);
  CHECK_THROWS_AS(Presentation::parse("gens: x 1\n", "bad"), ParseError);
  CHECK_THROWS_AS(Presentation::parse("huh: x\n", "bad"), ParseError);
  CHECK_THROWS_AS(Presentation::parse("", "bad"), ParseError);
  CHECK_THROWS_AS(Presentation::parse("gens: x x\n", "bad"), ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
  const Presentation p =
      Presentation::parse("# heading\ngens: x y # trailing\n\nrel: x y x^-1 y^-1 # note\n", "ok");
  CHECK(p.num_gens() == 2);
  CHECK(p.num_relators() == 1);
}

TEST_CASE("the packaged files match the builders") {
  for (const std::string name : {"s", "b", "q", "lambda"}) {
    CAPTURE(name);
    const Presentation built = build_system(name).pres;
    const Presentation parsed =
        Presentation::parse(read_file(data_file(name)), data_file(name));
    CHECK(parsed.alpha == built.alpha);
    CHECK(parsed.relators == built.relators);
  }
}

TEST_CASE("generator maps parse and apply") {
  const Presentation s = build_s();
  GenMap m;
  m.from_ref = "s";
  m.to_ref = "s";
  m.images = {parse_word("a^2", s.alpha, "img"), Word::gen(1)};
  const std::string text = m.to_text(s.alpha, s.alpha);
  const GenMap back = GenMap::parse(text, s.alpha, s.alpha, "roundtrip");
  CHECK(back.images == m.images);
  CHECK(back.from_ref == m.from_ref);
  CHECK(back.to_ref == m.to_ref);

  const Word w = parse_word("t a t^-1", s.alpha, "w");
  CHECK(m.apply(w) == parse_word("t a^2 t^-1", s.alpha, "want"));
}

TEST_CASE("generator map parsing validates shape") {
  const Presentation s = build_s();
  // A map must cover every domain generator exactly once.
  CHECK_THROWS_AS(GenMap::parse("from: x\nto: y\na -> a\n", s.alpha, s.alpha, "bad"), ParseError);
  CHECK_THROWS_AS(
      GenMap::parse("from: x\nto: y\na -> a\nt -> t\na -> a\n", s.alpha, s.alpha, "bad"),
      ParseError);
  CHECK_THROWS_AS(GenMap::parse("from: x\nto: y\na -> a\nt -> zz\n", s.alpha, s.alpha, "bad"),
                  ParseError);
}

TEST_CASE("file io round trips") {
  const std::string path = (std::filesystem::temp_directory_path() / "gforge_io_test.txt").string();
  write_file(path, "gens: x\nrel: x^5\n");
  const Presentation p = Presentation::parse(read_file(path), path);
  CHECK(p.num_gens() == 1);
  CHECK(p.relators[0] == Word::gen(0, 5));
  std::filesystem::remove(path);
  CHECK_THROWS(read_file(path));
}

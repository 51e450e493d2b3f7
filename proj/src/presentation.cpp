#include "gforge/presentation.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace gforge {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

int32_t Alphabet::add(const std::string& name) {
  auto it = index.find(name);
  if (it != index.end()) throw ParseError("duplicate generator '" + name + "'");
  int32_t id = static_cast<int32_t>(names.size());
  names.push_back(name);
  index.emplace(name, id);
  return id;
}

int32_t Alphabet::find(const std::string& name) const {
  auto it = index.find(name);
  return it == index.end() ? -1 : it->second;
}

std::string word_to_string(const Word& w, const Alphabet& a) {
  if (w.empty()) return "1";
  std::string out;
  for (const Run& r : w.runs()) {
    if (!out.empty()) out += ' ';
    out += a.names.at(static_cast<size_t>(r.gen));
    if (r.exp != 1) out += '^' + r.exp.str();
  }
  return out;
}

Word parse_word(const std::string& text, const Alphabet& a, const std::string& where) {
  std::vector<std::string> toks = split_ws(text);
  if (toks.size() == 1 && toks[0] == "1") return Word();
  Word w;
  for (const std::string& tok : toks) {
    if (tok == "1") throw ParseError(where + ": '1' denotes the empty word and must stand alone");
    size_t i = 0;
    if (!ident_start(tok[0])) throw ParseError(where + ": bad token '" + tok + "'");
    while (i < tok.size() && ident_char(tok[i])) ++i;
    std::string name = tok.substr(0, i);
    Int exp = 1;
    if (i < tok.size()) {
      if (tok[i] != '^') throw ParseError(where + ": bad token '" + tok + "'");
      std::string es = tok.substr(i + 1);
      if (es.empty() || (!std::isdigit(static_cast<unsigned char>(es[0])) && es[0] != '-'))
        throw ParseError(where + ": bad exponent in '" + tok + "'");
      try {
        exp = Int(es);
      } catch (const std::exception&) {
        throw ParseError(where + ": bad exponent in '" + tok + "'");
      }
      if (exp == 0) throw ParseError(where + ": zero exponent in '" + tok + "'");
    }
    int32_t g = a.find(name);
    if (g < 0) throw ParseError(where + ": unknown generator '" + name + "'");
    w.push(g, exp);
  }
  return w;
}

std::string Presentation::to_text() const {
  std::string out = "gens:";
  for (const std::string& n : alpha.names) out += ' ' + n;
  out += '\n';
  for (const Word& r : relators) out += "rel: " + word_to_string(r, alpha) + '\n';
  return out;
}

Presentation Presentation::parse(const std::string& text, const std::string& what) {
  Presentation p;
  bool saw_gens = false;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    std::vector<std::string> toks = split_ws(line);
    if (toks.empty()) continue;
    std::string where = what + ":" + std::to_string(lineno);
    if (toks[0] == "gens:") {
      if (saw_gens) throw ParseError(where + ": repeated gens: line");
      saw_gens = true;
      for (size_t i = 1; i < toks.size(); ++i) {
        const std::string& n = toks[i];
        if (!ident_start(n[0])) throw ParseError(where + ": bad generator name '" + n + "'");
        for (char c : n)
          if (!ident_char(c)) throw ParseError(where + ": bad generator name '" + n + "'");
        if (n == "1") throw ParseError(where + ": '1' is reserved for the empty word");
        p.alpha.add(n);
      }
    } else if (toks[0] == "rel:") {
      if (!saw_gens) throw ParseError(where + ": rel: before gens:");
      std::string rest;
      for (size_t i = 1; i < toks.size(); ++i) rest += toks[i] + ' ';
      if (rest.empty()) throw ParseError(where + ": empty rel: line");
      p.add_relator(parse_word(rest, p.alpha, where));
    } else {
      throw ParseError(where + ": expected 'gens:' or 'rel:'");
    }
  }
  if (!saw_gens) throw ParseError(what + ": missing gens: line");
  return p;
}

std::string GenMap::to_text(const Alphabet& dom, const Alphabet& cod) const {
  std::string out;
  out += "from: " + from_ref + '\n';
  out += "to: " + to_ref + '\n';
  for (size_t i = 0; i < dom.size(); ++i)
    out += dom.names[i] + " -> " + word_to_string(images.at(i), cod) + '\n';
  return out;
}

GenMap GenMap::parse(const std::string& text, const Alphabet& dom, const Alphabet& cod,
                     const std::string& what) {
  GenMap m;
  m.images.assign(dom.size(), Word());
  std::vector<bool> seen(dom.size(), false);
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool saw_from = false, saw_to = false;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip_comment(raw);
    std::string where = what + ":" + std::to_string(lineno);
    std::vector<std::string> toks = split_ws(line);
    if (toks.empty()) continue;
    if (toks[0] == "from:") {
      saw_from = true;
      m.from_ref = line.substr(line.find("from:") + 5);
      while (!m.from_ref.empty() && std::isspace(static_cast<unsigned char>(m.from_ref.front())))
        m.from_ref.erase(m.from_ref.begin());
      continue;
    }
    if (toks[0] == "to:") {
      saw_to = true;
      m.to_ref = line.substr(line.find("to:") + 3);
      while (!m.to_ref.empty() && std::isspace(static_cast<unsigned char>(m.to_ref.front())))
        m.to_ref.erase(m.to_ref.begin());
      continue;
    }
    auto arrow = line.find("->");
    if (arrow == std::string::npos) throw ParseError(where + ": expected 'ident -> word'");
    std::vector<std::string> lhs = split_ws(line.substr(0, arrow));
    if (lhs.size() != 1) throw ParseError(where + ": expected a single domain generator");
    int32_t g = dom.find(lhs[0]);
    if (g < 0) throw ParseError(where + ": unknown domain generator '" + lhs[0] + "'");
    if (seen[static_cast<size_t>(g)]) throw ParseError(where + ": repeated image for '" + lhs[0] + "'");
    seen[static_cast<size_t>(g)] = true;
    m.images[static_cast<size_t>(g)] = parse_word(line.substr(arrow + 2), cod, where);
  }
  if (!saw_from || !saw_to) throw ParseError(what + ": missing from:/to: line");
  for (size_t i = 0; i < dom.size(); ++i)
    if (!seen[i]) throw ParseError(what + ": no image for generator '" + dom.names[i] + "'");
  return m;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out.flush()) throw std::runtime_error("write failed for " + path);
}

}  // namespace gforge

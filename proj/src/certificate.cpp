#include "gforge/certificate.hpp"

#include <sstream>

namespace gforge {

std::string Certificate::serialize() const {
  std::ostringstream out;
  out << "engine " << engine << '\n';
  out << "context " << context << '\n';
  out << "start " << start << '\n';
  out << "claim " << claim << '\n';
  for (const CertStep& s : steps) {
    out << "step " << s.kind;
    for (const Int& a : s.args) out << ' ' << a.str();
    out << '\n';
  }
  return out.str();
}

Certificate Certificate::parse(const std::string& text) {
  Certificate c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto rest_of = [](const std::string& l, size_t keylen) {
    std::string r = l.substr(keylen);
    while (!r.empty() && r.front() == ' ') r.erase(r.begin());
    return r;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("engine", 0) == 0)
      c.engine = rest_of(line, 6);
    else if (line.rfind("context", 0) == 0)
      c.context = rest_of(line, 7);
    else if (line.rfind("start", 0) == 0)
      c.start = rest_of(line, 5);
    else if (line.rfind("claim", 0) == 0)
      c.claim = rest_of(line, 5);
    else if (line.rfind("step ", 0) == 0) {
      std::istringstream ls(line.substr(5));
      CertStep s;
      if (!(ls >> s.kind)) throw CertError("certificate line " + std::to_string(lineno) + ": bad step");
      std::string tok;
      while (ls >> tok) {
        try {
          s.args.emplace_back(tok);
        } catch (const std::exception&) {
          throw CertError("certificate line " + std::to_string(lineno) + ": bad step arg '" + tok + "'");
        }
      }
      c.steps.push_back(std::move(s));
    } else {
      throw CertError("certificate line " + std::to_string(lineno) + ": unrecognized line");
    }
  }
  if (c.engine.empty()) throw CertError("certificate: missing engine line");
  return c;
}

}  // namespace gforge

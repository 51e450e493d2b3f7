#include "gforge/bs.hpp"

namespace gforge {

BsSolver::BsSolver(Int p, Int q, int32_t a_gen, int32_t t_gen)
    : p_(std::move(p)), q_(std::move(q)), a_(a_gen), t_(t_gen) {
  if (p_ <= 0 || q_ <= 0) throw std::invalid_argument("BsSolver: p, q must be positive");
  if (a_ == t_) throw std::invalid_argument("BsSolver: a and t must differ");
}

// The sweep maintains the normal form of the processed prefix as a stack of
// runs. For each stable letter the top a-exponent e splits as e = m*k + r
// (m = q for t, m = p for t^-1, r in [0,m)); the complementary power crosses
// the letter (slide), and r == 0 against an opposite stable letter pinches.
Word BsSolver::sweep(const Word& w, std::vector<CertStep>* transcript, const Certificate* check,
                     size_t* cursor) const {
  std::vector<Run> st;
  size_t t_seen = 0;

  auto emit = [&](const char* kind, int dir, const Int& k) {
    if (transcript) transcript->push_back({kind, {Int(dir), k}});
    if (check) {
      if (*cursor >= check->steps.size()) throw CertError("replay: transcript too short");
      const CertStep& s = check->steps[(*cursor)++];
      if (s.kind != kind || s.args.size() != 2 || s.args[0] != dir || s.args[1] != k)
        throw CertError("replay: transcript mismatch at step " + std::to_string(*cursor - 1));
    }
  };
  auto push_a = [&](const Int& e) {
    if (e == 0) return;
    if (!st.empty() && st.back().gen == a_) {
      st.back().exp += e;
      if (st.back().exp == 0) st.pop_back();
    } else {
      st.push_back({a_, e});
    }
  };

  for (const Run& r : w.runs()) {
    if (r.gen == a_) {
      push_a(r.exp);
      continue;
    }
    if (r.gen != t_) throw std::invalid_argument("BsSolver: word uses a foreign generator");
    int dir = sign_of(r.exp);
    for (Int i = 0; i < abs(r.exp); ++i) {
      if (++t_seen > t_cap) throw CapExceeded("BsSolver: stable-letter cap exceeded");
      const Int& m = dir > 0 ? q_ : p_;
      const Int& carry_unit = dir > 0 ? p_ : q_;
      Int e = (!st.empty() && st.back().gen == a_) ? st.back().exp : Int(0);
      Int k = floor_div(e, m);
      Int rr = e - m * k;
      // Pinch: ... t^-dir a^(m k) t^dir -> ... a^(carry_unit * k).
      bool top_is_a = !st.empty() && st.back().gen == a_;
      size_t below = st.size() - (top_is_a ? 2 : 1);
      bool pinch = rr == 0 && st.size() >= (top_is_a ? 2u : 1u) && st[below].gen == t_ &&
                   sign_of(st[below].exp) == -dir;
      if (pinch) {
        emit("pinch", dir, k);
        if (top_is_a) st.pop_back();
        st.back().exp += dir;
        if (st.back().exp == 0) st.pop_back();
        push_a(carry_unit * k);
      } else {
        if (k != 0) emit("slide", dir, k);
        if (top_is_a) {
          if (rr == 0)
            st.pop_back();
          else
            st.back().exp = rr;
        }
        if (!st.empty() && st.back().gen == t_ && sign_of(st.back().exp) == dir)
          st.back().exp += dir;
        else
          st.push_back({t_, Int(dir)});
        push_a(carry_unit * k);
      }
    }
  }
  return Word::from_runs(st);
}

Word BsSolver::normal_form(const Word& w, std::vector<CertStep>* transcript) const {
  return sweep(w, transcript, nullptr, nullptr);
}

Certificate BsSolver::certify(const Word& w, const Alphabet& alpha) const {
  Certificate c;
  c.engine = "britton";
  c.context = "p=" + p_.str() + " q=" + q_.str() + " a=" + alpha.names.at(static_cast<size_t>(a_)) +
              " t=" + alpha.names.at(static_cast<size_t>(t_));
  c.start = word_to_string(w, alpha);
  Word nf = normal_form(w, &c.steps);
  c.claim = nf.empty() ? "trivial" : "normal-form " + word_to_string(nf, alpha);
  return c;
}

Word BsSolver::replay(const Certificate& cert, const Word& start) const {
  if (cert.engine != "britton") throw CertError("replay: not a britton certificate");
  size_t cursor = 0;
  Word nf = sweep(start, nullptr, &cert, &cursor);
  if (cursor != cert.steps.size()) throw CertError("replay: transcript too long");
  if (cert.claim == "trivial" && !nf.empty()) throw CertError("replay: claimed trivial, is not");
  return nf;
}

}  // namespace gforge

#include "gforge/matrix.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>

namespace gforge {

IntMat mat_identity(size_t n) {
  IntMat m(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  const size_t r = a.size();
  const size_t k = r ? a[0].size() : 0;
  const size_t c = b.empty() ? 0 : b[0].size();
  if (k != b.size()) throw std::invalid_argument("matrix shape mismatch");
  IntMat out(r, std::vector<Int>(c, 0));
  for (size_t i = 0; i < r; ++i) {
    for (size_t j = 0; j < k; ++j) {
      if (a[i][j] == 0) continue;
      for (size_t l = 0; l < c; ++l) out[i][l] += a[i][j] * b[j][l];
    }
  }
  return out;
}

SnfResult smith_normal_form(const IntMat& m0) {
  const size_t R = m0.size();
  const size_t C = R ? m0[0].size() : 0;
  for (const auto& row : m0) {
    if (row.size() != C) throw std::invalid_argument("ragged matrix");
  }

  SnfResult res;
  res.d = m0;
  res.u = mat_identity(R);
  res.v = mat_identity(C);
  IntMat& a = res.d;
  IntMat& u = res.u;
  IntMat& v = res.v;

  auto row_swap = [&](size_t i, size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  };
  auto col_swap = [&](size_t i, size_t j) {
    for (size_t r = 0; r < R; ++r) std::swap(a[r][i], a[r][j]);
    for (size_t r = 0; r < C; ++r) std::swap(v[r][i], v[r][j]);
  };
  auto row_add = [&](size_t dst, size_t src, const Int& c) {
    for (size_t j = 0; j < C; ++j) a[dst][j] += c * a[src][j];
    for (size_t j = 0; j < R; ++j) u[dst][j] += c * u[src][j];
  };
  auto col_add = [&](size_t dst, size_t src, const Int& c) {
    for (size_t r = 0; r < R; ++r) a[r][dst] += c * a[r][src];
    for (size_t r = 0; r < C; ++r) v[r][dst] += c * v[r][src];
  };
  auto row_neg = [&](size_t i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
  };

  size_t k = 0;
  while (k < R && k < C) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    size_t pi = k, pj = k;
    bool found = false;
    for (size_t i = k; i < R; ++i) {
      for (size_t j = k; j < C; ++j) {
        if (a[i][j] == 0) continue;
        if (!found || abs(a[i][j]) < abs(a[pi][pj])) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    }
    if (!found) break;
    if (pi != k) row_swap(pi, k);
    if (pj != k) col_swap(pj, k);

    while (true) {
      bool clean = true;
      for (size_t i = k + 1; i < R; ++i) {
        if (a[i][k] == 0) continue;
        const Int q = a[i][k] / a[k][k];
        if (q != 0) row_add(i, k, -q);
        if (a[i][k] != 0) {
          row_swap(i, k);  // strictly smaller remainder becomes the pivot
          clean = false;
        }
      }
      if (!clean) continue;
      for (size_t j = k + 1; j < C; ++j) {
        if (a[k][j] == 0) continue;
        const Int q = a[k][j] / a[k][k];
        if (q != 0) col_add(j, k, -q);
        if (a[k][j] != 0) {
          col_swap(j, k);
          clean = false;
        }
      }
      if (!clean) continue;
      // Pivot must divide the trailing block for the chain condition.
      bool fixed = false;
      for (size_t i = k + 1; i < R && !fixed; ++i) {
        for (size_t j = k + 1; j < C && !fixed; ++j) {
          if (a[i][j] % a[k][k] != 0) {
            row_add(k, i, 1);
            fixed = true;
          }
        }
      }
      if (!fixed) break;
    }
    if (a[k][k] < 0) row_neg(k);
    ++k;
  }
  res.rank = k;
  for (size_t i = 0; i < k; ++i) res.diag.push_back(a[i][i]);
  return res;
}

IntMat abelianization_matrix(const Presentation& p) {
  const size_t G = p.alpha.names.size();
  IntMat m(p.relators.size(), std::vector<Int>(G, 0));
  for (size_t i = 0; i < p.relators.size(); ++i) {
    for (const Run& r : p.relators[i].runs()) {
      m[i][static_cast<size_t>(r.gen)] += r.exp;
    }
  }
  return m;
}

H1Result homology_h1(const Presentation& p) {
  const auto snf = smith_normal_form(abelianization_matrix(p));
  H1Result h;
  h.free_rank = p.alpha.names.size() - snf.rank;
  for (const Int& d : snf.diag) {
    if (d > 1) h.torsion.push_back(d);
  }
  return h;
}

std::string H1Result::pretty() const {
  if (trivial()) return "trivial";
  std::string out;
  auto append = [&](const std::string& part) {
    if (!out.empty()) out += " + ";
    out += part;
  };
  if (free_rank == 1) {
    append("Z");
  } else if (free_rank > 1) {
    append("Z^" + std::to_string(free_rank));
  }
  for (const Int& d : torsion) append("Z/" + d.str());
  return out;
}

std::optional<bool> h2_trivial_corroborated(const Presentation& p) {
  if (p.relators.size() != p.alpha.names.size()) return std::nullopt;
  if (!homology_h1(p).trivial()) return std::nullopt;
  return true;
}

Int count_hom_to_zn(const Presentation& p, const Int& n) {
  if (n <= 0) throw std::invalid_argument("modulus must be positive");
  const H1Result h = homology_h1(p);
  Int count = 1;
  for (size_t i = 0; i < h.free_rank; ++i) count *= n;
  for (const Int& d : h.torsion) count *= gcd(d, n);
  return count;
}

}  // namespace gforge

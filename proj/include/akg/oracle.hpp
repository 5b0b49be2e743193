#pragma once

// Brute-force reference computations. None of these go through the Smith
// form, the double description code or the closed-form rules they are used
// to check.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "akg/cone.hpp"
#include "akg/lattice.hpp"

namespace akg::oracle {

/// Determinant by the Leibniz permutation expansion.
inline BigInt leibniz_determinant(const std::vector<Vector>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  BigInt total = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    BigInt term = (inversions % 2) ? -1 : 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= rows[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

namespace detail {

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Invariant factors (> 1 and = 1 included, i.e. all nonzero d_k) from the
/// determinantal divisors: D_k = gcd of all k x k minors, d_k = D_k / D_{k-1}.
inline Vector invariant_factors_by_minors(const IntegerMatrix& a) {
  Vector factors;
  BigInt prev = 1;
  const std::size_t limit = std::min(a.rows(), a.cols());
  for (std::size_t k = 1; k <= limit; ++k) {
    BigInt g = 0;
    detail::for_each_subset(a.rows(), k, [&](const std::vector<std::size_t>& rs) {
      detail::for_each_subset(a.cols(), k, [&](const std::vector<std::size_t>& cs) {
        std::vector<Vector> minor;
        for (std::size_t r : rs) {
          Vector row;
          for (std::size_t c : cs) row.push_back(a(r, c));
          minor.push_back(std::move(row));
        }
        g = gcd(g, leibniz_determinant(minor));
      });
    });
    if (g == 0) break;
    factors.push_back(g / prev);
    prev = g;
  }
  return factors;
}

/// Facet normals of cone(gens) in Q^dim by trying every (dim-1)-subset of
/// generators: the generalized cross product of the subset is a facet normal
/// iff it is nonzero and all generators lie weakly on one side.
inline std::vector<Vector> facets_by_enumeration(const std::vector<Vector>& gens, std::size_t dim) {
  std::vector<Vector> normals;
  if (dim == 0) return normals;
  detail::for_each_subset(gens.size(), dim - 1, [&](const std::vector<std::size_t>& subset) {
    Vector normal(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      std::vector<Vector> rows;
      for (std::size_t s : subset) {
        Vector row;
        for (std::size_t c = 0; c < dim; ++c)
          if (c != k) row.push_back(gens[s][c]);
        rows.push_back(std::move(row));
      }
      BigInt cof = leibniz_determinant(rows);
      normal[k] = ((dim - 1 + k) % 2) ? BigInt(-cof) : cof;
    }
    if (is_zero(normal)) return;
    bool nonneg = true, nonpos = true;
    for (const auto& g : gens) {
      BigInt v = dot(normal, g);
      nonneg = nonneg && v >= 0;
      nonpos = nonpos && v <= 0;
    }
    if (!nonneg && !nonpos) return;
    if (!nonneg)
      for (auto& x : normal) x = -x;
    normals.push_back(primitive(std::move(normal)));
  });
  std::sort(normals.begin(), normals.end());
  normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
  return normals;
}

/// Scans k for 0 < n_i + k d_i < d_i (all i) or n = k d.
inline bool hyperbola_coaffine_by_scan(const std::vector<std::int64_t>& d, const std::vector<std::int64_t>& n) {
  std::int64_t bound = 1;
  for (auto x : n) bound = std::max(bound, (x < 0 ? -x : x) + 1);
  for (std::int64_t k = -bound; k <= bound; ++k) {
    bool principal = true, window = true;
    for (std::size_t i = 0; i < d.size(); ++i) {
      principal = principal && n[i] == k * d[i];
      const std::int64_t shifted = n[i] + k * d[i];
      window = window && shifted > 0 && shifted < d[i];
    }
    if (principal || window) return true;
  }
  return false;
}

/// Some positive multiple t <= bound of n is an integer multiple of d.
inline bool hyperbola_torsion_by_scan(const std::vector<std::int64_t>& d, const std::vector<std::int64_t>& n,
                                      std::int64_t bound) {
  for (std::int64_t t = 1; t <= bound; ++t)
    for (std::int64_t k = -bound * 8; k <= bound * 8; ++k) {
      bool hit = true;
      for (std::size_t i = 0; i < d.size() && hit; ++i) hit = t * n[i] == k * d[i];
      if (hit) return true;
    }
  return false;
}

/// Looks for a lattice point x with |x_k| <= bound, nu(x) >= 0 with
/// support exactly S, that is an N-combination of the generators.
inline bool realizable_by_enumeration(const MonoidSpec& m, const FacetSystem& f, const FacetSet& s, int bound) {
  MembershipOracle members(m, f);
  Vector x(m.dim, BigInt(-bound));
  for (;;) {
    bool match = true;
    for (std::size_t i = 0; i < f.count() && match; ++i) {
      BigInt v = dot(f.normals[i], x);
      const bool in_s = std::binary_search(s.begin(), s.end(), i);
      match = v >= 0 && ((v > 0) == in_s);
    }
    if (match && members.contains(x)) return true;
    std::size_t k = 0;
    while (k < m.dim && x[k] == bound) {
      x[k] = -bound;
      ++k;
    }
    if (k == m.dim) return false;
    ++x[k];
  }
}

}  // namespace akg::oracle

#pragma once

// Closed-form answers for three ring families:
//  - hyperbolas B = A[X,Y]/(XY - U_1^{d_1} ... U_r^{d_r}) over a factorial A,
//  - determinantal rings R_k = K[X_ij] / (k-minors) of an m x n matrix,
//  - the Segre rings K[T_i S_j] (both-sorts affinity rule, superheights).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "akg/errors.hpp"
#include "akg/lattice.hpp"

namespace akg {

// ---------------------------------------------------------------------------
// Hyperbolas

struct HyperbolaData {
  Vector d;                 // exponents d_i >= 1, r = d.size()
  bool base_local = false;  // A local; required for the coaffinity classification
  /// comaximal[i][j]: U_i and U_j generate the unit ideal of A. Diagonal ignored.
  std::optional<std::vector<std::vector<bool>>> comaximal;

  std::size_t r() const { return d.size(); }
};

inline void validate(const HyperbolaData& h) {
  if (h.d.empty()) {
    throw DomainError(ErrorCode::FormatViolation, "hyperbola needs at least one prime U_1");
  }
  for (const auto& x : h.d)
    if (x < 1) throw DomainError(ErrorCode::FormatViolation, "hyperbola exponents must be >= 1");
  if (h.comaximal) {
    const auto& c = *h.comaximal;
    if (c.size() != h.r()) {
      throw DomainError(ErrorCode::DimensionMismatch, "comaximal relation must be r x r");
    }
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].size() != h.r()) {
        throw DomainError(ErrorCode::DimensionMismatch, "comaximal relation must be r x r");
      }
      for (std::size_t j = 0; j < i; ++j)
        if (c[i][j] != c[j][i]) {
          throw DomainError(ErrorCode::FormatViolation, "comaximal relation must be symmetric");
        }
    }
  }
}

/// DKG B = Z^r / Z(d_1, ..., d_r), in the basis p_1, ..., p_r.
inline AbelianGroup hyperbola_dkg(const HyperbolaData& h) {
  validate(h);
  return cokernel(IntegerMatrix::from_columns({h.d}, h.r()));
}

/// AKG B = 0 iff the U_i pairwise generate the unit ideal. Over a local base
/// no pair is comaximal.
inline bool hyperbola_akg_zero(const HyperbolaData& h) {
  validate(h);
  std::vector<std::vector<bool>> rel;
  if (h.comaximal) {
    rel = *h.comaximal;
  } else if (h.base_local) {
    rel.assign(h.r(), std::vector<bool>(h.r(), false));
  } else {
    throw DomainError(ErrorCode::MissingComaximalData, "comaximality of the U_i is required");
  }
  for (std::size_t i = 0; i < h.r(); ++i)
    for (std::size_t j = 0; j < h.r(); ++j) {
      if (i == j) continue;
      if (h.base_local && rel[i][j]) {
        throw DomainError(ErrorCode::FormatViolation, "non-units of a local ring cannot be comaximal");
      }
      if (!rel[i][j]) return false;
    }
  return true;
}

namespace detail {

inline void require_local(const HyperbolaData& h, const Vector& n) {
  validate(h);
  if (!h.base_local) {
    throw DomainError(ErrorCode::RequiresLocalBase,
                      "coaffinity and affine triviality of hyperbola divisors are decided only over a local base");
  }
  if (n.size() != h.r()) {
    throw DomainError(ErrorCode::DimensionMismatch, "divisor length != number of primes");
  }
}

}  // namespace detail

/// The divisor n_1 p_1 + ... + n_r p_r is coaffine iff it is principal
/// (n = k d) or equivalent to one with 0 < n_i < d_i for every i.
inline bool hyperbola_is_coaffine(const HyperbolaData& h, const Vector& n) {
  detail::require_local(h, n);
  const std::size_t r = h.r();
  if (n[0] % h.d[0] == 0) {
    BigInt k = n[0] / h.d[0];
    bool principal = true;
    for (std::size_t i = 0; i < r; ++i) principal = principal && (n[i] == k * h.d[i]);
    if (principal) return true;
  }
  // 0 < n_i + k d_i < d_i pins k = -floor(n_i / d_i) and needs d_i not dividing n_i.
  BigInt shift = floor_div(n[0], h.d[0]);
  for (std::size_t i = 0; i < r; ++i) {
    if (n[i] % h.d[i] == 0) return false;
    if (floor_div(n[i], h.d[i]) != shift) return false;
  }
  return true;
}

/// Some multiple of the divisor is principal iff n is a rational multiple of d.
inline bool hyperbola_is_affine_trivial(const HyperbolaData& h, const Vector& n) {
  detail::require_local(h, n);
  for (std::size_t i = 0; i < h.r(); ++i)
    for (std::size_t j = i + 1; j < h.r(); ++j)
      if (n[i] * h.d[j] != n[j] * h.d[i]) return false;
  return true;
}

/// Over a local base, AKG = DKG modulo torsion = Z^{r-1}.
inline AbelianGroup hyperbola_akg(const HyperbolaData& h) {
  validate(h);
  if (!h.base_local) {
    throw DomainError(ErrorCode::RequiresLocalBase, "AKG = DKG/torsion is established only over a local base");
  }
  return hyperbola_dkg(h).free_part();
}

// ---------------------------------------------------------------------------
// Determinantal rings

struct DeterminantalData {
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::int64_t k = 0;  // minor size, 1 < k <= min(m, n)
};

inline void validate(const DeterminantalData& dd) {
  if (dd.m < 1 || dd.n < 1) {
    throw DomainError(ErrorCode::FormatViolation, "matrix format needs m, n >= 1");
  }
  if (dd.k <= 1 || dd.k > std::min(dd.m, dd.n)) {
    throw DomainError(ErrorCode::FormatViolation, "minor size k must satisfy 1 < k <= min(m, n)");
  }
}

/// dim R_k = (m + n - k + 1)(k - 1)
inline std::int64_t det_dimension(const DeterminantalData& dd) {
  validate(dd);
  return (dd.m + dd.n - dd.k + 1) * (dd.k - 1);
}

/// ht I_k = mn - (m + n - k + 1)(k - 1)
inline std::int64_t det_ideal_height(const DeterminantalData& dd) {
  validate(dd);
  return dd.m * dd.n - det_dimension(dd);
}

/// DKG R_k = Z, generated by the prime of (k-1)-minors of the first k-1 rows.
inline AbelianGroup det_dkg(const DeterminantalData& dd) {
  validate(dd);
  return AbelianGroup{1, {}};
}

/// AKG R_k = DKG R_k = Z.
inline AbelianGroup det_akg(const DeterminantalData& dd) {
  validate(dd);
  return AbelianGroup{1, {}};
}

/// Height of the generating prime's extension to the polynomial ring on the
/// first k-1 rows: the (k-1)-minor ideal of a (k-1) x n matrix,
/// (k-1)n - (n+1)(k-2) = n - k + 2. It is >= 2, so the complement is not affine.
inline std::int64_t det_extension_height(const DeterminantalData& dd) {
  validate(dd);
  const std::int64_t rows = dd.k - 1;
  return rows * dd.n - (rows + dd.n - (dd.k - 1) + 1) * (dd.k - 2);
}

// ---------------------------------------------------------------------------
// Segre rings K[T_i S_j : 1 <= i <= n, 1 <= j <= m]
//
// Row primes p_i = (T_i S_1, ..., T_i S_m), i < n; column primes
// q_j = (T_1 S_j, ..., T_n S_j), j < m. Indices are 0-based.

enum class SegrePrimeSort { Row, Column };

/// Complement of V(p_i : i in rows) ∪ V(q_j : j in cols) is affine iff the
/// preimage in K[T, S] has pure codimension one. V(p_i) pulls back to
/// V(T_i) ∪ V(S_1..S_m) and V(q_j) to V(S_j) ∪ V(T_1..T_n); for m, n >= 2
/// this means both sorts occur (or Y is empty).
inline bool segre_union_affine(std::size_t m, std::size_t n, const std::vector<std::size_t>& rows,
                               const std::vector<std::size_t>& cols) {
  if (m < 1 || n < 1) {
    throw DomainError(ErrorCode::FormatViolation, "Segre ring needs m, n >= 1");
  }
  for (std::size_t i : rows)
    if (i >= n) throw DomainError(ErrorCode::FormatViolation, "row index " + std::to_string(i) + " >= n");
  for (std::size_t j : cols)
    if (j >= m) throw DomainError(ErrorCode::FormatViolation, "column index " + std::to_string(j) + " >= m");
  const bool rows_ok = rows.empty() || m == 1 || !cols.empty();
  const bool cols_ok = cols.empty() || n == 1 || !rows.empty();
  return rows_ok && cols_ok;
}

/// A row prime pairs with the m column variables and has superheight m; a
/// column prime has superheight n.
inline std::int64_t segre_superheight(std::size_t m, std::size_t n, SegrePrimeSort which) {
  if (m < 1 || n < 1) {
    throw DomainError(ErrorCode::FormatViolation, "Segre ring needs m, n >= 1");
  }
  return static_cast<std::int64_t>(which == SegrePrimeSort::Row ? m : n);
}

}  // namespace akg

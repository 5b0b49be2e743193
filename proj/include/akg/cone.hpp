#pragma once

// Normal affine monoids as rational cones: facet valuations via the double
// description method, faces, and the representation M = Gamma ∩ N^r.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "akg/errors.hpp"
#include "akg/lattice.hpp"

namespace akg {

/// A finitely generated monoid inside a lattice of rank `dim`. Generators are
/// stored in coordinates of that working lattice; `lattice_basis` (columns)
/// maps working coordinates back to the caller's ambient coordinates.
struct MonoidSpec {
  std::size_t dim = 0;
  std::vector<Vector> generators;
  std::size_t ambient_dim = 0;
  IntegerMatrix lattice_basis;

  Vector to_ambient(const Vector& x) const { return lattice_basis.apply(x); }
};

/// Primitive facet normals nu_1..nu_r, sorted lexicographically.
struct FacetSystem {
  std::vector<Vector> normals;
  IntegerMatrix valuation_matrix;  // r x d, row i = nu_i

  std::size_t count() const { return normals.size(); }
  std::size_t dim() const { return valuation_matrix.cols(); }

  Vector valuation(const Vector& x) const { return valuation_matrix.apply(x); }
};

using FacetSet = std::vector<std::size_t>;  // sorted facet indices

struct FaceData {
  FacetSet zero_set;
  std::vector<Vector> generators;
  std::vector<std::size_t> generator_indices;
};

namespace detail {

inline FacetSet normalize_set(FacetSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline std::vector<Vector> drop_zero(const std::vector<Vector>& gens) {
  std::vector<Vector> out;
  for (const auto& g : gens)
    if (!is_zero(g)) out.push_back(g);
  return out;
}

}  // namespace detail

/// Extreme rays of the cone {y : <c, y> >= 0 for every row c}. The rows must
/// span Q^dim, which makes the cone pointed. Rays are primitive and sorted
/// lexicographically. Double description with the algebraic adjacency test.
inline std::vector<Vector> extreme_rays(const std::vector<Vector>& rows, std::size_t dim) {
  std::vector<std::size_t> basis_idx;
  std::vector<Vector> basis_rows;
  for (std::size_t i = 0; i < rows.size() && basis_rows.size() < dim; ++i) {
    if (rows[i].size() != dim) {
      throw DomainError(ErrorCode::DimensionMismatch, "extreme_rays: row length != dim");
    }
    basis_rows.push_back(rows[i]);
    if (rank_of(basis_rows, dim) < basis_rows.size()) {
      basis_rows.pop_back();
    } else {
      basis_idx.push_back(i);
    }
  }
  if (basis_rows.size() < dim) {
    throw DomainError(ErrorCode::NotFullDimensional, "extreme_rays: constraints do not span the space");
  }

  std::vector<Vector> rays;
  for (std::size_t k = 0; k < dim; ++k) {
    std::vector<Vector> others;
    for (std::size_t j = 0; j < dim; ++j)
      if (j != k) others.push_back(basis_rows[j]);
    IntegerMatrix ker = kernel_basis(IntegerMatrix::from_rows(others, dim));
    Vector y = primitive(ker.column(0));
    if (dot(basis_rows[k], y) < 0)
      for (auto& x : y) x = -x;
    rays.push_back(std::move(y));
  }

  std::vector<Vector> processed = basis_rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (std::find(basis_idx.begin(), basis_idx.end(), i) != basis_idx.end()) continue;
    const Vector& c = rows[i];
    if (c.size() != dim) {
      throw DomainError(ErrorCode::DimensionMismatch, "extreme_rays: row length != dim");
    }
    std::vector<BigInt> s(rays.size());
    for (std::size_t j = 0; j < rays.size(); ++j) s[j] = dot(c, rays[j]);

    std::vector<Vector> next;
    for (std::size_t j = 0; j < rays.size(); ++j)
      if (s[j] >= 0) next.push_back(rays[j]);

    if (dim >= 2) {
      for (std::size_t p = 0; p < rays.size(); ++p) {
        if (s[p] <= 0) continue;
        for (std::size_t q = 0; q < rays.size(); ++q) {
          if (s[q] >= 0) continue;
          std::vector<Vector> tight;
          for (const auto& r : processed)
            if (dot(r, rays[p]) == 0 && dot(r, rays[q]) == 0) tight.push_back(r);
          if (tight.size() + 2 < dim || rank_of(tight, dim) != dim - 2) continue;
          Vector combo(dim);
          for (std::size_t t = 0; t < dim; ++t) combo[t] = s[p] * rays[q][t] - s[q] * rays[p][t];
          next.push_back(primitive(std::move(combo)));
        }
      }
    }
    processed.push_back(c);
    rays = std::move(next);
  }
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  return rays;
}

namespace detail {

inline void require_pointed(const std::vector<Vector>& gens, std::size_t dim) {
  std::vector<Vector> rays = extreme_rays(gens, dim);
  if (rank_of(rays, dim) < dim) {
    throw DomainError(ErrorCode::NotPointed, "the cone spanned by the generators contains a line");
  }
}

inline MonoidSpec monoid_in_basis(std::size_t ambient_dim, const std::vector<Vector>& gens,
                                  const IntegerMatrix& basis) {
  MonoidSpec m;
  m.ambient_dim = ambient_dim;
  m.dim = basis.cols();
  m.lattice_basis = basis;
  SmithForm snf = smith_normal_form(basis);
  for (const auto& g : gens) m.generators.push_back(lattice_coordinates(snf, g));
  if (rank_of(m.generators, m.dim) < m.dim) {
    throw DomainError(ErrorCode::NotFullDimensional,
                      "generators do not span a full-rank sublattice of the working lattice");
  }
  require_pointed(m.generators, m.dim);
  return m;
}

inline void check_lengths(std::size_t dim, const std::vector<Vector>& gens) {
  for (const auto& g : gens)
    if (g.size() != dim) {
      throw DomainError(ErrorCode::DimensionMismatch,
                        "generator " + to_string(g) + " does not have length " + std::to_string(dim));
    }
}

}  // namespace detail

/// Validates the generators and re-expresses them in a basis of the lattice
/// they generate, so the working lattice is exactly ZM. Zero generators are
/// dropped.
inline MonoidSpec build_monoid(std::size_t dim, const std::vector<Vector>& generators) {
  detail::check_lengths(dim, generators);
  std::vector<Vector> gens = detail::drop_zero(generators);
  if (gens.empty()) {
    throw DomainError(ErrorCode::EmptyGenerators, "no nonzero generators given");
  }
  return detail::monoid_in_basis(dim, gens, sublattice_basis(gens, dim));
}

/// Like build_monoid, but the working lattice is the group generated by
/// `lattice_generators` together with the monoid generators. Used to pose
/// monoids that are not saturated in a prescribed lattice.
inline MonoidSpec build_monoid_in_lattice(std::size_t dim, const std::vector<Vector>& generators,
                                          const std::vector<Vector>& lattice_generators) {
  detail::check_lengths(dim, generators);
  detail::check_lengths(dim, lattice_generators);
  std::vector<Vector> gens = detail::drop_zero(generators);
  if (gens.empty()) {
    throw DomainError(ErrorCode::EmptyGenerators, "no nonzero generators given");
  }
  std::vector<Vector> all = lattice_generators;
  all.insert(all.end(), gens.begin(), gens.end());
  return detail::monoid_in_basis(dim, gens, sublattice_basis(all, dim));
}

/// Facet valuations of a pointed full-dimensional monoid: the primitive inner
/// normals of cone(generators), deduplicated, lexicographically ordered.
inline FacetSystem facet_valuations(const MonoidSpec& m) {
  if (m.generators.empty() || rank_of(m.generators, m.dim) < m.dim) {
    throw DomainError(ErrorCode::NotFullDimensional, "generators do not span the working lattice");
  }
  std::vector<Vector> normals = extreme_rays(m.generators, m.dim);
  if (rank_of(normals, m.dim) < m.dim) {
    throw DomainError(ErrorCode::NotPointed, "the cone spanned by the generators contains a line");
  }

  for (const auto& nu : normals) {
    if (content(nu) != 1) {
      throw DomainError(ErrorCode::InternalInconsistency, "facet normal " + to_string(nu) + " not primitive");
    }
    std::vector<Vector> on_facet;
    for (const auto& g : m.generators) {
      BigInt v = dot(nu, g);
      if (v < 0) {
        throw DomainError(ErrorCode::InternalInconsistency,
                          "facet normal " + to_string(nu) + " negative on generator " + to_string(g));
      }
      if (v == 0) on_facet.push_back(g);
    }
    if (rank_of(on_facet, m.dim) + 1 != m.dim) {
      throw DomainError(ErrorCode::InternalInconsistency,
                        "normal " + to_string(nu) + " does not cut out a facet");
    }
  }

  FacetSystem f;
  f.valuation_matrix = IntegerMatrix::from_rows(normals, m.dim);
  f.normals = std::move(normals);
  return f;
}

inline bool is_simplicial(const FacetSystem& f, const MonoidSpec& m) { return f.count() == m.dim; }

/// The divisor class representation Gamma -> Z^r, m -> (nu_1(m), ..., nu_r(m)).
inline const IntegerMatrix& embedding_matrix(const FacetSystem& f) { return f.valuation_matrix; }

/// Generators lying on every facet outside S, i.e. on the face cut out by
/// the complement of S.
inline FaceData face_of_complement(const MonoidSpec& m, const FacetSystem& f, const FacetSet& s) {
  FacetSet support = detail::normalize_set(s);
  for (std::size_t i : support)
    if (i >= f.count()) {
      throw DomainError(ErrorCode::DimensionMismatch, "facet index " + std::to_string(i) + " out of range");
    }
  FaceData face;
  for (std::size_t j = 0; j < f.count(); ++j)
    if (!std::binary_search(support.begin(), support.end(), j)) face.zero_set.push_back(j);
  for (std::size_t gi = 0; gi < m.generators.size(); ++gi) {
    const Vector& g = m.generators[gi];
    bool on_face = std::all_of(face.zero_set.begin(), face.zero_set.end(),
                               [&](std::size_t j) { return dot(f.normals[j], g) == 0; });
    if (on_face) {
      face.generators.push_back(g);
      face.generator_indices.push_back(gi);
    }
  }
  return face;
}

inline Vector sum_of(const std::vector<Vector>& vs, std::size_t dim) {
  Vector s(dim, BigInt(0));
  for (const auto& v : vs)
    for (std::size_t i = 0; i < dim; ++i) s[i] += v[i];
  return s;
}

/// Sum of all generators; positive on every facet.
inline Vector interior_element(const MonoidSpec& m, const FacetSystem& f) {
  Vector s = sum_of(m.generators, m.dim);
  for (const auto& nu : f.normals)
    if (dot(nu, s) <= 0) {
      throw DomainError(ErrorCode::InternalInconsistency, "generator sum lies on a facet");
    }
  return s;
}

/// Decides x in M (x given in working coordinates) by recursion on a positive
/// grading: x is in M iff x = 0 or x - g is in M for some generator g.
class MembershipOracle {
 public:
  MembershipOracle(const MonoidSpec& m, const FacetSystem& f) : m_(m), f_(f) {}

  bool contains(const Vector& x) {
    if (is_zero(x)) return true;
    for (const auto& nu : f_.normals)
      if (dot(nu, x) < 0) return false;
    if (auto it = memo_.find(x); it != memo_.end()) return it->second;
    bool found = false;
    for (const auto& g : m_.generators) {
      Vector rest(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) rest[i] = x[i] - g[i];
      if (contains(rest)) {
        found = true;
        break;
      }
    }
    memo_.emplace(x, found);
    return found;
  }

 private:
  const MonoidSpec& m_;
  const FacetSystem& f_;
  std::map<Vector, bool> memo_;
};

struct SaturationReport {
  bool saturated = true;
  std::optional<Vector> witness;          // working coordinates
  std::optional<Vector> witness_ambient;  // caller's coordinates
  std::size_t points_checked = 0;
};

/// Enumerates working-lattice points x with |x_k| <= box_bound and nu(x) >= 0
/// and checks each is an N-combination of the generators. The reported
/// witness is the counterexample of least total valuation, ties broken
/// lexicographically.
inline SaturationReport saturation_check(const MonoidSpec& m, const FacetSystem& f, int box_bound) {
  if (box_bound < 0) {
    throw DomainError(ErrorCode::FormatViolation, "box bound must be nonnegative");
  }
  SaturationReport report;
  MembershipOracle oracle(m, f);
  BigInt best_weight = 0;
  Vector x(m.dim, BigInt(-box_bound));
  for (;;) {
    bool in_cone = std::all_of(f.normals.begin(), f.normals.end(),
                               [&](const Vector& nu) { return dot(nu, x) >= 0; });
    if (in_cone) {
      ++report.points_checked;
      if (!oracle.contains(x)) {
        BigInt weight = 0;
        for (const auto& nu : f.normals) weight += dot(nu, x);
        if (report.saturated || weight < best_weight || (weight == best_weight && x < *report.witness)) {
          report.saturated = false;
          report.witness = x;
          best_weight = weight;
        }
      }
    }
    std::size_t k = 0;
    while (k < m.dim && x[k] == box_bound) {
      x[k] = -box_bound;
      ++k;
    }
    if (k == m.dim) break;
    ++x[k];
  }
  if (report.witness) report.witness_ambient = m.to_ambient(*report.witness);
  return report;
}

/// The Segre monoid generated by T_i S_j (1 <= i <= n, 1 <= j <= m), i.e. the
/// degree-zero part of K[T_1..T_n, S_1..S_m] graded by T -> 1, S -> -1.
/// Ambient coordinates are (T_1..T_n, S_1..S_m); generators are ordered with
/// i major. "Row" primes p_i = (T_i S_1, ..., T_i S_m) belong to the n
/// T-variables, "column" primes q_j to the m S-variables.
inline MonoidSpec segre_monoid(std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) {
    throw DomainError(ErrorCode::FormatViolation, "segre_monoid needs m, n >= 1");
  }
  std::vector<Vector> gens;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Vector g(n + m, BigInt(0));
      g[i] = 1;
      g[n + j] = 1;
      gens.push_back(std::move(g));
    }
  return build_monoid(n + m, gens);
}

enum class SegreSort { Row, Column };

struct SegreFacetLabel {
  SegreSort sort;
  std::size_t index;  // 0-based T-index for rows, S-index for columns
};

/// Identifies each facet of segre_monoid(m, n) with its prime: the row prime
/// p_i is positive exactly on the generators T_i S_*, the column prime q_j on
/// T_* S_j. In the degenerate case m = n = 1 the single facet is reported as
/// row 0.
inline std::vector<SegreFacetLabel> segre_facet_labels(std::size_t m, std::size_t n, const MonoidSpec& mon,
                                                       const FacetSystem& f) {
  std::vector<SegreFacetLabel> labels;
  for (const auto& nu : f.normals) {
    std::vector<bool> positive;
    for (const auto& g : mon.generators) positive.push_back(dot(nu, g) > 0);
    std::optional<SegreFacetLabel> label;
    for (std::size_t i = 0; i < n && !label; ++i) {
      bool match = true;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < m; ++b) match = match && (positive[a * m + b] == (a == i));
      if (match) label = SegreFacetLabel{SegreSort::Row, i};
    }
    for (std::size_t j = 0; j < m && !label; ++j) {
      bool match = true;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < m; ++b) match = match && (positive[a * m + b] == (b == j));
      if (match) label = SegreFacetLabel{SegreSort::Column, j};
    }
    if (!label) {
      throw DomainError(ErrorCode::InternalInconsistency, "unrecognized Segre facet " + to_string(nu));
    }
    labels.push_back(*label);
  }
  return labels;
}

}  // namespace akg

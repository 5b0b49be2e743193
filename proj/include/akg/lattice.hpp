#pragma once

// Exact integer linear algebra over arbitrary-precision integers: Smith and
// Hermite normal forms, cokernels of integer matrices, sublattice bases.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "akg/errors.hpp"

namespace akg {

using BigInt = boost::multiprecision::cpp_int;
using Vector = std::vector<BigInt>;

inline BigInt abs_value(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

inline BigInt gcd(BigInt a, BigInt b) {
  a = abs_value(a);
  b = abs_value(b);
  while (b != 0) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Quotient rounded toward negative infinity. Requires b != 0.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Least nonnegative residue of a modulo m > 0.
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

inline BigInt content(const Vector& v) {
  BigInt g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

/// Divides out the content; the zero vector is returned unchanged.
inline Vector primitive(Vector v) {
  BigInt g = content(v);
  if (g > 1) {
    for (auto& x : v) x /= g;
  }
  return v;
}

inline BigInt dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DomainError(ErrorCode::DimensionMismatch, "dot: vector lengths differ");
  }
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

template <typename Int>
Vector to_vector(const std::vector<Int>& v) {
  return Vector(v.begin(), v.end());
}

inline std::string to_string(const Vector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

/// Dense row-major integer matrix.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, BigInt(0)) {}

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Rows must all have length `cols`; `cols` is explicit so that an empty
  /// row list still has a well-defined shape.
  static IntegerMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    IntegerMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) {
        throw DomainError(ErrorCode::DimensionMismatch, "from_rows: ragged input");
      }
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntegerMatrix from_columns(const std::vector<Vector>& columns, std::size_t rows) {
    IntegerMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) {
        throw DomainError(ErrorCode::DimensionMismatch, "from_columns: ragged input");
      }
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const {
    return Vector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  Vector column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  std::vector<Vector> row_list() const {
    std::vector<Vector> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  std::vector<Vector> column_list() const {
    std::vector<Vector> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  IntegerMatrix transpose() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Vector apply(const Vector& v) const {
    if (v.size() != cols_) {
      throw DomainError(ErrorCode::DimensionMismatch, "apply: vector length != cols");
    }
    Vector out(rows_, BigInt(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw DomainError(ErrorCode::DimensionMismatch, "matrix product: inner sizes differ");
    }
    IntegerMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const BigInt& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
    if (factor == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
  }
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const BigInt& factor) {
    if (factor == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) os << (i ? "; " : "") << akg::to_string(row(i));
    os << ']';
    return os.str();
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// Determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(IntegerMatrix a) {
  if (a.rows() != a.cols()) {
    throw DomainError(ErrorCode::DimensionMismatch, "determinant: matrix not square");
  }
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Rank over the rationals (fraction-free elimination).
inline std::size_t rank(IntegerMatrix a) {
  std::size_t r = 0;
  BigInt prev = 1;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j)
        a(i, j) = (a(i, j) * a(r, c) - a(i, c) * a(r, j)) / prev;
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

inline std::size_t rank_of(const std::vector<Vector>& rows, std::size_t dim) {
  if (rows.empty()) return 0;
  return rank(IntegerMatrix::from_rows(rows, dim));
}

/// U * A * V = D with U, V unimodular and D in Smith normal form.
struct SmithForm {
  IntegerMatrix U;
  IntegerMatrix D;
  IntegerMatrix V;
  std::size_t rank = 0;

  /// d_1 | d_2 | ... | d_rank, all positive.
  Vector diagonal() const {
    Vector d;
    for (std::size_t i = 0; i < rank; ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

// Position of the smallest nonzero |a(i,j)| over i >= t, j >= t, ties broken
// by lowest (row, col) in row-major order.
inline std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(const IntegerMatrix& a,
                                                                         std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  BigInt best_abs;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      BigInt v = abs_value(a(i, j));
      if (!best || v < best_abs) {
        best = {i, j};
        best_abs = std::move(v);
      }
    }
  return best;
}

// Smallest nonzero entry restricted to row t and column t (indices >= t).
inline std::pair<std::size_t, std::size_t> smallest_in_cross(const IntegerMatrix& a, std::size_t t) {
  std::pair<std::size_t, std::size_t> best{t, t};
  BigInt best_abs = abs_value(a(t, t));
  auto consider = [&](std::size_t i, std::size_t j) {
    if (a(i, j) == 0) return;
    BigInt v = abs_value(a(i, j));
    if (best_abs == 0 || v < best_abs) {
      best = {i, j};
      best_abs = std::move(v);
    }
  };
  for (std::size_t i = t + 1; i < a.rows(); ++i) consider(i, t);
  for (std::size_t j = t + 1; j < a.cols(); ++j) consider(t, j);
  return best;
}

}  // namespace detail

/// Smith normal form with smallest-absolute-value pivoting. Pivot ties go to
/// the lowest index, so the transforms are reproducible.
inline SmithForm smith_normal_form(const IntegerMatrix& a) {
  SmithForm s{IntegerMatrix::identity(a.rows()), a, IntegerMatrix::identity(a.cols()), 0};
  IntegerMatrix& d = s.D;
  const std::size_t limit = std::min(a.rows(), a.cols());
  std::size_t t = 0;
  for (; t < limit; ++t) {
    auto pivot = detail::smallest_entry(d, t);
    if (!pivot) break;
    d.swap_rows(t, pivot->first);
    s.U.swap_rows(t, pivot->first);
    d.swap_cols(t, pivot->second);
    s.V.swap_cols(t, pivot->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        BigInt q = d(i, t) / d(t, t);
        d.add_row_multiple(i, t, -q);
        s.U.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        BigInt q = d(t, j) / d(t, t);
        d.add_col_multiple(j, t, -q);
        s.V.add_col_multiple(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        auto [pi, pj] = detail::smallest_in_cross(d, t);
        d.swap_rows(t, pi);
        s.U.swap_rows(t, pi);
        d.swap_cols(t, pj);
        s.V.swap_cols(t, pj);
        continue;
      }
      // Row and column t are clear; enforce divisibility on the remainder.
      bool divides = true;
      for (std::size_t i = t + 1; i < d.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < d.cols(); ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.add_row_multiple(t, i, 1);
            s.U.add_row_multiple(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.U.negate_row(t);
    }
  }
  s.rank = t;
  return s;
}

/// Finitely generated abelian group Z^free_rank + sum Z/invariant_factors[i].
struct AbelianGroup {
  std::size_t free_rank = 0;
  Vector invariant_factors;  // each > 1, each divides the next

  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  bool is_torsion() const { return free_rank == 0; }
  bool is_free() const { return invariant_factors.empty(); }

  /// The group modulo its torsion subgroup.
  AbelianGroup free_part() const { return AbelianGroup{free_rank, {}}; }

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.free_rank == b.free_rank && a.invariant_factors == b.invariant_factors;
  }

  std::string to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (free_rank == 1) {
      os << "Z";
      first = false;
    } else if (free_rank > 1) {
      os << "Z^" << free_rank;
      first = false;
    }
    for (const auto& f : invariant_factors) {
      os << (first ? "" : " + ") << "Z/" << f;
      first = false;
    }
    return os.str();
  }
};

inline AbelianGroup group_from_smith(const SmithForm& s) {
  AbelianGroup g;
  g.free_rank = s.D.rows() - s.rank;
  for (std::size_t i = 0; i < s.rank; ++i)
    if (s.D(i, i) > 1) g.invariant_factors.push_back(s.D(i, i));
  return g;
}

/// Z^rows(A) / (column image of A).
inline AbelianGroup cokernel(const IntegerMatrix& a) { return group_from_smith(smith_normal_form(a)); }

/// Coordinates of a class in the cokernel presentation induced by the Smith
/// form: torsion residues (one per invariant factor) and free coordinates.
struct ClassCoordinates {
  Vector free_part;
  Vector torsion_part;
  Vector moduli;  // modulus of each torsion coordinate

  bool is_zero() const { return is_zero_vector(free_part) && is_zero_vector(torsion_part); }
  bool is_torsion() const { return is_zero_vector(free_part); }

  friend bool operator==(const ClassCoordinates&, const ClassCoordinates&) = default;

 private:
  static bool is_zero_vector(const Vector& v) { return akg::is_zero(v); }
};

inline ClassCoordinates class_of(const SmithForm& s, const Vector& v) {
  if (v.size() != s.U.cols()) {
    throw DomainError(ErrorCode::DimensionMismatch, "class_of: vector length != rows of matrix");
  }
  Vector w = s.U.apply(v);
  ClassCoordinates c;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < s.rank) {
      const BigInt& m = s.D(i, i);
      if (m > 1) {
        c.torsion_part.push_back(mod_floor(w[i], m));
        c.moduli.push_back(m);
      }
    } else {
      c.free_part.push_back(w[i]);
    }
  }
  return c;
}

/// Class of v in Z^rows(A) / image(A).
inline ClassCoordinates class_of(const IntegerMatrix& a, const Vector& v) {
  if (v.size() != a.rows()) {
    throw DomainError(ErrorCode::DimensionMismatch, "class_of: vector length != rows of matrix");
  }
  return class_of(smith_normal_form(a), v);
}

/// Column-style Hermite normal form H = A * W (W unimodular): pivot rows
/// strictly increase, pivots positive, entries left of a pivot reduced into
/// [0, pivot). Returns H with its `rank` leading nonzero columns.
struct HermiteForm {
  IntegerMatrix H;
  IntegerMatrix W;
  std::size_t rank = 0;
};

inline HermiteForm hermite_column_form(const IntegerMatrix& a) {
  HermiteForm f{a, IntegerMatrix::identity(a.cols()), 0};
  IntegerMatrix& h = f.H;
  std::size_t c = 0;
  for (std::size_t i = 0; i < h.rows() && c < h.cols(); ++i) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t j = c; j < h.cols(); ++j)
        if (h(i, j) != 0 && (!best || abs_value(h(i, j)) < abs_value(h(i, *best)))) best = j;
      if (!best) break;
      h.swap_cols(c, *best);
      f.W.swap_cols(c, *best);
      bool clean = true;
      for (std::size_t j = c + 1; j < h.cols(); ++j) {
        if (h(i, j) == 0) continue;
        BigInt q = h(i, j) / h(i, c);
        h.add_col_multiple(j, c, -q);
        f.W.add_col_multiple(j, c, -q);
        if (h(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(i, c) == 0) continue;
    if (h(i, c) < 0) {
      h.negate_col(c);
      f.W.negate_col(c);
    }
    for (std::size_t j = 0; j < c; ++j) {
      BigInt q = floor_div(h(i, j), h(i, c));
      h.add_col_multiple(j, c, -q);
      f.W.add_col_multiple(j, c, -q);
    }
    ++c;
  }
  f.rank = c;
  return f;
}

/// Basis (as columns) of the lattice generated by `vectors`, all of length
/// `dim`. Empty input gives a dim x 0 matrix.
inline IntegerMatrix sublattice_basis(const std::vector<Vector>& vectors, std::size_t dim) {
  IntegerMatrix gens = IntegerMatrix::from_columns(vectors, dim);
  HermiteForm hf = hermite_column_form(gens);
  IntegerMatrix basis(dim, hf.rank);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < hf.rank; ++j) basis(i, j) = hf.H(i, j);
  return basis;
}

inline IntegerMatrix sublattice_basis(const std::vector<Vector>& vectors) {
  if (vectors.empty()) return IntegerMatrix(0, 0);
  return sublattice_basis(vectors, vectors.front().size());
}

/// Integer coordinates x with basis * x = v; basis must have full column rank.
inline Vector lattice_coordinates(const SmithForm& basis_snf, const Vector& v) {
  const IntegerMatrix& d = basis_snf.D;
  if (v.size() != d.rows()) {
    throw DomainError(ErrorCode::DimensionMismatch, "lattice_coordinates: length mismatch");
  }
  if (basis_snf.rank != d.cols()) {
    throw DomainError(ErrorCode::DimensionMismatch, "lattice_coordinates: basis not independent");
  }
  Vector w = basis_snf.U.apply(v);
  Vector y(d.cols());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < d.cols()) {
      if (w[i] % d(i, i) != 0) {
        throw DomainError(ErrorCode::NotInLattice, "vector " + to_string(v) + " is not in the lattice");
      }
      y[i] = w[i] / d(i, i);
    } else if (w[i] != 0) {
      throw DomainError(ErrorCode::NotInLattice, "vector " + to_string(v) + " is not in the lattice span");
    }
  }
  return basis_snf.V.apply(y);
}

inline Vector lattice_coordinates(const IntegerMatrix& basis, const Vector& v) {
  return lattice_coordinates(smith_normal_form(basis), v);
}

/// Basis (as columns) of the integer kernel {x : A x = 0}.
inline IntegerMatrix kernel_basis(const IntegerMatrix& a) {
  SmithForm s = smith_normal_form(a);
  IntegerMatrix k(a.cols(), a.cols() - s.rank);
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = s.rank; j < a.cols(); ++j) k(i, j - s.rank) = s.V(i, j);
  return k;
}

}  // namespace akg

#pragma once

// Torus-invariant Weil divisors on Spec K[M]: class group, affine class
// group, complement affinity of effective monomial divisors, affine
// triviality.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "akg/cone.hpp"
#include "akg/errors.hpp"
#include "akg/lattice.hpp"

namespace akg {

/// D = n_1 p_1 + ... + n_r p_r, indexed by facets.
struct MonomialDivisor {
  Vector coeffs;

  static MonomialDivisor from_support(const FacetSet& s, std::size_t r) {
    MonomialDivisor d{Vector(r, BigInt(0))};
    for (std::size_t i : s) {
      if (i >= r) {
        throw DomainError(ErrorCode::DimensionMismatch, "facet index " + std::to_string(i) + " out of range");
      }
      d.coeffs[i] = 1;
    }
    return d;
  }
};

struct ClassGroupData {
  AbelianGroup dkg;
  AbelianGroup akg;
  IntegerMatrix projection;
};

/// DKG = Z^r / nu(Gamma); AKG = DKG modulo torsion.
inline ClassGroupData divisor_class_group(const FacetSystem& f) {
  ClassGroupData data;
  data.projection = embedding_matrix(f);
  data.dkg = cokernel(data.projection);
  data.akg = data.dkg.free_part();
  return data;
}

inline AbelianGroup affine_class_group(const FacetSystem& f) { return cokernel(embedding_matrix(f)).free_part(); }

inline FacetSet support(const MonomialDivisor& d) {
  FacetSet s;
  for (std::size_t i = 0; i < d.coeffs.size(); ++i) {
    if (d.coeffs[i] < 0) {
      throw DomainError(ErrorCode::NotEffective, "divisor has negative coefficient at facet " + std::to_string(i));
    }
    if (d.coeffs[i] > 0) s.push_back(i);
  }
  return s;
}

struct RealizabilityReport {
  bool realizable = false;
  FacetSet support;
  Vector witness;            // working coordinates; meaningful when realizable
  Vector witness_valuation;  // nu(witness)
};

/// Is S the support {i : nu_i(f) > 0} of some f in M? The sum of the
/// generators on the complementary face has the largest support among
/// elements of that face, and every candidate lies on it.
inline RealizabilityReport support_realizable(const MonoidSpec& m, const FacetSystem& f, const FacetSet& s) {
  RealizabilityReport report;
  report.support = detail::normalize_set(s);
  FaceData face = face_of_complement(m, f, report.support);
  Vector candidate = sum_of(face.generators, m.dim);
  Vector val = f.valuation(candidate);
  FacetSet got;
  for (std::size_t i = 0; i < val.size(); ++i)
    if (val[i] > 0) got.push_back(i);
  report.realizable = (got == report.support);
  if (report.realizable) {
    report.witness = std::move(candidate);
    report.witness_valuation = std::move(val);
  }
  return report;
}

/// D(f) for an effective monomial divisor D is affine iff supp(D) is the
/// support of a single monomial.
inline bool complement_is_affine(const MonoidSpec& m, const FacetSystem& f, const MonomialDivisor& d) {
  if (d.coeffs.size() != f.count()) {
    throw DomainError(ErrorCode::DimensionMismatch, "divisor length != number of facets");
  }
  return support_realizable(m, f, support(d)).realizable;
}

/// Some positive multiple of D is principal, i.e. the class of D is torsion.
inline bool is_affine_trivial(const FacetSystem& f, const MonomialDivisor& d) {
  if (d.coeffs.size() != f.count()) {
    throw DomainError(ErrorCode::DimensionMismatch, "divisor length != number of facets");
  }
  return class_of(embedding_matrix(f), d.coeffs).is_torsion();
}

struct SimplicialityReport {
  bool simplicial = false;
  bool dkg_is_torsion = false;
  bool akg_zero = false;
};

/// The three conditions are equivalent for normal monoid rings; disagreement
/// is a bug and raises InternalInconsistency.
inline SimplicialityReport simpliciality_report(const MonoidSpec& m, const FacetSystem& f) {
  SimplicialityReport r;
  r.simplicial = is_simplicial(f, m);
  ClassGroupData cg = divisor_class_group(f);
  r.dkg_is_torsion = cg.dkg.is_torsion();
  r.akg_zero = cg.akg.is_trivial();
  if (r.simplicial != r.dkg_is_torsion || r.dkg_is_torsion != r.akg_zero) {
    throw DomainError(ErrorCode::InternalInconsistency, "simpliciality, torsion class group and AKG = 0 disagree");
  }
  return r;
}

}  // namespace akg

#pragma once

#include <string>
#include <vector>

#include "quatmetric/algebra.hpp"
#include "quatmetric/numeric.hpp"

namespace quatmetric {

//! Bilinear form G(a, b) = tau_i (a b)^i obtained by contracting a covector
//! with the structure constants; admissible when symmetric.
struct InnerProduct {
  Matrix matrix;             // G_jk = tau_i comp(i,j,k), as computed
  Vector tau;                // the contracting covector
  double asymmetry = 0.0;    // max |G - G^T|
  Signature sig;             // signature of the symmetrized part

  bool symmetric_within(double tol) const { return asymmetry <= tol; }
};

//! Space of covectors whose contraction is symmetric.
struct CovectorSpan {
  int dim = 0;
  std::vector<Vector> generators;  // orthonormal, sign-normalized
};

enum class MetricClass { Riemannian, Lorentzian, Degenerate, Other };
std::string to_string(MetricClass c);

//! Antisymmetry constraint matrix: rows indexed by basis pairs (j, k) with
//! j < k in lexicographic order, columns by the contracting index i, entries
//! comp(i,j,k) - comp(i,k,j).  Covectors in its nullspace contract to
//! symmetric forms.
Matrix constraint_matrix(const Algebra& alg);

//! Nullspace of the antisymmetry constraint: all covectors giving symmetric
//! contractions.  Generators are orthonormal with the largest-magnitude
//! entry made positive.
CovectorSpan principal_space(const Algebra& alg, const Tolerance& tol = {});

//! Contraction G_jk = tau_i comp(i,j,k) with its asymmetry defect and the
//! signature of its symmetrized part.
InnerProduct contract(const Algebra& alg, const Vector& tau, const Tolerance& tol = {});

//! Riemannian for definite signatures, Lorentzian for (1, n-1) or (n-1, 1),
//! Degenerate when any eigenvalue vanishes, Other otherwise.
MetricClass classify(const InnerProduct& ip);

}  // namespace quatmetric

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quatmetric/numeric.hpp"

namespace quatmetric {

//! Coordinates of an algebra element in the working basis.
using Element = Vector;

//! Dense rank-(1,2) array of multiplication constants: the product of basis
//! elements e_j e_k = sum_i comp(i,j,k) e_i, so (a b)^i = comp(i,j,k) a^j b^k.
struct StructureTensor {
  int dim = 0;
  std::vector<double> comp;  // layout: (i * dim + j) * dim + k

  StructureTensor() = default;
  explicit StructureTensor(int n) : dim(n), comp(std::size_t(n) * n * n, 0.0) {}

  double operator()(int i, int j, int k) const {
    return comp[(std::size_t(i) * dim + j) * dim + k];
  }
  double& at(int i, int j, int k) {
    return comp[(std::size_t(i) * dim + j) * dim + k];
  }
};

//! Rewrite constants in a new basis whose vectors are the columns of
//! new_in_old (expressed in the old basis).  The identity matrix returns the
//! constants unchanged, bit for bit.
StructureTensor change_of_basis(const StructureTensor& t, const Matrix& new_in_old);

//! Solve the linear conditions "x e_j = e_j x = e_j for every basis j" for a
//! two-sided identity; absent when the stacked system has no solution within
//! rank_tol.
std::optional<Element> find_identity(const StructureTensor& t, const Tolerance& tol = {});

//! Finite-dimensional real algebra described by its structure constants.
class Algebra {
 public:
  Algebra(StructureTensor tensor, std::vector<std::string> basis_labels,
          const Tolerance& tol = {}, bool quaternion_canonical = false);

  int dim() const { return tensor_.dim; }
  const StructureTensor& tensor() const { return tensor_; }
  const std::vector<std::string>& basis_labels() const { return labels_; }
  const Tolerance& tolerance() const { return tol_; }

  //! Two-sided identity in the working basis, cached at construction.
  const std::optional<Element>& identity() const { return identity_; }

  //! True when the constants are the canonical quaternion table (possibly
  //! carried through a rotation of the imaginary basis directions).
  bool quaternion_canonical() const { return quaternion_canonical_; }

  //! c^i = comp(i,j,k) a^j b^k, accumulated with j then k ascending.
  Element multiply(const Element& a, const Element& b) const;

  //! Exact check of the constant-level associativity identity.
  bool is_associative() const;

  //! Algebra whose product is the commutator a b - b a of this one.
  Algebra commutator_algebra() const;

  //! Multiplicative inverse, or absent when a is not invertible (or the
  //! algebra has no identity).
  std::optional<Element> inverse(const Element& a) const;

  //! Matrix of b -> a b in the working basis.
  Matrix left_multiplication_matrix(const Element& a) const;
  //! Matrix of b -> b a in the working basis.
  Matrix right_multiplication_matrix(const Element& a) const;

  //! For dim-4 algebras: rotate the last three basis directions by B in
  //! SO(3), keeping the first direction fixed.  Throws NotSO3 when B fails
  //! orthogonality or orientation within sym_tol.
  Algebra rotate_canonical_basis(const Matrix& B) const;

 private:
  StructureTensor tensor_;
  std::vector<std::string> labels_;
  Tolerance tol_;
  std::optional<Element> identity_;
  bool quaternion_canonical_ = false;
};

//! Quaternion conjugate (a0, -a1, -a2, -a3) of a dim-4 coordinate vector.
Element conjugate(const Element& a);

// --- builtin catalog ------------------------------------------------------

Algebra quaternion_algebra();
Algebra complex_algebra();
Algebra split_complex_algebra();
Algebra dual_number_algebra();
//! 2x2 real matrices in the elementary-matrix basis E11, E12, E21, E22.
Algebra mat2_algebra();

std::optional<Algebra> builtin_algebra(const std::string& name);
std::vector<std::string> builtin_algebra_names();

// --- JSON I/O ---------------------------------------------------------------
// Document shape: {"dim": n, "basis": [n strings], "components": [n][n][n]}.
// Malformed documents throw ParseError naming the offending location.

Algebra algebra_from_json_string(const std::string& text, const Tolerance& tol = {});
Algebra algebra_from_json_file(const std::string& path, const Tolerance& tol = {});
std::string algebra_to_json_string(const Algebra& alg);

}  // namespace quatmetric

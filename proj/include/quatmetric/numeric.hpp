#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "quatmetric/errors.hpp"

namespace quatmetric {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

//! Numerical knobs shared across the library.
struct Tolerance {
  double rank_tol = 1e-10;  // relative singular-value / pivot cutoff
  double sym_tol = 1e-9;    // symmetry and closeness comparisons
  double quad_tol = 1e-10;  // adaptive quadrature error target
  double fd_step = 1e-6;    // central-difference step for first derivatives
};

//! Inertia of a symmetric bilinear form: counts of its eigenvalue signs.
struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
};

bool all_finite(const Matrix& m);

//! Orthonormal basis of the numerical nullspace of m.
//! Singular values at or below rank_tol * sigma_max count as zero, so the
//! zero matrix returns a full orthonormal basis of its column space domain.
std::vector<Vector> nullspace(const Matrix& m, const Tolerance& tol = {});

//! Eigenvalue signature of a symmetric matrix; |lambda| < rank_tol counts
//! as zero.  Throws NotSymmetric when max|m - m^T| exceeds sym_tol.
Signature signature(const Matrix& sym, const Tolerance& tol = {});

//! Solve m x = rhs for square m via rank-revealing QR.
//! Throws Singular when a pivot falls below the relative rank_tol cutoff.
Vector solve_square(const Matrix& m, const Vector& rhs, const Tolerance& tol = {});

//! Adaptive Simpson quadrature of f over [a, b] to absolute target quad_tol.
//! Throws NoConvergence once the refinement budget (2^20 evaluations) or the
//! maximum bisection depth is exhausted.
double quadrature(const std::function<double(double)>& f, double a, double b,
                  const Tolerance& tol = {});

//! Central difference (f(x+h) - f(x-h)) / 2h.
double fd_derivative(const std::function<double(double)>& f, double x, double step);

}  // namespace quatmetric

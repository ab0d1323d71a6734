#include "quatmetric/numeric.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace quatmetric {

bool all_finite(const Matrix& m) { return m.allFinite(); }

std::vector<Vector> nullspace(const Matrix& m, const Tolerance& tol) {
  if (!m.allFinite()) throw Error("nullspace: matrix has non-finite entries");
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = (sv.size() > 0 ? sv(0) : 0.0) * tol.rank_tol;
  std::vector<Vector> basis;
  for (Eigen::Index i = 0; i < m.cols(); ++i) {
    const double s = i < sv.size() ? sv(i) : 0.0;
    if (s <= cutoff) basis.push_back(svd.matrixV().col(i));
  }
  return basis;
}

Signature signature(const Matrix& sym, const Tolerance& tol) {
  if (sym.rows() != sym.cols())
    throw DimensionMismatch("signature: matrix is not square");
  if (sym.rows() == 0) return {};
  const double asym = (sym - sym.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol.sym_tol)
    throw NotSymmetric("signature: asymmetry " + std::to_string(asym) +
                       " exceeds tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sym + sym.transpose()),
                                           Eigen::EigenvaluesOnly);
  Signature out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (std::abs(lam) < tol.rank_tol)
      ++out.zero;
    else if (lam > 0)
      ++out.positive;
    else
      ++out.negative;
  }
  return out;
}

Vector solve_square(const Matrix& m, const Vector& rhs, const Tolerance& tol) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("solve_square: matrix is not square");
  if (m.rows() != rhs.size())
    throw DimensionMismatch("solve_square: rhs size does not match matrix");
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  qr.setThreshold(tol.rank_tol);
  if (qr.rank() < m.cols())
    throw Singular("solve_square: matrix is singular within rank tolerance");
  return qr.solve(rhs);
}

namespace {

struct QuadState {
  const std::function<double(double)>& f;
  long evals = 0;
  long budget = 1L << 20;
};

double quad_eval(QuadState& st, double x) {
  if (++st.evals > st.budget)
    throw NoConvergence("quadrature: evaluation budget exhausted");
  const double v = st.f(x);
  if (!std::isfinite(v))
    throw NoConvergence("quadrature: integrand is not finite");
  return v;
}

// Adaptive Simpson with the classical 15x acceptance rule and one
// extrapolation term added on acceptance.
double simpson_recurse(QuadState& st, double a, double b, double fa, double fm,
                       double fb, double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = quad_eval(st, lm);
  const double frm = quad_eval(st, rm);
  const double h12 = (b - a) / 12.0;
  const double left = h12 * (fa + 4.0 * flm + fm);
  const double right = h12 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  if (depth <= 0)
    throw NoConvergence("quadrature: maximum refinement depth reached");
  return simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace

double quadrature(const std::function<double(double)>& f, double a, double b,
                  const Tolerance& tol) {
  if (a == b) return 0.0;
  double lo = a, hi = b, sign = 1.0;
  if (hi < lo) {
    std::swap(lo, hi);
    sign = -1.0;
  }
  QuadState st{f};
  const double flo = quad_eval(st, lo);
  const double fhi = quad_eval(st, hi);
  const double fm = quad_eval(st, 0.5 * (lo + hi));
  const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
  return sign * simpson_recurse(st, lo, hi, flo, fm, fhi, whole, tol.quad_tol, 48);
}

double fd_derivative(const std::function<double(double)>& f, double x, double step) {
  if (step <= 0.0) throw Error("fd_derivative: step must be positive");
  return (f(x + step) - f(x - step)) / (2.0 * step);
}

}  // namespace quatmetric

#include "quatmetric/products.hpp"

#include <cmath>

namespace quatmetric {

std::string to_string(MetricClass c) {
  switch (c) {
    case MetricClass::Riemannian: return "Riemannian";
    case MetricClass::Lorentzian: return "Lorentzian";
    case MetricClass::Degenerate: return "Degenerate";
    case MetricClass::Other: return "Other";
  }
  return "?";
}

Matrix constraint_matrix(const Algebra& alg) {
  const int n = alg.dim();
  const auto& t = alg.tensor();
  Matrix C(n * (n - 1) / 2, n);
  int row = 0;
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      for (int i = 0; i < n; ++i) C(row, i) = t(i, j, k) - t(i, k, j);
      ++row;
    }
  return C;
}

CovectorSpan principal_space(const Algebra& alg, const Tolerance& tol) {
  const Matrix C = constraint_matrix(alg);
  std::vector<Vector> gens = nullspace(C, tol);
  const double scale = std::max(1.0, C.cwiseAbs().maxCoeff());
  for (Vector& g : gens) {
    // Fix the sign so the largest-magnitude entry is positive.
    int arg = 0;
    for (int i = 1; i < g.size(); ++i)
      if (std::abs(g(i)) > std::abs(g(arg))) arg = i;
    if (g(arg) < 0.0) g = -g;
    if ((C * g).cwiseAbs().maxCoeff() > tol.rank_tol * scale)
      throw Error("principal_space: generator fails the symmetry constraint");
  }
  return {int(gens.size()), std::move(gens)};
}

InnerProduct contract(const Algebra& alg, const Vector& tau, const Tolerance& tol) {
  const int n = alg.dim();
  if (tau.size() != n)
    throw DimensionMismatch("contract: covector size does not match algebra dimension");
  const auto& t = alg.tensor();
  InnerProduct ip;
  ip.tau = tau;
  ip.matrix = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        const double w = t(i, j, k);
        if (w == 0.0) continue;
        acc += tau(i) * w;
      }
      ip.matrix(j, k) = acc;
    }
  ip.asymmetry = (ip.matrix - ip.matrix.transpose()).cwiseAbs().maxCoeff();
  ip.sig = signature(0.5 * (ip.matrix + ip.matrix.transpose()), tol);
  return ip;
}

MetricClass classify(const InnerProduct& ip) {
  const Signature& s = ip.sig;
  const int n = s.positive + s.negative + s.zero;
  if (s.zero > 0) return MetricClass::Degenerate;
  if (s.positive == n || s.negative == n) return MetricClass::Riemannian;
  if (s.positive == 1 || s.negative == 1) return MetricClass::Lorentzian;
  return MetricClass::Other;
}

}  // namespace quatmetric

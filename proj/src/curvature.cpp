#include "quatmetric/curvature.hpp"

#include <cmath>
#include <limits>

namespace quatmetric {

namespace {

Matrix eval_metric(const MetricField& mf, const Vector& x) {
  if (x.size() != mf.dim)
    throw DimensionMismatch("curvature: point size does not match field dimension");
  Matrix g = mf.eval(x);
  if (g.rows() != mf.dim || g.cols() != mf.dim)
    throw DimensionMismatch("curvature: field returned a matrix of wrong shape");
  return g;
}

Matrix inverse_metric(const Matrix& g) {
  Eigen::FullPivLU<Matrix> lu(g);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible())
    throw SingularMetric("curvature: metric is singular at the evaluation point");
  return lu.inverse();
}

}  // namespace

Rank3 christoffel(const MetricField& mf, const Vector& x, double h) {
  if (h <= 0.0) throw Error("christoffel: step must be positive");
  const int n = mf.dim;
  const Matrix ginv = inverse_metric(eval_metric(mf, x));
  std::vector<Matrix> dg(n);
  for (int b = 0; b < n; ++b) {
    Vector xp = x, xm = x;
    xp(b) += h;
    xm(b) -= h;
    dg[b] = (eval_metric(mf, xp) - eval_metric(mf, xm)) / (2.0 * h);
  }
  Rank3 gamma(n, Matrix::Zero(n, n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int d = 0; d < n; ++d)
          acc += ginv(a, d) * (dg[b](d, c) + dg[c](d, b) - dg[d](b, c));
        gamma[a](b, c) = 0.5 * acc;
      }
  return gamma;
}

CurvatureReport curvature_report(const MetricField& mf, const Vector& x, double h) {
  const int n = mf.dim;
  CurvatureReport rep;
  rep.dim = n;
  rep.gamma = christoffel(mf, x, h);
  // Central differences of Gamma with the same step.
  std::vector<Rank3> dgamma(n);
  for (int c = 0; c < n; ++c) {
    Vector xp = x, xm = x;
    xp(c) += h;
    xm(c) -= h;
    const Rank3 gp = christoffel(mf, xp, h);
    const Rank3 gm = christoffel(mf, xm, h);
    dgamma[c].assign(n, Matrix::Zero(n, n));
    for (int a = 0; a < n; ++a) dgamma[c][a] = (gp[a] - gm[a]) / (2.0 * h);
  }
  rep.riemann.assign(std::size_t(n) * n * n * n, 0.0);
  auto idx = [n](int a, int b, int c, int d) {
    return std::size_t(((a * n + b) * n + c)) * n + d;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double acc = dgamma[c][a](d, b) - dgamma[d][a](c, b);
          for (int e = 0; e < n; ++e)
            acc += rep.gamma[a](c, e) * rep.gamma[e](d, b) -
                   rep.gamma[a](d, e) * rep.gamma[e](c, b);
          rep.riemann[idx(a, b, c, d)] = acc;
        }
  rep.ricci = Matrix::Zero(n, n);
  for (int b = 0; b < n; ++b)
    for (int d = 0; d < n; ++d) {
      double acc = 0.0;
      for (int a = 0; a < n; ++a) acc += rep.riemann[idx(a, b, a, d)];
      rep.ricci(b, d) = acc;
    }
  const Matrix ginv = inverse_metric(eval_metric(mf, x));
  rep.scalar = (ginv * rep.ricci).trace();
  return rep;
}

double scalar_curvature(const MetricField& mf, const Vector& x, double h) {
  return curvature_report(mf, x, h).scalar;
}

double scalar_curvature_richardson(const MetricField& mf, const Vector& x, double h) {
  const double s1 = scalar_curvature(mf, x, h);
  const double s2 = scalar_curvature(mf, x, 0.5 * h);
  return (4.0 * s2 - s1) / 3.0;
}

MetricField spherical_metric_field(const TauProfile& tau, const RadialProfile& prof) {
  TauProfile t = tau;
  RadialProfile pr = prof;
  MetricField mf;
  mf.dim = 4;
  mf.labels = {"eta", "chi", "theta", "phi"};
  mf.eval = [t, pr](const Vector& x) {
    const SphericalPoint p{x(0), x(1), x(2), x(3)};
    return metric_spherical(p, t, pr).g;
  };
  return mf;
}

MetricField spatial_slice_field(const TauProfile& tau, double eta) {
  TauProfile t = tau;
  const double s = tau.sign();
  // The slice block is independent of the radial profile; any valid profile
  // gives the same field, so the exponential one serves.
  RadialProfile pr = RadialProfile::exponential();
  MetricField mf;
  mf.dim = 3;
  mf.labels = {"chi", "theta", "phi"};
  mf.eval = [t, pr, s, eta](const Vector& x) {
    const SphericalPoint p{eta, x(0), x(1), x(2)};
    const Matrix g4 = metric_spherical(p, t, pr).g;
    return Matrix(-s * g4.block(1, 1, 3, 3));
  };
  return mf;
}

SliceReport spatial_slice_check(const TauProfile& tau, double eta,
                                const std::vector<std::array<double, 3>>& angles,
                                double h) {
  const MetricField mf = spatial_slice_field(tau, eta);
  SliceReport rep;
  rep.eta = eta;
  rep.scale = std::sqrt(std::abs(tau(eta)));
  rep.expected_scalar = 6.0 / (rep.scale * rep.scale);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& ang : angles) {
    Vector x(3);
    x << ang[0], ang[1], ang[2];
    const double s = scalar_curvature_richardson(mf, x, h);
    rep.values.push_back(s);
    rep.max_rel_deviation =
        std::max(rep.max_rel_deviation,
                 std::abs(s - rep.expected_scalar) / std::abs(rep.expected_scalar));
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  rep.spread = rep.values.empty() ? 0.0 : hi - lo;
  rep.pass = !rep.values.empty() && rep.max_rel_deviation <= kSliceTol &&
             rep.spread <= kSliceTol;
  return rep;
}

}  // namespace quatmetric

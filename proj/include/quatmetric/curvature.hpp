#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "quatmetric/metric.hpp"
#include "quatmetric/numeric.hpp"

namespace quatmetric {

//! Constancy and value tolerance for slice scalar-curvature checks.
inline constexpr double kSliceTol = 1e-3;

//! A metric given as a field: symmetric dim x dim matrix at each coordinate
//! point.
struct MetricField {
  int dim = 0;
  std::function<Matrix(const Vector&)> eval;
  std::vector<std::string> labels;
};

//! gamma[a](b, c) = Gamma^a_{bc}.
using Rank3 = std::vector<Matrix>;

//! Gamma^a_{bc} = g^{ad} (d_b g_dc + d_c g_db - d_d g_bc) / 2 with central
//! differences of step h.  Throws SingularMetric when the metric cannot be
//! inverted at x.
Rank3 christoffel(const MetricField& mf, const Vector& x, double h);

struct CurvatureReport {
  int dim = 0;
  Rank3 gamma;
  std::vector<double> riemann;  // R^a_{bcd}, index ((a d + b) d + c) d + d'
  Matrix ricci;
  double scalar = 0.0;

  double riemann_comp(int a, int b, int c, int d) const {
    const int n = dim;
    return riemann[std::size_t(((a * n + b) * n + c)) * n + d];
  }
};

//! R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb}
//!           + Gamma^a_{ce} Gamma^e_{db} - Gamma^a_{de} Gamma^e_{cb},
//! Ricci_bd = R^a_{bad}, scalar = g^{bd} Ricci_bd.
CurvatureReport curvature_report(const MetricField& mf, const Vector& x, double h);

double scalar_curvature(const MetricField& mf, const Vector& x, double h);

//! One Richardson level: (4 S(h/2) - S(h)) / 3.
double scalar_curvature_richardson(const MetricField& mf, const Vector& x, double h);

//! The spherical-coordinate metric as a 4-dim field over (eta, chi, theta,
//! phi).
MetricField spherical_metric_field(const TauProfile& tau, const RadialProfile& prof);

//! Fixed-eta spatial slice over (chi, theta, phi), flipped to the
//! positive-definite orientation by -sign(tau).  The slice does not depend
//! on the radial profile.
MetricField spatial_slice_field(const TauProfile& tau, double eta);

struct SliceReport {
  double eta = 0.0;
  double scale = 0.0;            // sqrt|tau(eta)|
  double expected_scalar = 0.0;  // 6 / scale^2
  std::vector<double> values;
  double max_rel_deviation = 0.0;
  double spread = 0.0;  // max - min over the probed points
  bool pass = false;
};

//! Scalar curvature of the spatial slice at the given (chi, theta, phi)
//! probes, checked for constancy and against 6 / scale^2, both within
//! kSliceTol.
SliceReport spatial_slice_check(const TauProfile& tau, double eta,
                                const std::vector<std::array<double, 3>>& angles,
                                double h = 1e-3);

}  // namespace quatmetric

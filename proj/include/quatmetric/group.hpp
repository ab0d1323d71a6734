#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "quatmetric/algebra.hpp"
#include "quatmetric/numeric.hpp"

namespace quatmetric {

//! Point of the multiplicative group of nonzero quaternions, in canonical
//! coordinates (w, x, y, z).
struct GroupPoint {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;
};

//! Point in the spherical chart (eta, chi, theta, phi):
//!   w = R(eta) cos chi,
//!   x = R(eta) sin chi sin theta cos phi,
//!   y = R(eta) sin chi sin theta sin phi,
//!   z = R(eta) sin chi cos theta.
struct SphericalPoint {
  double eta = 0.0, chi = 1.0, theta = 1.0, phi = 0.0;
};

Vector to_vector(const GroupPoint& a);
//! Throws ZeroPoint when v vanishes, DimensionMismatch when v is not 4-dim.
GroupPoint to_group_point(const Vector& v);
double norm(const GroupPoint& a);

//! Radial coordinate profile eta -> R(eta): a differentiable, nowhere-zero
//! function with nowhere-zero derivative, given with its derivative and,
//! optionally, an analytic inverse or a monotone bracket for inversion.
class RadialProfile {
 public:
  using Fn = std::function<double(double)>;

  RadialProfile(Fn r, Fn rdot) : r_(std::move(r)), rdot_(std::move(rdot)) {}

  RadialProfile& with_inverse(Fn inverse) {
    inverse_ = std::move(inverse);
    return *this;
  }
  RadialProfile& with_bracket(double lo, double hi) {
    bracket_ = {lo, hi};
    return *this;
  }

  double r(double eta) const { return r_(eta); }
  double rdot(double eta) const { return rdot_(eta); }

  //! eta with |R(eta)| = radius (radius > 0), using the analytic inverse when
  //! given, otherwise bisection over the bracket.  Throws
  //! ProfileNotInvertible without either, when R is not monotone on the
  //! bracket, or when the radius falls outside the bracketed range.
  double invert(double radius) const;

  //! R(eta) = exp(eta), with its analytic inverse.
  static RadialProfile exponential();

 private:
  Fn r_, rdot_;
  std::optional<Fn> inverse_;
  std::optional<std::pair<double, double>> bracket_;
};

enum class Frame { Canonical, Spherical, Proper };
std::string to_string(Frame f);

//! Linear map between tangent-frame components at a point: for a tangent
//! vector with components v in the `from` frame, matrix * v gives its
//! components in the `to` frame.
struct FrameTransform {
  Matrix matrix;
  Frame from = Frame::Canonical;
  Frame to = Frame::Canonical;
  GroupPoint at;
};

//! Value at a of the left-invariant field with value u at the identity:
//! the quaternion product a u, written out in canonical components.
Vector left_invariant_field(const Element& u, const GroupPoint& a);

//! Columns are the four left-invariant frame fields at a (the matrix of
//! left multiplication by a); det = |a|^4.
Matrix proper_frame(const GroupPoint& a);

GroupPoint spherical_to_canonical(const SphericalPoint& p, const RadialProfile& prof);

//! Inverts the chart.  Throws ChartSingularity on the chi poles (x=y=z=0)
//! and on the theta axis (x=y=0), ProfileNotInvertible from the profile.
SphericalPoint canonical_to_spherical(const GroupPoint& a, const RadialProfile& prof);

//! Jacobian d(w,x,y,z)/d(eta,chi,theta,phi); det = R^3 Rdot sin^2(chi)
//! sin(theta).  Throws ChartSingularity when sin chi or sin theta vanishes.
Matrix jacobian_spherical(const SphericalPoint& p, const RadialProfile& prof);

//! Component map between two tangent frames at the chart point p, built by
//! composing through canonical coordinates.
FrameTransform frame_transform(Frame from, Frame to, const SphericalPoint& p,
                               const RadialProfile& prof);

//! Closed-form candidate for the spherical-to-proper frame table (rows =
//! spherical coordinate-frame vectors decomposed in the proper frame), kept
//! for adjudication against the composed transform; see
//! compare_frame_closed_form.
Matrix frame_transform_closed_form(const SphericalPoint& p, const RadialProfile& prof);

struct FrameComparison {
  Matrix composed;     // transpose of frame_transform(Spherical, Proper).matrix
  Matrix closed_form;  // frame_transform_closed_form
  Matrix abs_diff;
  double max_abs_diff = 0.0;
};

FrameComparison compare_frame_closed_form(const SphericalPoint& p,
                                          const RadialProfile& prof);

//! Quaternion exponential exp(u0 + v) = e^{u0} (cos|v| + sin|v| v/|v|).
GroupPoint exp_quaternion(const Element& u);

//! Principal logarithm, restricted to the ball |a - 1| < 1 around the
//! identity; throws OutOfDomain outside it.
Element log_quaternion(const GroupPoint& a);

//! Norm of log(e^{tu} e^{tv} e^{-tu} e^{-tv}) - t^2 [u, v]; third order in t.
double bch_commutator_check(const Element& u, const Element& v, double t);

//! Two-level Richardson estimate (from t, t/2, t/4) of the t^2 coefficient
//! of log(e^{tu} e^{tv} e^{-tu} e^{-tv}); approximates the commutator [u, v].
Element bch_t2_coefficient(const Element& u, const Element& v, double t);

}  // namespace quatmetric

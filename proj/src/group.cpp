#include "quatmetric/group.hpp"

#include <cmath>

namespace quatmetric {

namespace {
constexpr double kChartGuard = 1e-12;  // relative cutoff for chart poles
}

Vector to_vector(const GroupPoint& a) {
  Vector v(4);
  v << a.w, a.x, a.y, a.z;
  return v;
}

GroupPoint to_group_point(const Vector& v) {
  if (v.size() != 4)
    throw DimensionMismatch("to_group_point: vector must have dimension 4");
  if (v(0) == 0.0 && v(1) == 0.0 && v(2) == 0.0 && v(3) == 0.0)
    throw ZeroPoint("to_group_point: the zero quaternion is not a group point");
  return {v(0), v(1), v(2), v(3)};
}

double norm(const GroupPoint& a) {
  return std::sqrt(a.w * a.w + a.x * a.x + a.y * a.y + a.z * a.z);
}

double RadialProfile::invert(double radius) const {
  if (!(radius > 0.0))
    throw ProfileNotInvertible("invert: radius must be positive");
  // R never vanishes, so its sign is global; probe it at a convenient point.
  const double probe = bracket_ ? 0.5 * (bracket_->first + bracket_->second) : 0.0;
  const double sigma = r_(probe) > 0.0 ? 1.0 : -1.0;
  const double target = sigma * radius;
  if (inverse_) return (*inverse_)(target);
  if (!bracket_)
    throw ProfileNotInvertible("invert: no analytic inverse and no bracket");
  const auto [lo, hi] = *bracket_;
  // Demand strict monotonicity of R on the bracket before bisecting.
  const int samples = 33;
  double prev = r_(lo);
  const double dir = r_(hi) > prev ? 1.0 : -1.0;
  for (int i = 1; i < samples; ++i) {
    const double eta = lo + (hi - lo) * i / (samples - 1);
    const double cur = r_(eta);
    if (dir * (cur - prev) <= 0.0)
      throw ProfileNotInvertible("invert: profile is not monotone on the bracket");
    prev = cur;
  }
  double flo = r_(lo) - target, fhi = r_(hi) - target;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0)
    throw ProfileNotInvertible("invert: radius outside the bracketed range");
  double a = lo, b = hi;
  for (int it = 0; it < 200 && b - a > 1e-16 * std::max({1.0, std::abs(a), std::abs(b)});
       ++it) {
    const double m = 0.5 * (a + b);
    const double fm = r_(m) - target;
    if (fm == 0.0) return m;
    if (flo * fm < 0.0) {
      b = m;
    } else {
      a = m;
      flo = fm;
    }
  }
  return 0.5 * (a + b);
}

RadialProfile RadialProfile::exponential() {
  RadialProfile prof([](double eta) { return std::exp(eta); },
                     [](double eta) { return std::exp(eta); });
  prof.with_inverse([](double radius) { return std::log(radius); });
  return prof;
}

std::string to_string(Frame f) {
  switch (f) {
    case Frame::Canonical: return "canonical";
    case Frame::Spherical: return "spherical";
    case Frame::Proper: return "proper";
  }
  return "?";
}

Vector left_invariant_field(const Element& u, const GroupPoint& a) {
  if (u.size() != 4)
    throw DimensionMismatch("left_invariant_field: u must have dimension 4");
  if (a.w == 0.0 && a.x == 0.0 && a.y == 0.0 && a.z == 0.0)
    throw ZeroPoint("left_invariant_field: base point is zero");
  Vector out(4);
  out(0) = a.w * u(0) - a.x * u(1) - a.y * u(2) - a.z * u(3);
  out(1) = a.w * u(1) + a.x * u(0) + a.y * u(3) - a.z * u(2);
  out(2) = a.w * u(2) - a.x * u(3) + a.y * u(0) + a.z * u(1);
  out(3) = a.w * u(3) + a.x * u(2) - a.y * u(1) + a.z * u(0);
  return out;
}

Matrix proper_frame(const GroupPoint& a) {
  Matrix P(4, 4);
  for (int beta = 0; beta < 4; ++beta) {
    Element e = Element::Zero(4);
    e(beta) = 1.0;
    P.col(beta) = left_invariant_field(e, a);
  }
  return P;
}

GroupPoint spherical_to_canonical(const SphericalPoint& p, const RadialProfile& prof) {
  const double R = prof.r(p.eta);
  const double sc = std::sin(p.chi), cc = std::cos(p.chi);
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  const double sp = std::sin(p.phi), cp = std::cos(p.phi);
  GroupPoint a;
  a.w = R * cc;
  a.x = R * sc * st * cp;
  a.y = R * sc * st * sp;
  a.z = R * sc * ct;
  return a;
}

SphericalPoint canonical_to_spherical(const GroupPoint& a, const RadialProfile& prof) {
  const double r = norm(a);
  if (r == 0.0) throw ZeroPoint("canonical_to_spherical: zero point");
  const double rho = std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z);
  if (rho < kChartGuard * r)
    throw ChartSingularity("canonical_to_spherical: chi pole (x=y=z=0)");
  const double rho_xy = std::sqrt(a.x * a.x + a.y * a.y);
  if (rho_xy < kChartGuard * r)
    throw ChartSingularity("canonical_to_spherical: theta axis (x=y=0)");
  SphericalPoint p;
  p.eta = prof.invert(r);
  // R may be globally negative; fold its sign into the angles.
  const double sigma = prof.r(p.eta) > 0.0 ? 1.0 : -1.0;
  p.chi = std::acos(std::clamp(a.w / (sigma * r), -1.0, 1.0));
  p.theta = std::acos(std::clamp(a.z / (sigma * rho), -1.0, 1.0));
  p.phi = std::atan2(sigma * a.y, sigma * a.x);
  if (p.phi < 0.0) p.phi += 2.0 * M_PI;
  return p;
}

Matrix jacobian_spherical(const SphericalPoint& p, const RadialProfile& prof) {
  const double sc = std::sin(p.chi), cc = std::cos(p.chi);
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  if (std::abs(sc) < kChartGuard || std::abs(st) < kChartGuard)
    throw ChartSingularity("jacobian_spherical: chart is singular here");
  const double sp = std::sin(p.phi), cp = std::cos(p.phi);
  const double R = prof.r(p.eta);
  const double Rd = prof.rdot(p.eta);
  Matrix J(4, 4);
  // Column order: eta, chi, theta, phi; row order: w, x, y, z.
  J(0, 0) = Rd * cc;
  J(0, 1) = -R * sc;
  J(0, 2) = 0.0;
  J(0, 3) = 0.0;
  J(1, 0) = Rd * sc * st * cp;
  J(1, 1) = R * cc * st * cp;
  J(1, 2) = R * sc * ct * cp;
  J(1, 3) = -R * sc * st * sp;
  J(2, 0) = Rd * sc * st * sp;
  J(2, 1) = R * cc * st * sp;
  J(2, 2) = R * sc * ct * sp;
  J(2, 3) = R * sc * st * cp;
  J(3, 0) = Rd * sc * ct;
  J(3, 1) = R * cc * ct;
  J(3, 2) = -R * sc * st;
  J(3, 3) = 0.0;
  return J;
}

namespace {

// Components of the frame's basis vectors in canonical coordinates.
Matrix frame_in_canonical(Frame f, const SphericalPoint& p, const GroupPoint& a,
                          const RadialProfile& prof) {
  switch (f) {
    case Frame::Canonical: return Matrix::Identity(4, 4);
    case Frame::Spherical: return jacobian_spherical(p, prof);
    case Frame::Proper: return proper_frame(a);
  }
  throw Error("frame_in_canonical: unknown frame");
}

Matrix solve_matrix(const Matrix& m, const Matrix& rhs) {
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  qr.setThreshold(1e-10);
  if (qr.rank() < m.cols())
    throw ChartSingularity("frame_transform: frame matrix is not invertible");
  return qr.solve(rhs);
}

}  // namespace

FrameTransform frame_transform(Frame from, Frame to, const SphericalPoint& p,
                               const RadialProfile& prof) {
  const GroupPoint a = spherical_to_canonical(p, prof);
  FrameTransform t;
  t.from = from;
  t.to = to;
  t.at = a;
  if (from == to) {
    t.matrix = Matrix::Identity(4, 4);
    return t;
  }
  const Matrix from_can = frame_in_canonical(from, p, a, prof);
  const Matrix to_can = frame_in_canonical(to, p, a, prof);
  t.matrix = solve_matrix(to_can, from_can);
  return t;
}

Matrix frame_transform_closed_form(const SphericalPoint& p, const RadialProfile& prof) {
  const double sc = std::sin(p.chi), cc = std::cos(p.chi);
  const double st = std::sin(p.theta), ct = std::cos(p.theta);
  if (std::abs(sc) < kChartGuard || std::abs(st) < kChartGuard)
    throw ChartSingularity("frame_transform_closed_form: chart is singular here");
  const double sp = std::sin(p.phi), cp = std::cos(p.phi);
  const double R = prof.r(p.eta);
  const double Rd = prof.rdot(p.eta);
  if (Rd == 0.0)
    throw Error("frame_transform_closed_form: profile derivative vanishes");
  Matrix M(4, 4);
  M.setZero();
  M(0, 0) = R / Rd;
  M(1, 1) = st * cp;
  M(1, 2) = st * sp;
  M(1, 3) = ct;
  M(2, 1) = (cc * ct * cp + sc * sp) / sc;
  M(2, 2) = (cc * ct * sp + sc * cp) / sc;
  M(2, 3) = cc * st / sc;
  M(3, 1) = (sc * ct * cp - cc * sp) / (sc * st);
  M(3, 2) = (sc * ct * sp + cc * cp) / (sc * st);
  M(3, 3) = -1.0;
  return M;
}

FrameComparison compare_frame_closed_form(const SphericalPoint& p,
                                          const RadialProfile& prof) {
  FrameComparison out;
  // Row convention: row c lists the proper-frame components of the c-th
  // spherical coordinate-frame vector.
  out.composed = frame_transform(Frame::Spherical, Frame::Proper, p, prof)
                     .matrix.transpose();
  out.closed_form = frame_transform_closed_form(p, prof);
  out.abs_diff = (out.composed - out.closed_form).cwiseAbs();
  out.max_abs_diff = out.abs_diff.maxCoeff();
  return out;
}

GroupPoint exp_quaternion(const Element& u) {
  if (u.size() != 4)
    throw DimensionMismatch("exp_quaternion: element must have dimension 4");
  const double s = std::exp(u(0));
  const double nv = std::sqrt(u(1) * u(1) + u(2) * u(2) + u(3) * u(3));
  // sin(nv)/nv with a series guard near zero.
  const double sinc =
      nv < 1e-8 ? 1.0 - nv * nv / 6.0 : std::sin(nv) / nv;
  GroupPoint a;
  a.w = s * std::cos(nv);
  a.x = s * sinc * u(1);
  a.y = s * sinc * u(2);
  a.z = s * sinc * u(3);
  return a;
}

Element log_quaternion(const GroupPoint& a) {
  const double dw = a.w - 1.0;
  const double dist2 = dw * dw + a.x * a.x + a.y * a.y + a.z * a.z;
  if (dist2 >= 1.0)
    throw OutOfDomain("log_quaternion: point outside the principal-branch ball");
  const double r = norm(a);
  const double rho = std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z);
  const double angle = std::atan2(rho, a.w);
  // angle/rho -> 1/w as rho -> 0 (w > 0 inside the ball).
  const double factor = rho < 1e-9 ? 1.0 / a.w : angle / rho;
  Element u(4);
  u(0) = std::log(r);
  u(1) = factor * a.x;
  u(2) = factor * a.y;
  u(3) = factor * a.z;
  return u;
}

namespace {

GroupPoint qmul(const GroupPoint& a, const GroupPoint& b) {
  Element ub(4);
  ub << b.w, b.x, b.y, b.z;
  const Vector c = left_invariant_field(ub, a);
  return {c(0), c(1), c(2), c(3)};
}

Element group_commutator_log(const Element& u, const Element& v, double t) {
  const GroupPoint g = qmul(qmul(exp_quaternion(t * u), exp_quaternion(t * v)),
                            qmul(exp_quaternion(-t * u), exp_quaternion(-t * v)));
  return log_quaternion(g);
}

Element algebra_commutator(const Element& u, const Element& v) {
  const GroupPoint pu{u(0), u(1), u(2), u(3)};
  const GroupPoint pv{v(0), v(1), v(2), v(3)};
  const GroupPoint uv = qmul(pu, pv);
  const GroupPoint vu = qmul(pv, pu);
  Element c(4);
  c << uv.w - vu.w, uv.x - vu.x, uv.y - vu.y, uv.z - vu.z;
  return c;
}

}  // namespace

double bch_commutator_check(const Element& u, const Element& v, double t) {
  if (u.size() != 4 || v.size() != 4)
    throw DimensionMismatch("bch_commutator_check: elements must have dimension 4");
  const Element lhs = group_commutator_log(u, v, t);
  const Element rhs = t * t * algebra_commutator(u, v);
  return (lhs - rhs).norm();
}

Element bch_t2_coefficient(const Element& u, const Element& v, double t) {
  if (u.size() != 4 || v.size() != 4)
    throw DimensionMismatch("bch_t2_coefficient: elements must have dimension 4");
  auto g = [&](double s) -> Element {
    return group_commutator_log(u, v, s) / (s * s);
  };
  const Element g1 = g(t);
  const Element g2 = g(0.5 * t);
  const Element g4 = g(0.25 * t);
  const Element a1 = 2.0 * g2 - g1;
  const Element a2 = 2.0 * g4 - g2;
  return (4.0 * a2 - a1) / 3.0;
}

}  // namespace quatmetric

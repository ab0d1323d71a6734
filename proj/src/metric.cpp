#include "quatmetric/metric.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include <json.hpp>

namespace quatmetric {

namespace {

double parse_number(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(what + ": cannot parse number \"" + text + "\"");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

// Derivative with one Richardson level, to suppress both the O(h^2)
// truncation and the quadrature noise that a smaller bare step would amplify.
double fd_refined(const std::function<double(double)>& f, double x, double h) {
  const double d1 = fd_derivative(f, x, h);
  const double d2 = fd_derivative(f, x, 0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

TauProfile::TauProfile(Fn f, double eta_min, double eta_max, std::string description)
    : f_(std::move(f)),
      eta_min_(eta_min),
      eta_max_(eta_max),
      description_(std::move(description)) {
  if (!(eta_min_ < eta_max_))
    throw Error("TauProfile: domain must satisfy eta_min < eta_max");
  validate();
}

void TauProfile::validate() {
  const int n = 1000;
  for (int i = 0; i <= n; ++i) {
    const double eta = eta_min_ + (eta_max_ - eta_min_) * i / n;
    const double v = f_(eta);
    if (!std::isfinite(v))
      throw Error("TauProfile: non-finite value at eta=" + std::to_string(eta));
    const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    if (s == 0)
      throw ZeroTau("TauProfile: profile vanishes at eta=" + std::to_string(eta));
    if (sign_ == 0)
      sign_ = s;
    else if (s != sign_)
      throw ZeroTau("TauProfile: profile changes sign at eta=" + std::to_string(eta));
  }
}

double TauProfile::operator()(double eta) const {
  const double slack = 1e-9 * std::max(1.0, eta_max_ - eta_min_);
  if (eta < eta_min_ - slack || eta > eta_max_ + slack)
    throw OutOfDomain("TauProfile: eta=" + std::to_string(eta) +
                      " outside [" + std::to_string(eta_min_) + ", " +
                      std::to_string(eta_max_) + "]");
  return f_(std::clamp(eta, eta_min_, eta_max_));
}

TauProfile TauProfile::constant(double value, double eta_min, double eta_max) {
  return TauProfile([value](double) { return value; }, eta_min, eta_max,
                    "const:" + std::to_string(value));
}

TauProfile TauProfile::exponential(double rate, double eta_min, double eta_max) {
  return TauProfile([rate](double eta) { return std::exp(rate * eta); }, eta_min,
                    eta_max, "exp:" + std::to_string(rate));
}

TauProfile TauProfile::polynomial(const std::vector<double>& coeffs, double eta_min,
                                  double eta_max) {
  if (coeffs.empty()) throw ParseError("TauProfile: polynomial needs coefficients");
  return TauProfile(
      [coeffs](double eta) {
        double acc = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * eta + coeffs[k];
        return acc;
      },
      eta_min, eta_max, "poly");
}

TauProfile TauProfile::sampled(const std::vector<std::pair<double, double>>& points) {
  const std::size_t n = points.size();
  if (n < 2) throw ParseError("TauProfile: table needs at least two samples");
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = points[i].first;
    y[i] = points[i].second;
    if (i > 0 && !(x[i] > x[i - 1]))
      throw ParseError("TauProfile: table etas must be strictly increasing");
  }
  // Fritsch-Carlson monotone cubic Hermite slopes: the interpolant stays
  // within the local data range, so samples of one sign give a profile of
  // one sign.
  std::vector<double> d(n - 1), m(n);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  m[0] = d[0];
  m[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i)
    m[i] = (d[i - 1] * d[i] > 0.0) ? 0.5 * (d[i - 1] + d[i]) : 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      m[i] = m[i + 1] = 0.0;
      continue;
    }
    const double alpha = m[i] / d[i];
    const double beta = m[i + 1] / d[i];
    const double s2 = alpha * alpha + beta * beta;
    if (s2 > 9.0) {
      const double t = 3.0 / std::sqrt(s2);
      m[i] = t * alpha * d[i];
      m[i + 1] = t * beta * d[i];
    }
  }
  auto eval = [x, y, m](double eta) {
    auto it = std::upper_bound(x.begin(), x.end(), eta);
    std::size_t i = it == x.begin() ? 0 : std::size_t(it - x.begin()) - 1;
    if (i + 1 >= x.size()) i = x.size() - 2;
    const double h = x[i + 1] - x[i];
    const double t = (eta - x[i]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y[i] + (t3 - 2 * t2 + t) * h * m[i] +
           (-2 * t3 + 3 * t2) * y[i + 1] + (t3 - t2) * h * m[i + 1];
  };
  return TauProfile(eval, x.front(), x.back(), "table");
}

TauProfile TauProfile::from_function(Fn f, double eta_min, double eta_max,
                                     std::string description) {
  return TauProfile(std::move(f), eta_min, eta_max, std::move(description));
}

TauProfile TauProfile::parse(const std::string& spec, double eta_min, double eta_max) {
  const std::size_t pos = spec.find(':');
  if (pos == std::string::npos)
    throw ParseError("tau spec: expected kind:args, got \"" + spec + "\"");
  const std::string kind = spec.substr(0, pos);
  const std::string args = spec.substr(pos + 1);
  if (kind == "const") return constant(parse_number(args, "tau spec"), eta_min, eta_max);
  if (kind == "exp") return exponential(parse_number(args, "tau spec"), eta_min, eta_max);
  if (kind == "poly") {
    std::vector<double> coeffs;
    for (const std::string& part : split(args, ','))
      coeffs.push_back(parse_number(part, "tau spec"));
    return polynomial(coeffs, eta_min, eta_max);
  }
  if (kind == "table") {
    std::vector<std::pair<double, double>> points;
    for (const std::string& part : split(args, ',')) {
      const std::size_t eq = part.find('=');
      if (eq == std::string::npos)
        throw ParseError("tau spec: table entry \"" + part + "\" needs eta=value");
      points.emplace_back(parse_number(part.substr(0, eq), "tau spec"),
                          parse_number(part.substr(eq + 1), "tau spec"));
    }
    return sampled(points);
  }
  throw ParseError("tau spec: unknown kind \"" + kind + "\"");
}

MetricPotential potential(const TauProfile& tau, double eta0, const Tolerance& tol) {
  if (eta0 < tau.eta_min() || eta0 > tau.eta_max())
    throw OutOfDomain("potential: eta0 outside the profile domain");
  TauProfile t = tau;
  auto fn = [t, eta0, tol](double eta) {
    try {
      return quadrature([&t](double e) { return t(e); }, eta0, eta, tol);
    } catch (const NoConvergence& e) {
      throw QuadratureFailure(e.what());
    }
  };
  MetricPotential out{fn, eta0, tau.sign()};
  // Strict monotonicity on a dense grid.
  const int n = 1000;
  double prev = out.value(tau.eta_min());
  for (int i = 1; i <= n; ++i) {
    const double eta = tau.eta_min() + (tau.eta_max() - tau.eta_min()) * i / n;
    const double cur = out.value(eta);
    if (out.direction * (cur - prev) <= 0.0)
      throw Error("potential: integral is not strictly monotone at eta=" +
                  std::to_string(eta));
    prev = cur;
  }
  // Derivative spot checks against tau itself.
  const double h = 1e-3;
  for (int i = 1; i <= 5; ++i) {
    const double eta =
        tau.eta_min() + (tau.eta_max() - tau.eta_min()) * i / 6.0;
    if (std::abs(fd_refined(out.value, eta, h) - t(eta)) > 1e-6)
      throw Error("potential: derivative check failed at eta=" + std::to_string(eta));
  }
  return out;
}

ScaleFactor scale_factor(const TauProfile& tau) {
  TauProfile t = tau;
  return {[t](double eta) { return std::sqrt(std::abs(t(eta))); }};
}

RadialProfile solve_scale_profile(const TauProfile& tau, double eta0, double r0,
                                  int branch, const Tolerance& tol) {
  if (r0 == 0.0) throw Error("solve_scale_profile: r0 must be nonzero");
  if (branch != 1 && branch != -1)
    throw Error("solve_scale_profile: branch must be +1 or -1");
  if (eta0 < tau.eta_min() || eta0 > tau.eta_max())
    throw OutOfDomain("solve_scale_profile: eta0 outside the profile domain");
  TauProfile t = tau;
  const double b = branch;
  auto r_fn = [t, eta0, r0, b, tol](double eta) {
    double integral = 0.0;
    try {
      integral = quadrature(
          [&t](double e) { return 1.0 / std::sqrt(std::abs(t(e))); }, eta0, eta, tol);
    } catch (const NoConvergence& e) {
      throw QuadratureFailure(e.what());
    }
    return r0 * std::exp(b * integral);
  };
  auto rdot_fn = [r_fn, t, b](double eta) {
    return r_fn(eta) * b / std::sqrt(std::abs(t(eta)));
  };
  RadialProfile prof(r_fn, rdot_fn);
  prof.with_bracket(tau.eta_min(), tau.eta_max());
  // Check the defining relation tau (Rdot/R)^2 = sign(tau) with an
  // independent finite-difference derivative.  The check evaluates the
  // profile with a tighter quadrature budget than the returned object:
  // dividing integration noise by the step would otherwise dominate the
  // residual and mask what the check is after, the construction itself.
  Tolerance tight = tol;
  tight.quad_tol = std::min(tol.quad_tol, 1e-12);
  auto r_check = [t, eta0, r0, b, tight](double eta) {
    double integral = 0.0;
    try {
      integral = quadrature(
          [&t](double e) { return 1.0 / std::sqrt(std::abs(t(e))); }, eta0, eta,
          tight);
    } catch (const NoConvergence& e) {
      throw QuadratureFailure(e.what());
    }
    return r0 * std::exp(b * integral);
  };
  const double h = 1e-3;
  const double lo = tau.eta_min() + 2.0 * h;
  const double hi = tau.eta_max() - 2.0 * h;
  const int s = tau.sign();
  for (int i = 0; i <= 10; ++i) {
    const double eta = lo + (hi - lo) * i / 10.0;
    const double ratio = fd_refined(r_check, eta, h) / r_check(eta);
    if (std::abs(t(eta) * ratio * ratio - s) > 1e-6)
      throw QuadratureFailure(
          "solve_scale_profile: defining-relation residual exceeds 1e-6 at eta=" +
          std::to_string(eta));
  }
  return prof;
}

MetricSample metric_proper(double tau_value) {
  if (tau_value == 0.0) throw ZeroTau("metric_proper: tau must be nonzero");
  Matrix g = Matrix::Zero(4, 4);
  g(0, 0) = tau_value;
  g(1, 1) = -tau_value;
  g(2, 2) = -tau_value;
  g(3, 3) = -tau_value;
  return {Frame::Proper, g};
}

MetricSample metric_spherical(const SphericalPoint& p, const TauProfile& tau,
                              const RadialProfile& prof) {
  const double sc = std::sin(p.chi), st = std::sin(p.theta);
  if (std::abs(sc) < 1e-12 || std::abs(st) < 1e-12)
    throw ChartSingularity("metric_spherical: chart is singular here");
  const double tv = tau(p.eta);
  const double hub = prof.rdot(p.eta) / prof.r(p.eta);
  Matrix g = Matrix::Zero(4, 4);
  g(0, 0) = tv * hub * hub;
  g(1, 1) = -tv;
  g(2, 2) = -tv * sc * sc;
  g(3, 3) = -tv * sc * sc * st * st;
  return {Frame::Spherical, g};
}

Matrix metric_spherical_pushforward(const SphericalPoint& p, const TauProfile& tau,
                                    const RadialProfile& prof) {
  const Matrix T = frame_transform(Frame::Spherical, Frame::Proper, p, prof).matrix;
  const Matrix gp = metric_proper(tau(p.eta)).g;
  return T.transpose() * gp * T;
}

StructureTensor structure_field_components(const GroupPoint& a, Frame frame,
                                           const RadialProfile& prof) {
  static const Algebra quat = quaternion_algebra();
  switch (frame) {
    case Frame::Proper:
      return quat.tensor();
    case Frame::Canonical: {
      const Matrix P = proper_frame(a);
      return change_of_basis(quat.tensor(), P.inverse());
    }
    case Frame::Spherical: {
      const SphericalPoint p = canonical_to_spherical(a, prof);
      const Matrix M = frame_transform(Frame::Spherical, Frame::Proper, p, prof).matrix;
      return change_of_basis(quat.tensor(), M);
    }
  }
  throw Error("structure_field_components: unknown frame");
}

FlrwReport flrw_verdict(const TauProfile& tau, const std::vector<SphericalPoint>& grid,
                        int branch, std::vector<Matrix>* metrics,
                        std::optional<double> eta0, double r0) {
  const double anchor = eta0 ? *eta0 : 0.5 * (tau.eta_min() + tau.eta_max());
  const RadialProfile prof = solve_scale_profile(tau, anchor, r0, branch);
  const ScaleFactor a_of = scale_factor(tau);
  const int s = tau.sign();
  FlrwReport report;
  report.sign_block = s;
  if (metrics) metrics->clear();
  std::map<double, double> samples;
  for (const SphericalPoint& p : grid) {
    const Matrix g = metric_spherical(p, tau, prof).g;
    if (metrics) metrics->push_back(g);
    const double a = a_of.value(p.eta);
    const double sc = std::sin(p.chi), st = std::sin(p.theta);
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = s;
    expected(1, 1) = -s * a * a;
    expected(2, 2) = -s * a * a * sc * sc;
    expected(3, 3) = -s * a * a * sc * sc * st * st;
    report.max_deviation =
        std::max(report.max_deviation, (g - expected).cwiseAbs().maxCoeff());
    samples.try_emplace(p.eta, std::sqrt(std::abs(g(1, 1))));
  }
  report.scale_factor_samples.assign(samples.begin(), samples.end());
  report.pass = !grid.empty() && report.max_deviation < kFlrwTol;
  return report;
}

std::string flrw_report_json(const FlrwReport& report) {
  nlohmann::json doc;
  doc["verdict"] = report.pass ? "PASS" : "FAIL";
  doc["max_deviation"] = report.max_deviation;
  doc["sign_block"] = report.sign_block > 0 ? "+" : "-";
  auto samples = nlohmann::json::array();
  for (const auto& [eta, a] : report.scale_factor_samples)
    samples.push_back(nlohmann::json::array({eta, a}));
  doc["scale_factor_samples"] = samples;
  return doc.dump(2);
}

}  // namespace quatmetric

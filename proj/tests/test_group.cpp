#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "quatmetric/algebra.hpp"
#include "quatmetric/group.hpp"

using namespace quatmetric;

namespace {

Element elem(double a, double b, double c, double d) {
  Element e(4);
  e << a, b, c, d;
  return e;
}

Element basis4(int i) {
  Element e = Element::Zero(4);
  e(i) = 1.0;
  return e;
}

SphericalPoint random_generic_point(std::mt19937& rng) {
  std::uniform_real_distribution<double> eta(-0.8, 0.8);
  std::uniform_real_distribution<double> ang(0.3, M_PI - 0.3);
  std::uniform_real_distribution<double> azi(0.1, 2.0 * M_PI - 0.1);
  return {eta(rng), ang(rng), ang(rng), azi(rng)};
}

}  // namespace

TEST_CASE("group point: conversions and the zero guard") {
  const GroupPoint a{1.0, 2.0, 3.0, 4.0};
  CHECK((to_vector(a) - elem(1, 2, 3, 4)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(norm(a) == doctest::Approx(std::sqrt(30.0)));
  CHECK_THROWS_AS(to_group_point(Element::Zero(4)), ZeroPoint);
  CHECK_THROWS_AS(to_group_point(Element::Ones(3)), DimensionMismatch);
}

TEST_CASE("left_invariant_field: identity point returns u") {
  const GroupPoint id{1.0, 0.0, 0.0, 0.0};
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> dist(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    Element u(4);
    for (int i = 0; i < 4; ++i) u(i) = dist(rng);
    CHECK((left_invariant_field(u, id) - u).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("left_invariant_field: known values") {
  // u = 1 at a returns the coordinates of a itself.
  const GroupPoint a{2.0, -1.0, 0.5, 3.0};
  CHECK((left_invariant_field(basis4(0), a) - elem(2, -1, 0.5, 3)).cwiseAbs().maxCoeff() ==
        0.0);
  // j i = -k.
  const GroupPoint j{0.0, 0.0, 1.0, 0.0};
  CHECK((left_invariant_field(basis4(1), j) + basis4(3)).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(left_invariant_field(basis4(0), GroupPoint{0, 0, 0, 0}), ZeroPoint);
  CHECK_THROWS_AS(left_invariant_field(Element::Ones(3), a), DimensionMismatch);
}

TEST_CASE("left_invariant_field: equals the algebra product a u bit for bit") {
  const Algebra q = quaternion_algebra();
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> idist(-9, 9);
  std::normal_distribution<double> fdist;
  for (int trial = 0; trial < 1000; ++trial) {
    Element u(4), av(4);
    for (int i = 0; i < 4; ++i) {
      u(i) = trial % 2 ? idist(rng) : fdist(rng);
      av(i) = trial % 2 ? idist(rng) : fdist(rng);
    }
    if (av.cwiseAbs().maxCoeff() == 0.0) av(0) = 1.0;
    const GroupPoint a{av(0), av(1), av(2), av(3)};
    const Vector field = left_invariant_field(u, a);
    const Element product = q.multiply(av, u);
    for (int i = 0; i < 4; ++i) CHECK(field(i) == product(i));
  }
}

TEST_CASE("left_invariant_field: left invariance on integer data") {
  const Algebra q = quaternion_algebra();
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> dist(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    Element u(4), av(4), bv(4);
    for (int i = 0; i < 4; ++i) {
      u(i) = dist(rng);
      av(i) = dist(rng);
      bv(i) = dist(rng);
    }
    if (av.cwiseAbs().maxCoeff() == 0.0) av(0) = 1.0;
    if (bv.cwiseAbs().maxCoeff() == 0.0) bv(0) = 1.0;
    // Field at b a equals b times the field at a: both are (b a) u.
    const Element ba = q.multiply(bv, av);
    if (ba.cwiseAbs().maxCoeff() == 0.0) continue;
    const GroupPoint pba{ba(0), ba(1), ba(2), ba(3)};
    const GroupPoint pa{av(0), av(1), av(2), av(3)};
    const Vector lhs = left_invariant_field(u, pba);
    const Element rhs = q.multiply(bv, Element(left_invariant_field(u, pa)));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("proper_frame: identity, scaling, determinant") {
  CHECK((proper_frame({1, 0, 0, 0}) - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() ==
        0.0);
  CHECK((proper_frame({2, 0, 0, 0}) - 2.0 * Matrix::Identity(4, 4))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  std::mt19937 rng(13);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 30; ++trial) {
    const GroupPoint a{dist(rng), dist(rng), dist(rng), dist(rng)};
    const double n = norm(a);
    if (n < 0.1) continue;
    CHECK(proper_frame(a).determinant() ==
          doctest::Approx(n * n * n * n).epsilon(1e-10));
  }
}

TEST_CASE("spherical chart: forward map") {
  const RadialProfile unit([](double) { return 1.0; }, [](double) { return 1.0; });
  const GroupPoint i = spherical_to_canonical({0.0, M_PI / 2, M_PI / 2, 0.0}, unit);
  CHECK(std::abs(i.w) < 1e-15);
  CHECK(i.x == doctest::Approx(1.0));
  CHECK(std::abs(i.y) < 1e-15);
  CHECK(std::abs(i.z) < 1e-15);
  // chi = 0 pole maps onto the real axis.
  const GroupPoint pole = spherical_to_canonical({0.0, 0.0, 1.0, 2.0}, unit);
  CHECK(pole.w == doctest::Approx(1.0));
  CHECK(std::abs(pole.x) + std::abs(pole.y) + std::abs(pole.z) < 1e-15);
  // Generic point with the exponential profile.
  const RadialProfile expo = RadialProfile::exponential();
  const SphericalPoint p{1.0, 0.7, 1.1, 2.3};
  const GroupPoint a = spherical_to_canonical(p, expo);
  const double R = std::exp(1.0);
  CHECK(a.w == doctest::Approx(R * std::cos(0.7)));
  CHECK(a.x == doctest::Approx(R * std::sin(0.7) * std::sin(1.1) * std::cos(2.3)));
  CHECK(a.y == doctest::Approx(R * std::sin(0.7) * std::sin(1.1) * std::sin(2.3)));
  CHECK(a.z == doctest::Approx(R * std::sin(0.7) * std::cos(1.1)));
}

TEST_CASE("spherical chart: inverse map and round trips") {
  const RadialProfile expo = RadialProfile::exponential();
  const SphericalPoint p = canonical_to_spherical({0.0, 1.0, 0.0, 0.0}, expo);
  CHECK(std::abs(p.eta) < 1e-12);
  CHECK(p.chi == doctest::Approx(M_PI / 2));
  CHECK(p.theta == doctest::Approx(M_PI / 2));
  CHECK(std::abs(p.phi) < 1e-12);
  std::mt19937 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const SphericalPoint q = random_generic_point(rng);
    const SphericalPoint back =
        canonical_to_spherical(spherical_to_canonical(q, expo), expo);
    CHECK(std::abs(back.eta - q.eta) < 1e-10);
    CHECK(std::abs(back.chi - q.chi) < 1e-10);
    CHECK(std::abs(back.theta - q.theta) < 1e-10);
    CHECK(std::abs(back.phi - q.phi) < 1e-10);
  }
}

TEST_CASE("spherical chart: singular points are rejected") {
  const RadialProfile expo = RadialProfile::exponential();
  CHECK_THROWS_AS(canonical_to_spherical({1.0, 0.0, 0.0, 0.0}, expo),
                  ChartSingularity);
  CHECK_THROWS_AS(canonical_to_spherical({0.5, 0.0, 0.0, 0.5}, expo),
                  ChartSingularity);
}

TEST_CASE("radial profile: bisection inversion and failure modes") {
  // R = 2 + tanh(eta) on [-2, 2], no analytic inverse provided.
  RadialProfile prof([](double e) { return 2.0 + std::tanh(e); },
                     [](double e) { return 1.0 / std::pow(std::cosh(e), 2); });
  prof.with_bracket(-2.0, 2.0);
  for (double eta : {-1.5, -0.3, 0.0, 0.9, 1.8}) {
    CHECK(prof.invert(2.0 + std::tanh(eta)) == doctest::Approx(eta).epsilon(1e-10));
  }
  CHECK_THROWS_AS(prof.invert(10.0), ProfileNotInvertible);
  CHECK_THROWS_AS(prof.invert(-1.0), ProfileNotInvertible);

  RadialProfile no_inverse([](double e) { return 1.0 + e * e; },
                           [](double e) { return 2.0 * e; });
  CHECK_THROWS_AS(no_inverse.invert(1.5), ProfileNotInvertible);

  RadialProfile not_monotone([](double e) { return 2.0 + std::sin(3.0 * e); },
                             [](double e) { return 3.0 * std::cos(3.0 * e); });
  not_monotone.with_bracket(-2.0, 2.0);
  CHECK_THROWS_AS(not_monotone.invert(2.0), ProfileNotInvertible);
}

TEST_CASE("spherical chart: globally negative radial profile") {
  // R = -exp(eta): same norms, angles folded through the sign.
  RadialProfile neg([](double e) { return -std::exp(e); },
                    [](double e) { return -std::exp(e); });
  neg.with_bracket(-2.0, 2.0);
  std::mt19937 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const SphericalPoint q = random_generic_point(rng);
    const SphericalPoint back =
        canonical_to_spherical(spherical_to_canonical(q, neg), neg);
    CHECK(std::abs(back.eta - q.eta) < 1e-9);
    CHECK(std::abs(back.chi - q.chi) < 1e-9);
    CHECK(std::abs(back.theta - q.theta) < 1e-9);
    CHECK(std::abs(back.phi - q.phi) < 1e-9);
  }
}

TEST_CASE("jacobian_spherical: an analytic entry, the determinant, and fd") {
  const RadialProfile expo = RadialProfile::exponential();
  std::mt19937 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const SphericalPoint p = random_generic_point(rng);
    const Matrix J = jacobian_spherical(p, expo);
    const double R = std::exp(p.eta);
    // dw/deta = Rdot cos chi.
    CHECK(J(0, 0) == doctest::Approx(R * std::cos(p.chi)));
    // det J = R^3 Rdot sin^2(chi) sin(theta) in this column order.
    const double det_expected = R * R * R * R * std::pow(std::sin(p.chi), 2) *
                                std::sin(p.theta);
    CHECK(J.determinant() == doctest::Approx(det_expected).epsilon(1e-10));
  }
  // Columns against finite differences of the forward map.
  const SphericalPoint p{0.3, 1.1, 0.9, 2.0};
  const Matrix J = jacobian_spherical(p, expo);
  const double h = 1e-6;
  for (int col = 0; col < 4; ++col) {
    SphericalPoint pp = p, pm = p;
    double* fields_p[4] = {&pp.eta, &pp.chi, &pp.theta, &pp.phi};
    double* fields_m[4] = {&pm.eta, &pm.chi, &pm.theta, &pm.phi};
    *fields_p[col] += h;
    *fields_m[col] -= h;
    const Vector fd = (to_vector(spherical_to_canonical(pp, expo)) -
                       to_vector(spherical_to_canonical(pm, expo))) /
                      (2.0 * h);
    CHECK((J.col(col) - fd).cwiseAbs().maxCoeff() < 1e-8);
  }
  CHECK_THROWS_AS(jacobian_spherical({0.0, 0.0, 1.0, 1.0}, expo), ChartSingularity);
}

TEST_CASE("frame_transform: identity, composition, round trips") {
  const RadialProfile expo = RadialProfile::exponential();
  const SphericalPoint p{0.4, 1.2, 0.8, 1.9};
  const FrameTransform same =
      frame_transform(Frame::Spherical, Frame::Spherical, p, expo);
  CHECK((same.matrix - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
  const Matrix sp = frame_transform(Frame::Spherical, Frame::Proper, p, expo).matrix;
  const Matrix ps = frame_transform(Frame::Proper, Frame::Spherical, p, expo).matrix;
  CHECK((sp * ps - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9);
  const Matrix sc = frame_transform(Frame::Spherical, Frame::Canonical, p, expo).matrix;
  const Matrix cp = frame_transform(Frame::Canonical, Frame::Proper, p, expo).matrix;
  CHECK((cp * sc - sp).cwiseAbs().maxCoeff() < 1e-9);
  // Spherical -> canonical is exactly the chart Jacobian.
  CHECK((sc - jacobian_spherical(p, expo)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("frame_transform: spherical vectors decompose in the proper frame") {
  const RadialProfile expo = RadialProfile::exponential();
  std::mt19937 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const SphericalPoint p = random_generic_point(rng);
    const GroupPoint a = spherical_to_canonical(p, expo);
    const Matrix M = frame_transform(Frame::Spherical, Frame::Proper, p, expo).matrix;
    const Matrix J = jacobian_spherical(p, expo);
    const Matrix P = proper_frame(a);
    // P (M e_c) recovers the canonical components J e_c of each spherical
    // coordinate vector.
    CHECK((P * M - J).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("frame_transform: exponential profile first row is the eta direction") {
  const RadialProfile expo = RadialProfile::exponential();
  const SphericalPoint p{0.2, 1.3, 1.0, 0.7};
  // With R = exp(eta), the eta coordinate vector is the left-invariant
  // direction u = 1: first column of the transform is e_0.
  const Matrix M = frame_transform(Frame::Spherical, Frame::Proper, p, expo).matrix;
  Vector e0 = Vector::Zero(4);
  e0(0) = 1.0;
  CHECK((M.col(0) - e0).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("closed-form frame table: row 1 matches, scaled rows deviate") {
  const RadialProfile expo = RadialProfile::exponential();
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const SphericalPoint p = random_generic_point(rng);
    const FrameComparison cmp = compare_frame_closed_form(p, expo);
    // The theta-direction row of the table agrees with the composition.
    CHECK(cmp.abs_diff.row(1).maxCoeff() < 1e-12);
    // The azimuthal row of the table is flat (-1) where the composition
    // carries -sin^2(chi) sin^2(theta): they differ at generic points.
    const double expected_gap =
        std::abs(1.0 - std::pow(std::sin(p.chi) * std::sin(p.theta), 2));
    CHECK(cmp.abs_diff(3, 3) == doctest::Approx(expected_gap).epsilon(1e-6));
    CHECK(cmp.max_abs_diff > 0.0);
  }
  // With R = exp, eta rows agree too (R/Rdot = Rdot/R = 1).
  const SphericalPoint p{0.1, 1.0, 1.2, 0.4};
  const FrameComparison cmp = compare_frame_closed_form(p, expo);
  CHECK(cmp.abs_diff(0, 0) < 1e-12);
  // And with R = exp(2 eta) they no longer do.
  RadialProfile fast([](double e) { return std::exp(2.0 * e); },
                     [](double e) { return 2.0 * std::exp(2.0 * e); });
  fast.with_inverse([](double r) { return 0.5 * std::log(r); });
  const FrameComparison cmp2 = compare_frame_closed_form(p, fast);
  // Composition carries Rdot/R = 2; the table prints R/Rdot = 1/2.
  CHECK(cmp2.composed(0, 0) == doctest::Approx(2.0));
  CHECK(cmp2.closed_form(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("exp_quaternion: known values and the small-angle branch") {
  const GroupPoint one = exp_quaternion(Element::Zero(4));
  CHECK(one.w == 1.0);
  CHECK(one.x + one.y + one.z == 0.0);
  const GroupPoint i = exp_quaternion(elem(0, M_PI / 2, 0, 0));
  CHECK(std::abs(i.w) < 1e-15);
  CHECK(i.x == doctest::Approx(1.0));
  const GroupPoint tiny = exp_quaternion(elem(0, 1e-12, 0, 0));
  CHECK(tiny.x == doctest::Approx(1e-12).epsilon(1e-10));
  CHECK(tiny.w == doctest::Approx(1.0));
  CHECK_THROWS_AS(exp_quaternion(Element::Ones(3)), DimensionMismatch);
}

TEST_CASE("log_quaternion: inverse of exp near the identity") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> dist(-0.2, 0.2);
  for (int trial = 0; trial < 100; ++trial) {
    const Element u = elem(dist(rng), dist(rng), dist(rng), dist(rng));
    const Element back = log_quaternion(exp_quaternion(u));
    CHECK((back - u).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(log_quaternion({-1.0, 0.0, 0.0, 0.0}), OutOfDomain);
  CHECK_THROWS_AS(log_quaternion({1.0, 1.0, 0.0, 0.0}), OutOfDomain);
  const Element at_one = log_quaternion({1.0, 0.0, 0.0, 0.0});
  CHECK(at_one.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("bch: commuting directions give a vanishing residual") {
  const Element u = elem(0.3, 0.7, 0.0, 0.0);
  CHECK(bch_commutator_check(u, u, 1e-2) < 1e-12);
  CHECK(bch_commutator_check(u, 2.0 * u, 1e-2) < 1e-12);
}

TEST_CASE("bch: residual decays at third order in t") {
  const Element u = elem(0.0, 1.0, 0.0, 0.0);
  const Element v = elem(0.0, 0.0, 1.0, 0.0);
  const double r1 = bch_commutator_check(u, v, 1e-2);
  const double r2 = bch_commutator_check(u, v, 5e-3);
  const double r3 = bch_commutator_check(u, v, 2.5e-3);
  CHECK(r1 / r2 == doctest::Approx(8.0).epsilon(0.15));
  CHECK(r2 / r3 == doctest::Approx(8.0).epsilon(0.15));
  // A second, less symmetric pair.
  const Element u2 = elem(0.1, 0.5, 0.0, 0.3);
  const Element v2 = elem(0.0, 0.0, 0.8, -0.2);
  const double s1 = bch_commutator_check(u2, v2, 1e-2);
  const double s2 = bch_commutator_check(u2, v2, 5e-3);
  CHECK(s1 / s2 == doctest::Approx(8.0).epsilon(0.2));
}

TEST_CASE("bch: extrapolated t^2 coefficient recovers the commutator") {
  const Algebra q = quaternion_algebra();
  const Element u = elem(0.0, 1.0, 0.0, 0.0);
  const Element v = elem(0.0, 0.0, 1.0, 0.0);
  const Element comm = q.multiply(u, v) - q.multiply(v, u);  // 2k
  const Element est = bch_t2_coefficient(u, v, 1e-2);
  CHECK((est - comm).cwiseAbs().maxCoeff() < 1e-4);
  CHECK((est - comm).cwiseAbs().maxCoeff() < 1e-5);  // comfortably inside
  const Element u2 = elem(0.2, 0.4, -0.3, 0.1);
  const Element v2 = elem(-0.1, 0.2, 0.5, 0.6);
  const Element comm2 = q.multiply(u2, v2) - q.multiply(v2, u2);
  CHECK((bch_t2_coefficient(u2, v2, 1e-2) - comm2).cwiseAbs().maxCoeff() < 1e-4);
}

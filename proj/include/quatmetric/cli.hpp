#pragma once

#include <array>
#include <cmath>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "quatmetric/group.hpp"
#include "quatmetric/numeric.hpp"

namespace quatmetric {

// Process exit codes.
inline constexpr int kExitOk = 0;            // checks passed
inline constexpr int kExitInput = 1;         // usage or input error
inline constexpr int kExitVerification = 2;  // well-posed run, check failed

//! Everything a command run needs; defaults give a well-posed quaternion run
//! away from the chart poles.
struct RunConfig {
  std::string algebra_name = "quaternion";
  std::string algebra_file;  // overrides algebra_name when nonempty
  std::string tau_spec = "const:1";
  double domain_min = -1.0;
  double domain_max = 1.0;
  int branch = +1;
  double eta0 = 0.0;
  double r0 = 1.0;
  std::array<int, 4> grid_counts{5, 5, 5, 5};
  std::array<std::pair<double, double>, 4> grid_ranges{
      std::pair{-0.5, 0.5}, std::pair{0.4, M_PI - 0.4}, std::pair{0.4, M_PI - 0.4},
      std::pair{0.4, 2.0 * M_PI - 0.4}};
  std::vector<double> slice_etas{-0.5, 0.0, 0.5};
  int slice_points = 10;
  double fd_h = 1e-3;
  std::string out_path;  // empty: write to the provided stream
  std::string format = "json";
  Tolerance tol;
};

//! Cartesian grid over (eta, chi, theta, phi) from counts and ranges;
//! endpoints included, single-count axes use the midpoint.
std::vector<SphericalPoint> make_grid(const RunConfig& cfg);

//! Inspect an algebra: identity, associativity, commutator table.
int run_algebra(const RunConfig& cfg, std::ostream& out);
//! Solve for all symmetric contractions and classify each generator.
int run_products(const RunConfig& cfg, std::ostream& out);
//! Evaluate the spherical metric on a grid and check the closed form.
int run_flrw(const RunConfig& cfg, std::ostream& out);
//! Scalar curvature of fixed-eta spatial slices against 6/a^2.
int run_curvature(const RunConfig& cfg, std::ostream& out);

//! Full argv front end; returns a process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace quatmetric

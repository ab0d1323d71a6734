#include "quatmetric/cli.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "quatmetric/algebra.hpp"
#include "quatmetric/curvature.hpp"
#include "quatmetric/metric.hpp"
#include "quatmetric/products.hpp"

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

std::pair<double, double> parse_range(const std::string& text, const std::string& what) {
  const std::size_t pos = text.find(':');
  if (pos == std::string::npos || text.find(':', pos + 1) != std::string::npos)
    throw ParseError(what + ": expected lo:hi, got \"" + text + "\"");
  const double lo = parse_number(text.substr(0, pos), what);
  const double hi = parse_number(text.substr(pos + 1), what);
  if (!(lo < hi)) throw ParseError(what + ": range must satisfy lo < hi");
  return {lo, hi};
}

std::array<int, 4> parse_grid_counts(const std::string& text) {
  std::array<int, 4> counts{};
  std::size_t start = 0;
  for (int axis = 0; axis < 4; ++axis) {
    const std::size_t pos = text.find('x', start);
    const bool last = axis == 3;
    if (last != (pos == std::string::npos))
      throw ParseError("grid spec: expected four counts like 5x5x5x5, got \"" +
                       text + "\"");
    const std::string part =
        last ? text.substr(start) : text.substr(start, pos - start);
    int value = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (ec != std::errc() || ptr != part.data() + part.size() || value < 1)
      throw ParseError("grid spec: bad count \"" + part + "\"");
    counts[axis] = value;
    start = pos + 1;
  }
  return counts;
}

Algebra load_algebra(const RunConfig& cfg) {
  if (!cfg.algebra_file.empty()) return algebra_from_json_file(cfg.algebra_file, cfg.tol);
  auto alg = builtin_algebra(cfg.algebra_name);
  if (!alg) {
    std::string known;
    for (const auto& name : builtin_algebra_names()) known += " " + name;
    throw ParseError("unknown builtin algebra \"" + cfg.algebra_name + "\"; known:" +
                     known);
  }
  return *alg;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& fallback) {
  if (cfg.out_path.empty()) {
    fallback << text << "\n";
    return;
  }
  std::ofstream file(cfg.out_path);
  if (!file) throw Error("cannot open output file " + cfg.out_path);
  file << text << "\n";
}

nlohmann::json signature_json(const Signature& s) {
  return {{"positive", s.positive}, {"negative", s.negative}, {"zero", s.zero}};
}

nlohmann::json matrix_json(const Matrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<SphericalPoint> make_grid(const RunConfig& cfg) {
  for (int n : cfg.grid_counts)
    if (n < 1) throw ParseError("grid counts must be at least 1");
  auto lin = [](const std::pair<double, double>& range, int n, int i) {
    return n == 1 ? 0.5 * (range.first + range.second)
                  : range.first + (range.second - range.first) * i / (n - 1);
  };
  std::vector<SphericalPoint> grid;
  grid.reserve(std::size_t(cfg.grid_counts[0]) * cfg.grid_counts[1] *
               cfg.grid_counts[2] * cfg.grid_counts[3]);
  for (int i0 = 0; i0 < cfg.grid_counts[0]; ++i0)
    for (int i1 = 0; i1 < cfg.grid_counts[1]; ++i1)
      for (int i2 = 0; i2 < cfg.grid_counts[2]; ++i2)
        for (int i3 = 0; i3 < cfg.grid_counts[3]; ++i3)
          grid.push_back({lin(cfg.grid_ranges[0], cfg.grid_counts[0], i0),
                          lin(cfg.grid_ranges[1], cfg.grid_counts[1], i1),
                          lin(cfg.grid_ranges[2], cfg.grid_counts[2], i2),
                          lin(cfg.grid_ranges[3], cfg.grid_counts[3], i3)});
  return grid;
}

int run_algebra(const RunConfig& cfg, std::ostream& out) {
  const Algebra alg = load_algebra(cfg);
  nlohmann::json doc;
  doc["command"] = "algebra";
  doc["source"] = cfg.algebra_file.empty() ? cfg.algebra_name : cfg.algebra_file;
  doc["dim"] = alg.dim();
  doc["basis"] = alg.basis_labels();
  if (alg.identity()) {
    auto id = nlohmann::json::array();
    for (int i = 0; i < alg.dim(); ++i) id.push_back((*alg.identity())(i));
    doc["identity"] = id;
  } else {
    doc["identity"] = nullptr;
  }
  doc["associative"] = alg.is_associative();
  const Algebra comm = alg.commutator_algebra();
  auto entries = nlohmann::json::array();
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = 0; j < alg.dim(); ++j)
      for (int k = 0; k < alg.dim(); ++k)
        if (comm.tensor()(i, j, k) != 0.0)
          entries.push_back(
              nlohmann::json::array({i, j, k, comm.tensor()(i, j, k)}));
  doc["commutator_nonzero"] = entries;
  emit(cfg, doc.dump(2), out);
  return kExitOk;
}

int run_products(const RunConfig& cfg, std::ostream& out) {
  const Algebra alg = load_algebra(cfg);
  const CovectorSpan span = principal_space(alg, cfg.tol);
  nlohmann::json doc;
  doc["command"] = "products";
  doc["source"] = cfg.algebra_file.empty() ? cfg.algebra_name : cfg.algebra_file;
  doc["dim"] = alg.dim();
  doc["principal_space_dimension"] = span.dim;
  auto gens = nlohmann::json::array();
  for (const Vector& tau : span.generators) {
    const InnerProduct ip = contract(alg, tau, cfg.tol);
    nlohmann::json g;
    auto cov = nlohmann::json::array();
    for (int i = 0; i < tau.size(); ++i) cov.push_back(tau(i));
    g["covector"] = cov;
    g["matrix"] = matrix_json(ip.matrix);
    g["asymmetry"] = ip.asymmetry;
    g["symmetric"] = ip.symmetric_within(cfg.tol.sym_tol);
    g["signature"] = signature_json(ip.sig);
    g["classification"] = to_string(classify(ip));
    gens.push_back(g);
  }
  doc["generators"] = gens;
  emit(cfg, doc.dump(2), out);
  return kExitOk;
}

namespace {

std::string flrw_csv(const std::vector<SphericalPoint>& grid,
                     const std::vector<Matrix>& metrics) {
  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "eta,chi,theta,phi";
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) csv << ",g" << i << j;
  csv << ",scale_factor\n";
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const SphericalPoint& p = grid[idx];
    const Matrix& g = metrics[idx];
    csv << p.eta << "," << p.chi << "," << p.theta << "," << p.phi;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) csv << "," << g(i, j);
    csv << "," << std::sqrt(std::abs(g(1, 1))) << "\n";
  }
  return csv.str();
}

}  // namespace

int run_flrw(const RunConfig& cfg, std::ostream& out) {
  const TauProfile tau = TauProfile::parse(cfg.tau_spec, cfg.domain_min, cfg.domain_max);
  if (cfg.grid_ranges[0].first < tau.eta_min() ||
      cfg.grid_ranges[0].second > tau.eta_max())
    throw OutOfDomain("flrw: grid eta range exceeds the tau profile domain [" +
                      std::to_string(tau.eta_min()) + ", " +
                      std::to_string(tau.eta_max()) + "]");
  if (cfg.eta0 < tau.eta_min() || cfg.eta0 > tau.eta_max())
    throw OutOfDomain("flrw: eta0 outside the tau profile domain");
  if (cfg.r0 == 0.0) throw Error("flrw: r0 must be nonzero");
  const std::vector<SphericalPoint> grid = make_grid(cfg);
  std::vector<Matrix> metrics;
  const FlrwReport report =
      flrw_verdict(tau, grid, cfg.branch, &metrics, cfg.eta0, cfg.r0);
  if (cfg.format == "csv")
    emit(cfg, flrw_csv(grid, metrics), out);
  else
    emit(cfg, flrw_report_json(report), out);
  return report.pass ? kExitOk : kExitVerification;
}

int run_curvature(const RunConfig& cfg, std::ostream& out) {
  const TauProfile tau = TauProfile::parse(cfg.tau_spec, cfg.domain_min, cfg.domain_max);
  if (cfg.slice_points < 1) throw ParseError("curvature: slice points must be >= 1");
  if (cfg.fd_h <= 0.0) throw ParseError("curvature: step must be positive");
  // Deterministic probe angles: chi and theta sweep their ranges in opposite
  // directions, phi sweeps forward.
  std::vector<std::array<double, 3>> angles;
  const int n = cfg.slice_points;
  auto lin = [n](const std::pair<double, double>& range, int i) {
    return n == 1 ? 0.5 * (range.first + range.second)
                  : range.first + (range.second - range.first) * i / (n - 1);
  };
  for (int i = 0; i < n; ++i)
    angles.push_back({lin(cfg.grid_ranges[1], i), lin(cfg.grid_ranges[2], n - 1 - i),
                      lin(cfg.grid_ranges[3], i)});
  nlohmann::json doc;
  doc["command"] = "curvature";
  doc["tau"] = cfg.tau_spec;
  doc["h"] = cfg.fd_h;
  bool all_pass = true;
  auto slices = nlohmann::json::array();
  for (double eta : cfg.slice_etas) {
    if (eta < tau.eta_min() || eta > tau.eta_max())
      throw OutOfDomain("curvature: slice eta outside the tau profile domain");
    const SliceReport rep = spatial_slice_check(tau, eta, angles, cfg.fd_h);
    nlohmann::json s;
    s["eta"] = rep.eta;
    s["scale_factor"] = rep.scale;
    s["expected_scalar"] = rep.expected_scalar;
    s["scalar_values"] = rep.values;
    s["max_rel_deviation"] = rep.max_rel_deviation;
    s["spread"] = rep.spread;
    s["pass"] = rep.pass;
    slices.push_back(s);
    all_pass = all_pass && rep.pass;
  }
  doc["slices"] = slices;
  doc["verdict"] = all_pass ? "PASS" : "FAIL";
  emit(cfg, doc.dump(2), out);
  return all_pass ? kExitOk : kExitVerification;
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{
      "principal inner products of an algebra and the induced metrics on the "
      "group of nonzero quaternions"};
  // The finite-difference step option is spelled --h, so the help flag must
  // not claim the short name -h.
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);
  RunConfig cfg;
  std::string branch = "+";
  std::string grid_spec;
  std::string domain_spec;
  std::array<std::string, 4> range_specs;
  std::vector<double> slice_etas;

  auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print this help message and exit");
    sub->add_option("--algebra", cfg.algebra_name, "builtin algebra name");
    sub->add_option("--file", cfg.algebra_file, "algebra description JSON file");
    sub->add_option("--tau", cfg.tau_spec,
                    "tau profile: const:C | exp:K | poly:C0,C1,... | "
                    "table:eta=v,eta=v,...");
    sub->add_option("--branch", branch, "sign branch of the radial solution")
        ->check(CLI::IsMember({"+", "-"}));
    sub->add_option("--eta0", cfg.eta0, "radial profile anchor eta");
    sub->add_option("--r0", cfg.r0, "radial profile value at eta0");
    sub->add_option("--domain", domain_spec, "tau domain lo:hi (default -1:1)");
    sub->add_option("--grid", grid_spec, "grid counts NxNxNxN (default 5x5x5x5)");
    sub->add_option("--eta-range", range_specs[0], "grid eta range lo:hi");
    sub->add_option("--chi-range", range_specs[1], "grid chi range lo:hi");
    sub->add_option("--theta-range", range_specs[2], "grid theta range lo:hi");
    sub->add_option("--phi-range", range_specs[3], "grid phi range lo:hi");
    sub->add_option("--h", cfg.fd_h, "finite-difference step for curvature");
    sub->add_option("--slice-eta", slice_etas, "curvature slice eta (repeatable)");
    sub->add_option("--slice-points", cfg.slice_points,
                    "angular probes per curvature slice");
    sub->add_option("--out", cfg.out_path, "write the report to this file");
    sub->add_option("--format", cfg.format, "flrw report format")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App* cmd_algebra = app.add_subcommand(
      "algebra", "identity, associativity, and commutator table of an algebra");
  CLI::App* cmd_products = app.add_subcommand(
      "products", "covectors with symmetric contraction, classified by signature");
  CLI::App* cmd_flrw = app.add_subcommand(
      "flrw", "spherical-coordinate metric on a grid against the closed form");
  CLI::App* cmd_curvature = app.add_subcommand(
      "curvature", "spatial-slice scalar curvature against 6 over the scale "
                   "factor squared");
  for (CLI::App* sub : {cmd_algebra, cmd_products, cmd_flrw, cmd_curvature})
    add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    cfg.branch = branch == "+" ? +1 : -1;
    if (!domain_spec.empty()) {
      const auto [lo, hi] = parse_range(domain_spec, "domain");
      cfg.domain_min = lo;
      cfg.domain_max = hi;
    }
    if (!grid_spec.empty()) cfg.grid_counts = parse_grid_counts(grid_spec);
    const std::array<std::string, 4> names{"eta-range", "chi-range", "theta-range",
                                           "phi-range"};
    for (int i = 0; i < 4; ++i)
      if (!range_specs[i].empty())
        cfg.grid_ranges[i] = parse_range(range_specs[i], names[i]);
    if (!slice_etas.empty()) cfg.slice_etas = slice_etas;
    if (cmd_algebra->parsed()) return run_algebra(cfg, std::cout);
    if (cmd_products->parsed()) return run_products(cfg, std::cout);
    if (cmd_flrw->parsed()) return run_flrw(cfg, std::cout);
    if (cmd_curvature->parsed()) return run_curvature(cfg, std::cout);
    std::cerr << "error: no command given\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace quatmetric

// SPDX-License-Identifier: Apache-2.0
#include "hcsplit/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "hcsplit/errors.hpp"
#include "hcsplit/ideal.hpp"
#include "hcsplit/opnorm.hpp"
#include "hcsplit/semigroup.hpp"
#include "hcsplit/splitter.hpp"
#include "hcsplit/subspace.hpp"

namespace hcsplit {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (v.empty() || used != v.size() || !std::isfinite(out)) throw UsageError(key + ": '" + text + "' is not a number");
  return out;
}

long long parse_integer(const std::string& key, const std::string& text) {
  const std::string v = trim(text);
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (v.empty() || used != v.size()) throw UsageError(key + ": '" + text + "' is not an integer");
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::optional<double> parse_optional(const std::string& key, const std::string& value, const char* keyword) {
  const std::string v = trim(value);
  if (v == keyword) return std::nullopt;
  return parse_double(key, v);
}

std::vector<unsigned> subspace_masks(const std::string& text, int n) {
  if (text == "first-level") {
    std::vector<unsigned> masks;
    for (int i = 0; i < n; ++i) masks.push_back(1u << i);
    return masks;
  }
  std::vector<unsigned> masks;
  for (const auto& item : split_list(text.substr(6))) {
    masks.push_back(static_cast<unsigned>(parse_integer("subspace", item)));
  }
  return masks;
}

class OutputDir {
 public:
  explicit OutputDir(const std::string& path, RunResult& result) : path_(path), result_(result) {
    std::filesystem::create_directories(path_);
  }

  std::ofstream open(const std::string& name) {
    const auto full = path_ / name;
    std::ofstream out(full);
    if (!out) throw Error("cannot write " + full.string());
    result_.files.push_back(full.string());
    return out;
  }

 private:
  std::filesystem::path path_;
  RunResult& result_;
};

SplitOptions split_options(const ExperimentConfig& config) {
  SplitOptions options;
  options.operator_ascent.restarts = config.restarts;
  options.operator_ascent.seed = config.seed;
  options.node_ascent.restarts = config.node_restarts;
  options.node_ascent.seed = config.seed + 1;
  options.node_ascent.max_indicator_starts = static_cast<std::size_t>(config.node_indicator_starts);
  options.threads = config.threads;
  return options;
}

// Validates, runs, and maps library failures to exit statuses.
RunResult guarded(const ExperimentConfig& config, const std::function<void(RunResult&)>& body) {
  RunResult result;
  try {
    config.validate();
  } catch (const Error& e) {
    result.exit_code = kExitUsage;
    result.message = e.what();
    return result;
  }
  try {
    body(result);
  } catch (const UsageError& e) {
    result.exit_code = kExitUsage;
    result.message = e.what();
  } catch (const std::exception& e) {
    result.exit_code = kExitNumerical;
    result.message = e.what();
    try {
      std::filesystem::create_directories(config.output_dir);
      const auto path = std::filesystem::path(config.output_dir) / "diagnostics.txt";
      std::ofstream out(path);
      out << "error = " << e.what() << '\n';
      config.write(out);
      result.files.push_back(path.string());
    } catch (const std::exception&) {
      // The original failure is what gets reported.
    }
  }
  return result;
}

}  // namespace

// --- configuration ----------------------------------------------------------

double ExperimentConfig::resolved_s() const { return s ? *s : hypercontractive_threshold(p); }

TriangleDomain ExperimentConfig::domain() const {
  const double sv = resolved_s();
  const TriangleDomain defaults = TriangleDomain::with_defaults(sv);
  return {sv, a.value_or(defaults.a()), b.value_or(defaults.b()), t.value_or(defaults.t())};
}

void ExperimentConfig::validate() const {
  if (!(p > 1.0 && p < 2.0)) throw UsageError("p must satisfy 1 < p < 2 (got " + fmt(p) + ")");
  if (n < 1) throw UsageError("n must be >= 1 (got " + std::to_string(n) + ")");
  if (n > 10) throw UsageError("cost guard: n must be <= 10 (got " + std::to_string(n) + ")");
  const double sv = resolved_s();
  if (!(sv > 0.0)) throw UsageError("s must be > 0 (got " + fmt(sv) + ")");
  const TriangleDomain defaults = TriangleDomain::with_defaults(sv);
  const double av = a.value_or(defaults.a());
  const double bv = b.value_or(defaults.b());
  const double tv = t.value_or(defaults.t());
  if (!(av > 0.0)) throw UsageError("a must be > 0 (got " + fmt(av) + ")");
  if (!(bv > 0.0)) throw UsageError("b must be > 0 (got " + fmt(bv) + ")");
  if (!(tv > 0.0 && tv < sv + av)) {
    throw UsageError("t must satisfy 0 < t < s + a (got t = " + fmt(tv) + ", s + a = " + fmt(sv + av) + ")");
  }
  if (epsilons.empty()) throw UsageError("epsilons must not be empty");
  for (double e : epsilons) {
    if (!(e > 0.0 && e <= 1.0)) throw UsageError("every epsilon must lie in (0, 1] (got " + fmt(e) + ")");
  }
  if (!(sweep_epsilon > 0.0 && sweep_epsilon <= 1.0)) {
    throw UsageError("sweep_epsilon must lie in (0, 1] (got " + fmt(sweep_epsilon) + ")");
  }
  if (nodes_per_edge < 4) throw UsageError("nodes_per_edge must be >= 4 (got " + std::to_string(nodes_per_edge) + ")");
  if (n_range.empty()) throw UsageError("n_range must not be empty");
  for (int k : n_range) {
    if (k < 1) throw UsageError("n_range entries must be >= 1 (got " + std::to_string(k) + ")");
    if (k > 10) throw UsageError("cost guard: n_range entries must be <= 10 (got " + std::to_string(k) + ")");
  }
  if (restarts < 0 || node_restarts < 0) throw UsageError("restarts must be >= 0");
  if (node_indicator_starts < 0) throw UsageError("node_indicator_starts must be >= 0");
  if (subspace != "first-level") {
    if (subspace.rfind("walsh:", 0) != 0) {
      throw UsageError("subspace must be 'first-level' or 'walsh:m1,m2,...' (got '" + subspace + "')");
    }
    const int smallest = *std::min_element(n_range.begin(), n_range.end());
    const auto masks = subspace_masks(subspace, smallest);
    if (masks.empty()) throw UsageError("subspace: walsh list is empty");
    for (unsigned m : masks) {
      if (m >= (1u << smallest)) {
        throw UsageError("subspace: mask " + std::to_string(m) + " needs more than n = " + std::to_string(smallest) +
                         " variables");
      }
    }
  }
}

void ExperimentConfig::write(std::ostream& out) const {
  auto list = [](const auto& values) {
    std::string s;
    for (const auto& v : values) s += (s.empty() ? "" : ",") + fmt(static_cast<double>(v));
    return s;
  };
  out << "p = " << fmt(p) << '\n';
  out << "n = " << n << '\n';
  out << "s = " << (s ? fmt(*s) : std::string("auto")) << '\n';
  out << "a = " << (a ? fmt(*a) : std::string("default")) << '\n';
  out << "b = " << (b ? fmt(*b) : std::string("default")) << '\n';
  out << "t = " << (t ? fmt(*t) : std::string("default")) << '\n';
  out << "epsilons = " << list(epsilons) << '\n';
  out << "nodes_per_edge = " << nodes_per_edge << '\n';
  out << "seed = " << seed << '\n';
  out << "output_dir = " << output_dir << '\n';
  out << "n_range = " << list(n_range) << '\n';
  out << "sweep_epsilon = " << fmt(sweep_epsilon) << '\n';
  out << "subspace = " << subspace << '\n';
  out << "restarts = " << restarts << '\n';
  out << "node_restarts = " << node_restarts << '\n';
  out << "node_indicator_starts = " << node_indicator_starts << '\n';
  out << "threads = " << threads << '\n';
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split_list(text)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(static_cast<int>(parse_integer("list", item)));
      continue;
    }
    const auto lo = parse_integer("range", item.substr(0, dots));
    const auto hi = parse_integer("range", item.substr(dots + 2));
    if (hi < lo) throw UsageError("range '" + item + "' is empty");
    for (auto k = lo; k <= hi; ++k) out.push_back(static_cast<int>(k));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_double("list", item));
  return out;
}

void apply_setting(ExperimentConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw UsageError("setting '" + assignment + "' is not of the form key=value");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  if (key == "p") {
    config.p = parse_double(key, value);
  } else if (key == "n") {
    config.n = static_cast<int>(parse_integer(key, value));
  } else if (key == "s") {
    config.s = parse_optional(key, value, "auto");
  } else if (key == "a") {
    config.a = parse_optional(key, value, "default");
  } else if (key == "b") {
    config.b = parse_optional(key, value, "default");
  } else if (key == "t") {
    config.t = parse_optional(key, value, "default");
  } else if (key == "epsilons" || key == "epsilon") {
    config.epsilons = parse_double_list(value);
  } else if (key == "nodes_per_edge") {
    config.nodes_per_edge = static_cast<int>(parse_integer(key, value));
  } else if (key == "seed") {
    config.seed = static_cast<std::uint64_t>(parse_integer(key, value));
  } else if (key == "output_dir") {
    if (value.empty()) throw UsageError("output_dir must not be empty");
    config.output_dir = value;
  } else if (key == "n_range") {
    config.n_range = parse_int_list(value);
  } else if (key == "sweep_epsilon") {
    config.sweep_epsilon = parse_double(key, value);
  } else if (key == "subspace") {
    config.subspace = value;
  } else if (key == "restarts") {
    config.restarts = static_cast<int>(parse_integer(key, value));
  } else if (key == "node_restarts") {
    config.node_restarts = static_cast<int>(parse_integer(key, value));
  } else if (key == "node_indicator_starts") {
    config.node_indicator_starts = static_cast<int>(parse_integer(key, value));
  } else if (key == "threads") {
    config.threads = static_cast<unsigned>(parse_integer(key, value));
  } else {
    throw UsageError("unknown configuration key '" + key + "'");
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  ExperimentConfig config;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      apply_setting(config, line);
    } catch (const UsageError& e) {
      throw UsageError(path + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return config;
}

std::string epsilon_label(double epsilon) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", epsilon);
  return buf;
}

// --- runs -------------------------------------------------------------------

RunResult run_split_experiment(const ExperimentConfig& config) {
  return guarded(config, [&](RunResult& result) {
    const TriangleDomain domain = config.domain();
    const HarmonicMeasure measure = harmonic_measure(domain, config.nodes_per_edge);
    const CubeNoiseSemigroup cube(config.n);
    const SplitOptions options = split_options(config);

    OutputDir dir(config.output_dir, result);
    {
      auto out = dir.open("nodes.txt");
      write_node_table(out, measure);
    }
    const NodeNormTable table =
        node_norms(cube, measure, lp_split_norms(config.p, options.node_ascent), options.threads);
    const SplitNorms norms = lp_split_norms(config.p, options.operator_ascent);

    auto csv = dir.open("results.csv");
    csv << "epsilon,theta,recon_error,norm_T0_pp,C0,norm_T1_p2,C1,exponent,slope_fit,bound_T0_ok,bound_T1_ok\n";
    std::vector<double> xs;
    std::vector<double> ys;
    bool all_ok = true;
    for (double epsilon : config.epsilons) {
      const SplitCertificate cert = split_with(cube, measure, epsilon, norms, table, options, config.p);
      xs.push_back(std::log(epsilon));
      ys.push_back(std::log(cert.norm_T1_p2));
      std::string slope = "nan";
      if (std::any_of(xs.begin(), xs.end(), [&](double x) { return x != xs.front(); })) {
        slope = fmt(slope_fit(xs, ys));
      }
      all_ok = all_ok && cert.bound_T0_ok && cert.bound_T1_ok;
      csv << fmt(epsilon) << ',' << fmt(cert.theta) << ',' << fmt(cert.recon_error_pp) << ',' << fmt(cert.norm_T0_pp)
          << ',' << fmt(cert.C0_measured) << ',' << fmt(cert.norm_T1_p2) << ',' << fmt(cert.C1_measured) << ','
          << fmt(cert.exponent) << ',' << slope << ',' << (cert.bound_T0_ok ? "true" : "false") << ','
          << (cert.bound_T1_ok ? "true" : "false") << '\n';

      auto doc = dir.open("certificate_" + epsilon_label(epsilon) + ".txt");
      doc << "n = " << config.n << '\n';
      doc << "s = " << fmt(domain.s()) << '\n';
      doc << "a = " << fmt(domain.a()) << '\n';
      doc << "b = " << fmt(domain.b()) << '\n';
      doc << "t = " << fmt(domain.t()) << '\n';
      doc << "nodes_per_edge = " << config.nodes_per_edge << '\n';
      write_certificate(doc, cert);
    }
    result.exit_code = all_ok ? kExitOk : kExitInequalityFailed;
    result.message = all_ok ? "all bounds hold" : "some bound failed";
  });
}

RunResult run_dimension_sweep(const ExperimentConfig& config) {
  return guarded(config, [&](RunResult& result) {
    const HarmonicMeasure measure = harmonic_measure(config.domain(), config.nodes_per_edge);
    const auto rows = dimension_sweep(measure, config.p, config.sweep_epsilon, config.n_range, split_options(config));

    OutputDir dir(config.output_dir, result);
    auto csv = dir.open("dimsweep.csv");
    csv << "n,theta,C0,C1,norm_T0_pp,norm_T1_p2,norm_T0_over_eps\n";
    std::vector<double> c1;
    std::vector<double> t0;
    double theta_spread = 0.0;
    for (const auto& r : rows) {
      csv << r.n << ',' << fmt(r.theta) << ',' << fmt(r.C0_measured) << ',' << fmt(r.C1_measured) << ','
          << fmt(r.norm_T0_pp) << ',' << fmt(r.norm_T1_p2) << ',' << fmt(r.norm_T0_pp / config.sweep_epsilon) << '\n';
      c1.push_back(r.C1_measured);
      t0.push_back(r.norm_T0_pp / config.sweep_epsilon);
      theta_spread = std::max(theta_spread, std::abs(r.theta - rows.front().theta));
    }
    const double c1_factor = variation_factor(c1);
    const double t0_factor = variation_factor(t0);
    const bool ok = c1_factor <= 1.5 && t0_factor <= 2.0 && theta_spread <= 1e-12;
    auto summary = dir.open("dimsweep_summary.txt");
    summary << "epsilon = " << fmt(config.sweep_epsilon) << '\n';
    summary << "C1_variation_factor = " << fmt(c1_factor) << '\n';
    summary << "norm_T0_over_eps_variation_factor = " << fmt(t0_factor) << '\n';
    summary << "theta_spread = " << fmt(theta_spread) << '\n';
    summary << "stable = " << (ok ? "true" : "false") << '\n';
    result.exit_code = ok ? kExitOk : kExitInequalityFailed;
    result.message = "C1 factor " + fmt(c1_factor) + ", ||T0||/eps factor " + fmt(t0_factor);
  });
}

RunResult run_corollary_demo(const ExperimentConfig& config) {
  return guarded(config, [&](RunResult& result) {
    const double t = config.domain().t();
    struct Row {
      int n;
      Subspace x;
      Projection proj;
    };
    std::vector<Row> rows;
    for (int n : config.n_range) {
      const CubeNoiseSemigroup cube(n);
      Subspace x = Subspace::walsh_span(n, subspace_masks(config.subspace, n));
      Projection proj = build_projection(cube.evaluate(t), x, config.p);
      rows.push_back({n, std::move(x), std::move(proj)});
    }

    OutputDir dir(config.output_dir, result);
    auto csv = dir.open("corollary.csv");
    csv << "n,dim,gram_condition,image_gram_condition,lower_bound,upper_bound,norm_pp,idempotence_residual,"
           "fix_residual\n";
    std::vector<double> norms;
    bool ok = true;
    for (const auto& r : rows) {
      csv << r.n << ',' << r.x.dim() << ',' << fmt(r.x.gram_condition()) << ',' << fmt(r.proj.image_gram_condition)
          << ',' << fmt(r.proj.bounds.lower_bound) << ',' << fmt(r.proj.bounds.upper_bound) << ','
          << fmt(r.proj.norm_pp) << ',' << fmt(r.proj.idempotence_residual) << ',' << fmt(r.proj.fix_residual)
          << '\n';
      norms.push_back(r.proj.norm_pp);
      ok = ok && r.proj.idempotence_residual <= 1e-9 && r.proj.fix_residual <= 1e-9;
    }
    const double factor = variation_factor(norms);
    ok = ok && factor <= 1.5;
    auto summary = dir.open("corollary_summary.txt");
    summary << "p = " << fmt(config.p) << '\n';
    summary << "t = " << fmt(t) << '\n';
    summary << "subspace = " << config.subspace << '\n';
    summary << "norm_variation_factor = " << fmt(factor) << '\n';
    summary << "ok = " << (ok ? "true" : "false") << '\n';
    result.exit_code = ok ? kExitOk : kExitInequalityFailed;
    result.message = "projection norm factor " + fmt(factor);
  });
}

RunResult run_checks(const ExperimentConfig& config) {
  return guarded(config, [&](RunResult& result) {
    struct Line {
      std::string name;
      bool ok;
      std::string detail;
    };
    std::vector<Line> lines;
    auto check = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
      try {
        auto [ok, detail] = body();
        lines.push_back({name, ok, detail});
      } catch (const Error& e) {
        lines.push_back({name, false, std::string("error: ") + e.what()});
      }
    };
    std::mt19937_64 engine(config.seed);
    std::normal_distribution<double> normal;
    auto random_matrix = [&](const SpacePtr& space) {
      const auto n = static_cast<Eigen::Index>(space->size());
      MatrixXc m(n, n);
      for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) m(i, j) = Complex(normal(engine), normal(engine));
      }
      return OperatorMatrix(space, space, std::move(m));
    };
    const double p = config.p;

    check("lp_norm monotone in p", [&] {
      const auto space = make_space({0.1, 0.2, 0.3, 0.4});
      bool ok = true;
      for (int k = 0; k < 50; ++k) {
        VectorXc v(4);
        for (auto& c : v) c = Complex(normal(engine), normal(engine));
        double prev = 0.0;
        for (double q : {1.0, 1.25, 1.5, 2.0, 3.0, 8.0}) {
          const double cur = lp_norm(v, space->weights(), q);
          ok = ok && cur >= prev * (1.0 - 1e-14);
          prev = cur;
        }
      }
      return std::pair{ok, std::string("50 random functions")};
    });
    check("walsh round trip", [&] {
      const auto space = FiniteProbabilitySpace::uniform(32);
      VectorXc v(32);
      for (auto& c : v) c = Complex(normal(engine), normal(engine));
      const FunctionVector f(space, v);
      const double err = (inverse_walsh_transform(walsh_transform(f)).values() - v).cwiseAbs().maxCoeff();
      return std::pair{err <= 1e-12, "max error " + fmt(err)};
    });
    check("cube semigroup property", [&] {
      const double dev = semigroup_property_check(CubeNoiseSemigroup(3), 0.3, Complex(0.2, 0.1));
      return std::pair{dev <= 1e-12, "deviation " + fmt(dev)};
    });
    check("hypercontractive threshold", [&] {
      const auto report = hypercontractive_time(p, CubeNoiseSemigroup(std::min(config.n, 3)));
      return std::pair{report.ok(), "||T(s*)|| = " + fmt(report.norm_at_threshold) +
                                        ", ||T(0.9 s*)|| = " + fmt(report.norm_below_threshold)};
    });
    check("opnorm_lower vs oracle", [&] {
      const auto space = make_space({0.2, 0.3, 0.5});
      double worst = 0.0;
      for (int k = 0; k < 10; ++k) {
        const OperatorMatrix a = random_matrix(space);
        const double lower = opnorm_lower(a, p, 2.0).value;
        const double oracle = opnorm_oracle(a, p, 2.0);
        worst = std::max(worst, std::abs(lower - oracle) / oracle);
      }
      return std::pair{worst <= 1e-3, "worst relative gap " + fmt(worst)};
    });

    const TriangleDomain domain = config.domain();
    const HarmonicMeasure measure = harmonic_measure(domain, config.nodes_per_edge);
    check("harmonic measure mass and mean value", [&] {
      double worst = std::abs(measure.total_mass() - 1.0);
      const double t = domain.t();
      const std::vector<std::pair<std::function<Complex(Complex)>, Complex>> tests = {
          {[](Complex z) { return z; }, t},
          {[](Complex z) { return z * z; }, t * t},
          {[](Complex z) { return std::exp(0.5 * z); }, std::exp(0.5 * t)}};
      for (const auto& [f, expected] : tests) worst = std::max(worst, std::abs(measure.integrate(f) - expected));
      return std::pair{worst <= 1e-7, "worst error " + fmt(worst)};
    });
    check("damping function moduli", [&] {
      double worst = std::abs(psi(domain, measure, 1e-2, domain.t()) - 1.0);
      const double theta = measure.theta();
      for (const auto& node : measure.nodes()) {
        const double m = std::abs(psi(measure, 1e-2, node));
        const double target =
            node.point.part == BoundaryPart::V0 ? 1e-2 : std::pow(1e-2, (theta - 1.0) / theta);
        worst = std::max(worst, std::abs(m - target) / target);
      }
      return std::pair{worst <= 1e-6, "worst relative error " + fmt(worst)};
    });
    check("split reconstruction at epsilon = 1", [&] {
      const CubeNoiseSemigroup cube(std::min(config.n, 3));
      const SplitCertificate cert = split(cube, measure, p, 1.0, split_options(config));
      return std::pair{cert.recon_error_pp <= 1e-7 && cert.bound_T0_ok && cert.bound_T1_ok,
                       "recon error " + fmt(cert.recon_error_pp)};
    });
    check("ideal compatibility", [&] {
      const auto space = FiniteProbabilitySpace::uniform(4);
      const auto pairs = random_operator_pairs(space, 20, config.seed);
      const auto g2 = compatibility_check(make_gamma2(p), lp_operator_norm(p), pairs);
      const auto hs = compatibility_check(make_schatten_like(SchattenKind::HilbertSchmidt), spectral_norm, pairs);
      const auto tr = compatibility_check(make_schatten_like(SchattenKind::TraceNorm), spectral_norm, pairs);
      return std::pair{g2.ok() && hs.ok() && tr.ok(), "measured C: " + fmt(g2.measured_C) + ", " +
                                                          fmt(hs.measured_C) + ", " + fmt(tr.measured_C)};
    });
    check("first-level projection", [&] {
      const int n = std::min(config.n, 4);
      const Projection proj =
          build_projection(CubeNoiseSemigroup(n).evaluate(domain.t()), Subspace::first_level(n), p);
      return std::pair{proj.idempotence_residual <= 1e-9 && proj.fix_residual <= 1e-9,
                       "||P^2 - P|| = " + fmt(proj.idempotence_residual) + ", ||P||_pp = " + fmt(proj.norm_pp)};
    });

    OutputDir dir(config.output_dir, result);
    auto out = dir.open("checks.txt");
    bool all = true;
    for (const auto& l : lines) {
      out << (l.ok ? "PASS " : "FAIL ") << l.name << ": " << l.detail << '\n';
      all = all && l.ok;
    }
    result.exit_code = all ? kExitOk : kExitInequalityFailed;
    result.message = all ? "all checks pass" : "some check failed";
  });
}

}  // namespace hcsplit

// SPDX-License-Identifier: Apache-2.0
#include "hcsplit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "hcsplit/errors.hpp"
#include "hcsplit/quadrature.hpp"

namespace hcsplit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI(0.0, 1.0);

// Prevertex chords are used within this distance; farther points are
// integrated radially from the disk center.
constexpr double kAnchorRadius = 0.6;

double cross(Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); }

std::string describe(Complex z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

double wrap_positive(double angle) {
  double r = std::fmod(angle, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  return r;
}

}  // namespace

const char* to_string(BoundaryPart part) { return part == BoundaryPart::V1 ? "V1" : "V0"; }

// --- TriangleDomain ---------------------------------------------------------

TriangleDomain::TriangleDomain(double s, double a, double b, double t) : s_(s), a_(a), b_(b), t_(t) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(s) || !positive(a) || !positive(b)) throw DomainError("triangle needs s, a, b > 0");
  if (!(t > 0.0 && t < s + a)) {
    throw DomainError("interior point must satisfy 0 < t < s + a (t = " + std::to_string(t) +
                      ", s + a = " + std::to_string(s + a) + ")");
  }
  const double apex = s + a;
  vertices_ = {Complex(0.0, 0.0), Complex(apex, -b), Complex(apex, b)};
  const double opening = 2.0 * std::atan2(b, apex);
  angles_ = {opening, 0.5 * (kPi - opening), 0.5 * (kPi - opening)};
}

TriangleDomain TriangleDomain::with_defaults(double s) { return {s, 0.125 * s, 0.75 * s, 0.95 * s}; }

bool TriangleDomain::contains(Complex z, double tolerance) const {
  for (int e = 0; e < 3; ++e) {
    const Complex p = vertices_[static_cast<std::size_t>(e)];
    const Complex q = vertices_[static_cast<std::size_t>((e + 1) % 3)];
    // Signed distance to the edge line; interior is on the left.
    if (cross(q - p, z - p) / std::abs(q - p) < -tolerance) return false;
  }
  return true;
}

BoundaryPoint TriangleDomain::boundary_point(int edge, double parameter) const {
  if (edge < 0 || edge > 2) throw DomainError("edge index must be 0, 1 or 2");
  if (!(parameter >= 0.0 && parameter <= 1.0)) throw DomainError("edge parameter must lie in [0, 1]");
  const Complex p = vertices_[static_cast<std::size_t>(edge)];
  const Complex q = vertices_[static_cast<std::size_t>((edge + 1) % 3)];
  return {p + parameter * (q - p), edge == 1 ? BoundaryPart::V1 : BoundaryPart::V0, edge, parameter};
}

std::optional<BoundaryPoint> TriangleDomain::locate_on_boundary(Complex z, double tolerance) const {
  std::optional<BoundaryPoint> best;
  double best_distance = tolerance;
  for (int e = 0; e < 3; ++e) {
    const Complex p = vertices_[static_cast<std::size_t>(e)];
    const Complex q = vertices_[static_cast<std::size_t>((e + 1) % 3)];
    const double len2 = std::norm(q - p);
    const double u = std::clamp(((z - p) * std::conj(q - p)).real() / len2, 0.0, 1.0);
    const double d = std::abs(z - (p + u * (q - p)));
    if (d <= best_distance) {
      best_distance = d;
      best = BoundaryPoint{z, e == 1 ? BoundaryPart::V1 : BoundaryPart::V0, e, u};
    }
  }
  return best;
}

bool TriangleDomain::contains_shifted_k() const {
  const double slack = 1e-12 * apex();
  return contains(Complex(s_, 0.0), slack) && contains(Complex(s_ + a_, b_), slack) &&
         contains(Complex(s_ + a_, -b_), slack);
}

// --- ConformalMap -----------------------------------------------------------

ConformalMap::ConformalMap(const TriangleDomain& domain) : domain_(domain) {
  prevertices_ = {Complex(-1.0, 0.0), std::polar(1.0, -kPi / 3.0), std::polar(1.0, kPi / 3.0)};
  for (std::size_t k = 0; k < 3; ++k) exponents_[k] = domain_.interior_angles()[k] / kPi - 1.0;

  // Integrals from 0 to each prevertex along the radius, with r = 1 - v^m
  // cancelling the (1 - r)^beta endpoint factor exactly.
  for (std::size_t k = 0; k < 3; ++k) {
    const Complex zk = prevertices_[k];
    const double m = 1.0 / (1.0 + exponents_[k]);
    auto integrand = [&, zk, m](double v) {
      const double r = 1.0 - std::pow(v, m);
      Complex acc = 1.0;
      for (std::size_t j = 0; j < 3; ++j) {
        if (j == k) continue;
        acc *= std::pow(1.0 - zk * r / prevertices_[j], exponents_[j]);
      }
      return acc;
    };
    prevertex_integrals_[k] = zk * m * integrate_adaptive(integrand, 0.0, 1.0, 1e-15);
  }

  const auto& w = domain_.vertices();
  scale_ = (w[1] - w[0]) / (prevertex_integrals_[1] - prevertex_integrals_[0]);
  offset_ = w[0] - scale_ * prevertex_integrals_[0];
  closure_error_ = std::abs(offset_ + scale_ * prevertex_integrals_[2] - w[2]);

  // Seed table for Newton: radii graded toward the circle, angles offset so
  // that no entry sits on a prevertex.
  const double radii[] = {0.0, 0.25, 0.45, 0.6, 0.72, 0.82, 0.89, 0.94, 0.97, 0.985, 0.993, 0.997, 1.0};
  constexpr int kAngles = 96;
  for (double r : radii) {
    for (int j = 0; j < (r == 0.0 ? 1 : kAngles); ++j) {
      const Complex node = std::polar(r, 2.0 * kPi * (j + 0.5) / kAngles);
      guess_table_.emplace_back(node, sc_forward(node));
    }
  }

  center_preimage_ = 0.0;
  rotation_ = 1.0;
  center_preimage_ = sc_inverse(Complex(domain_.t(), 0.0));
  const Complex slope = sc_derivative(center_preimage_);
  rotation_ = slope / std::abs(slope);

  for (std::size_t k = 0; k < 3; ++k) vertex_angles_[k] = std::arg(normalize(prevertices_[k]));
  theta_ = wrap_positive(vertex_angles_[2] - vertex_angles_[1]) / (2.0 * kPi);
}

Complex ConformalMap::sc_derivative(Complex w) const {
  Complex acc = scale_;
  for (std::size_t k = 0; k < 3; ++k) acc *= std::pow(1.0 - w / prevertices_[k], exponents_[k]);
  return acc;
}

Complex ConformalMap::integral_from_anchor(Complex w, int anchor) const {
  if (anchor < 0) {
    auto integrand = [&](double r) {
      Complex acc = w;
      for (std::size_t j = 0; j < 3; ++j) acc *= std::pow(1.0 - w * r / prevertices_[j], exponents_[j]);
      return acc;
    };
    return integrate_adaptive(integrand, 0.0, 1.0, 1e-15 * std::max(1.0, std::abs(w)));
  }
  const auto k = static_cast<std::size_t>(anchor);
  const Complex zk = prevertices_[k];
  const Complex d = w - zk;
  if (d == 0.0) return prevertex_integrals_[k];
  const double m = 1.0 / (1.0 + exponents_[k]);
  // u = z_k + d v^m turns (1 - u/z_k)^beta du into a constant times dv.
  const Complex lead = d * m * std::pow(1.0 - w / zk, exponents_[k]);
  auto integrand = [&](double v) {
    const Complex u = zk + d * std::pow(v, m);
    Complex acc = 1.0;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j == k) continue;
      acc *= std::pow(1.0 - u / prevertices_[j], exponents_[j]);
    }
    return acc;
  };
  return prevertex_integrals_[k] + lead * integrate_adaptive(integrand, 0.0, 1.0, 1e-15);
}

Complex ConformalMap::sc_forward(Complex w) const {
  int anchor = -1;
  double nearest = kAnchorRadius;
  for (int k = 0; k < 3; ++k) {
    const double d = std::abs(w - prevertices_[static_cast<std::size_t>(k)]);
    if (d < nearest) {
      nearest = d;
      anchor = k;
    }
  }
  return offset_ + scale_ * integral_from_anchor(w, anchor);
}

Complex ConformalMap::initial_guess(Complex z, Complex& image) const {
  std::size_t best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < guess_table_.size(); ++i) {
    const double d = std::abs(guess_table_[i].second - z);
    if (d < best_distance) {
      best_distance = d;
      best = i;
    }
  }
  image = guess_table_[best].second;
  return guess_table_[best].first;
}

Complex ConformalMap::sc_inverse(Complex z) const {
  const auto& vertices = domain_.vertices();
  const double size = std::abs(vertices[2]);
  if (!domain_.contains(z, 1e-12 * size)) throw DomainError("point " + describe(z) + " lies outside the triangle");
  for (std::size_t k = 0; k < 3; ++k) {
    if (std::abs(z - vertices[k]) <= 1e-14 * size) return prevertices_[k];
  }
  const double tolerance = 2e-14 * size;

  auto newton = [&](Complex& w, Complex target) {
    Complex residual = sc_forward(w) - target;
    for (int it = 0; it < 60; ++it) {
      if (std::abs(residual) <= tolerance) return true;
      const Complex step = residual / sc_derivative(w);
      double lambda = 1.0;
      bool accepted = false;
      while (lambda > 1e-8) {
        const Complex trial = w - lambda * step;
        if (std::abs(trial) <= 1.0 + 1e-9) {
          const Complex trial_residual = sc_forward(trial) - target;
          if (std::abs(trial_residual) < std::abs(residual)) {
            w = trial;
            residual = trial_residual;
            accepted = true;
            break;
          }
        }
        lambda *= 0.5;
      }
      if (!accepted) return std::abs(residual) <= 100.0 * tolerance;
    }
    return std::abs(residual) <= 100.0 * tolerance;
  };

  Complex image;
  const Complex seed = initial_guess(z, image);
  for (int pieces = 1; pieces <= 256; pieces *= 4) {
    Complex w = seed;
    bool ok = true;
    for (int j = 1; j <= pieces && ok; ++j) {
      ok = newton(w, image + (z - image) * (static_cast<double>(j) / pieces));
    }
    if (ok) {
      // Boundary targets land on the circle up to rounding; keep them inside.
      if (std::abs(w) > 1.0) w /= std::abs(w);
      return w;
    }
  }
  throw NumericalError("Schwarz-Christoffel inversion did not converge at z = " + describe(z));
}

Complex ConformalMap::normalize(Complex w) const {
  return rotation_ * (w - center_preimage_) / (1.0 - std::conj(center_preimage_) * w);
}

Complex ConformalMap::denormalize(Complex zeta) const {
  const Complex u = zeta / rotation_;
  return (u + center_preimage_) / (1.0 + std::conj(center_preimage_) * u);
}

Complex ConformalMap::normalize_derivative(Complex w) const {
  const Complex den = 1.0 - std::conj(center_preimage_) * w;
  return rotation_ * (1.0 - std::norm(center_preimage_)) / (den * den);
}

Complex ConformalMap::to_disk(Complex z) const { return normalize(sc_inverse(z)); }

Complex ConformalMap::from_disk(Complex zeta) const {
  if (std::abs(zeta) > 1.0 + 1e-12) throw DomainError("point " + describe(zeta) + " lies outside the unit disk");
  return sc_forward(denormalize(zeta));
}

Complex ConformalMap::derivative(Complex z) const {
  const auto& vertices = domain_.vertices();
  for (const auto& v : vertices) {
    if (std::abs(z - v) <= 1e-12 * std::abs(vertices[2])) throw DomainError("conformal map derivative undefined at a vertex");
  }
  const Complex w = sc_inverse(z);
  return normalize_derivative(w) / sc_derivative(w);
}

// --- HarmonicMeasure --------------------------------------------------------

HarmonicMeasure::HarmonicMeasure(std::shared_ptr<const ConformalMap> map, std::vector<QuadratureNode> nodes)
    : map_(std::move(map)), nodes_(std::move(nodes)) {
  const double theta = map_->theta();
  const Complex at_t = map_->to_disk(Complex(map_->domain().t(), 0.0));
  strip_offset_ = chi_theta_inverse(theta, std::polar(1.0, kPi * theta) * at_t).imag();
}

double HarmonicMeasure::density(const BoundaryPoint& point) const {
  return std::abs(map_->derivative(point.z)) / (2.0 * kPi);
}

double HarmonicMeasure::total_mass() const {
  double acc = 0.0;
  for (const auto& node : nodes_) acc += node.weight;
  return acc;
}

double HarmonicMeasure::mass(BoundaryPart part) const {
  double acc = 0.0;
  for (const auto& node : nodes_) {
    if (node.point.part == part) acc += node.weight;
  }
  return acc;
}

HarmonicMeasure harmonic_measure(const TriangleDomain& domain, int nodes_per_edge) {
  HarmonicMeasureOptions options;
  options.nodes_per_edge = nodes_per_edge;
  return harmonic_measure(domain, options);
}

HarmonicMeasure harmonic_measure(const TriangleDomain& domain, const HarmonicMeasureOptions& options) {
  if (options.nodes_per_edge < 4) throw DomainError("harmonic measure needs at least 4 nodes per edge");
  auto map = std::make_shared<const ConformalMap>(domain);
  const QuadratureRule v0_rule = graded_gauss_legendre(options.nodes_per_edge, options.grading);
  const QuadratureRule v1_rule = graded_gauss_legendre(options.nodes_per_edge, options.v1_grading);
  const auto& vertices = domain.vertices();

  std::vector<QuadratureNode> nodes;
  nodes.reserve(3 * v0_rule.size());
  for (int edge = 0; edge < 3; ++edge) {
    const QuadratureRule& rule = edge == 1 ? v1_rule : v0_rule;
    const double start = map->vertex_angle(edge);
    const double arc = wrap_positive(map->vertex_angle((edge + 1) % 3) - start);
    const Complex p = vertices[static_cast<std::size_t>(edge)];
    const Complex q = vertices[static_cast<std::size_t>((edge + 1) % 3)];
    for (std::size_t i = 0; i < rule.size(); ++i) {
      QuadratureNode node;
      node.arc_from_start = arc * rule.nodes[i];
      node.arc_to_end = arc * rule.complements[i];
      node.arc_angle = start + node.arc_from_start;
      node.disk = std::polar(1.0, node.arc_angle);
      node.weight = arc / (2.0 * kPi) * rule.weights[i];
      const Complex z = map->sc_forward(map->denormalize(node.disk));
      // Snapped onto the edge; the SC integral leaves it up to ~1e-8 off.
      const double u = std::clamp(((z - p) * std::conj(q - p)).real() / std::norm(q - p), 0.0, 1.0);
      node.point = BoundaryPoint{p + u * (q - p), edge == 1 ? BoundaryPart::V1 : BoundaryPart::V0, edge, u};
      nodes.push_back(node);
    }
  }
  return HarmonicMeasure(std::move(map), std::move(nodes));
}

// --- strip and damping ------------------------------------------------------

Complex chi_theta(double theta, Complex z) {
  const Complex e = std::exp(kI * kPi * z);
  return (e - std::exp(kI * kPi * theta)) / (e - std::exp(-kI * kPi * theta));
}

Complex chi_theta_inverse(double theta, Complex zeta) {
  const Complex den = 1.0 - zeta;
  if (std::abs(den) == 0.0) throw DomainError("chi_theta^{-1} is unbounded at zeta = 1");
  const Complex e = (std::exp(kI * kPi * theta) - zeta * std::exp(-kI * kPi * theta)) / den;
  // For strip points e^{i pi w} lies in the closed upper half-plane; take the
  // argument in [-pi/2, 3pi/2) so negative reals give Re w = 1.
  double arg = std::arg(e);
  if (arg < -0.5 * kPi) arg += 2.0 * kPi;
  return Complex(arg / kPi, -std::log(std::abs(e)) / kPi);
}

namespace {

StripCoordinate strip_from_disk(const HarmonicMeasure& measure, Complex disk) {
  const double theta = measure.theta();
  Complex w = chi_theta_inverse(theta, std::polar(1.0, kPi * theta) * disk);
  w -= kI * measure.strip_offset();
  return {Complex(std::clamp(w.real(), 0.0, 1.0), w.imag())};
}

}  // namespace

StripCoordinate strip_coordinate(const TriangleDomain& domain, const HarmonicMeasure& measure, Complex z) {
  const auto& vertices = domain.vertices();
  const double size = std::abs(vertices[2]);
  if (std::abs(z - vertices[1]) <= 1e-12 * size || std::abs(z - vertices[2]) <= 1e-12 * size) {
    throw DomainError("strip coordinate is unbounded at the V0/V1 corners");
  }
  return strip_from_disk(measure, measure.map().to_disk(z));
}

StripCoordinate strip_coordinate(const HarmonicMeasure& measure, const QuadratureNode& node) {
  // On the circle e^{i pi w} is real: with alpha the arc from the image of
  // s+a-ib and beta = alpha - 2 pi theta it equals sin(beta/2) / sin(alpha/2),
  // negative exactly on V1.
  const double theta = measure.theta();
  double num = 0.0;
  double den = 0.0;
  switch (node.point.edge) {
    case 0:
      num = std::sin(kPi * (1.0 - theta) - 0.5 * node.arc_to_end);
      den = std::sin(0.5 * node.arc_to_end);
      break;
    case 1:
      num = -std::sin(0.5 * node.arc_to_end);
      den = std::sin(0.5 * node.arc_from_start);
      break;
    default:
      num = std::sin(0.5 * node.arc_from_start);
      den = std::sin(kPi * theta + 0.5 * node.arc_from_start);
      break;
  }
  if (!(den != 0.0 && num != 0.0)) throw DomainError("quadrature node sits on a V0/V1 corner");
  const double e = num / den;
  return {Complex(e < 0.0 ? 1.0 : 0.0, -std::log(std::abs(e)) / kPi - measure.strip_offset())};
}

Complex xi(double theta, double epsilon, Complex w) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("theta must lie in (0, 1)");
  return std::exp((theta - w) / theta * std::log(epsilon));
}

Complex psi(const TriangleDomain& domain, const HarmonicMeasure& measure, double epsilon, Complex z) {
  return xi(measure.theta(), epsilon, strip_coordinate(domain, measure, z).w);
}

Complex psi(const HarmonicMeasure& measure, double epsilon, const QuadratureNode& node) {
  return xi(measure.theta(), epsilon, strip_coordinate(measure, node).w);
}

void write_node_table(std::ostream& out, const HarmonicMeasure& measure) {
  out << "# edge parameter re_z im_z weight part\n";
  char line[256];
  for (const auto& node : measure.nodes()) {
    std::snprintf(line, sizeof line, "%d %.17g %.17g %.17g %.17g %s\n", node.point.edge, node.point.edge_parameter,
                  node.point.z.real(), node.point.z.imag(), node.weight, to_string(node.point.part));
    out << line;
  }
}

}  // namespace hcsplit

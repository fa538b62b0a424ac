// SPDX-License-Identifier: Apache-2.0
//
// The triangle V with vertices 0, s+a-ib, s+a+ib, its Riemann map onto the
// unit disk, the harmonic measure of V seen from a real interior point t,
// and the strip/damping functions built on top of it.
//
// Boundary layout (counterclockwise):
//   edge 0: 0 -> s+a-ib       (part V0)
//   edge 1: s+a-ib -> s+a+ib  (part V1, the vertical side)
//   edge 2: s+a+ib -> 0       (part V0)
#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "hcsplit/space.hpp"

namespace hcsplit {

enum class BoundaryPart { V0, V1 };

const char* to_string(BoundaryPart part);

struct BoundaryPoint {
  Complex z;
  BoundaryPart part = BoundaryPart::V0;
  int edge = 0;
  /// Position along the edge, 0 at its first vertex and 1 at its second.
  double edge_parameter = 0.0;
};

class TriangleDomain {
 public:
  /// Throws DomainError unless s, a, b > 0 and 0 < t < s + a.
  TriangleDomain(double s, double a, double b, double t);

  /// a = s/8, b = 3s/4, t = 0.95 s. The V0 edges make 34 degrees with the
  /// real axis, inside the L_p contraction sector of symmetric Markov
  /// semigroups for p >= 1.25, and theta is about 0.68.
  static TriangleDomain with_defaults(double s);

  double s() const { return s_; }
  double a() const { return a_; }
  double b() const { return b_; }
  double t() const { return t_; }
  /// Real part of the vertical side, s + a.
  double apex() const { return s_ + a_; }

  const std::array<Complex, 3>& vertices() const { return vertices_; }
  /// Interior angles at the vertices, same order as vertices().
  const std::array<double, 3>& interior_angles() const { return angles_; }

  /// Closed triangle membership with absolute slack `tolerance`.
  bool contains(Complex z, double tolerance = 0.0) const;

  BoundaryPoint boundary_point(int edge, double parameter) const;

  /// The boundary point within `tolerance` of z, if any.
  std::optional<BoundaryPoint> locate_on_boundary(Complex z, double tolerance) const;

  /// Does K + s (K the triangle 0, a +- ib) lie in the closed domain?
  bool contains_shifted_k() const;

 private:
  double s_;
  double a_;
  double b_;
  double t_;
  std::array<Complex, 3> vertices_;
  std::array<double, 3> angles_;
};

/// Riemann map phi : V -> D with phi(t) = 0 and phi'(t) > 0.
///
/// Built from the disk Schwarz-Christoffel map F(w) = A + C int_0^w
/// prod_k (1 - u/z_k)^{alpha_k/pi - 1} du with prevertices z_k = -1,
/// e^{-i pi/3}, e^{i pi/3} for the vertices 0, s+a-ib, s+a+ib, followed by the
/// disk automorphism sending F^{-1}(t) to 0. F is evaluated by adaptive
/// quadrature from the nearest anchor (0 or a prevertex, with the prevertex
/// singularity removed by a power substitution) and inverted by damped Newton
/// with continuation.
class ConformalMap {
 public:
  explicit ConformalMap(const TriangleDomain& domain);

  const TriangleDomain& domain() const { return domain_; }

  /// phi(z). Throws DomainError outside the closed triangle and
  /// NumericalError when Newton fails.
  Complex to_disk(Complex z) const;
  /// phi^{-1}(zeta) for |zeta| <= 1.
  Complex from_disk(Complex zeta) const;
  /// phi'(z); throws DomainError at the vertices.
  Complex derivative(Complex z) const;

  /// Schwarz-Christoffel pieces on the preimage disk.
  Complex sc_forward(Complex w) const;
  Complex sc_derivative(Complex w) const;
  Complex sc_inverse(Complex z) const;
  Complex prevertex(int k) const { return prevertices_[static_cast<std::size_t>(k)]; }

  /// Preimage disk point <-> normalized disk point.
  Complex normalize(Complex w) const;
  Complex denormalize(Complex zeta) const;
  /// d zeta / d w of normalize().
  Complex normalize_derivative(Complex w) const;

  /// Argument of phi(vertex k) on the unit circle, in (-pi, pi].
  double vertex_angle(int k) const { return vertex_angles_[static_cast<std::size_t>(k)]; }

  /// Harmonic measure of V1 seen from t: arc length of phi(V1) over 2 pi.
  double theta() const { return theta_; }

  /// |F(z_2) - (s+a+ib)|: the third vertex is not imposed, so this measures
  /// the accuracy of the SC constants.
  double closure_error() const { return closure_error_; }

 private:
  Complex integral_from_anchor(Complex w, int anchor) const;
  Complex initial_guess(Complex z, Complex& image) const;

  TriangleDomain domain_;
  std::array<Complex, 3> prevertices_;
  std::array<double, 3> exponents_;  // alpha_k / pi - 1
  std::array<Complex, 3> prevertex_integrals_;
  Complex offset_;
  Complex scale_;
  Complex center_preimage_;
  Complex rotation_;
  std::array<double, 3> vertex_angles_;
  double theta_ = 0.0;
  double closure_error_ = 0.0;
  std::vector<std::pair<Complex, Complex>> guess_table_;  // (w, F(w))
};

struct QuadratureNode {
  BoundaryPoint point;
  /// mu-mass carried by the node.
  double weight = 0.0;
  /// phi(z) on the unit circle.
  Complex disk;
  /// Argument of phi(z), continuous along each edge's arc.
  double arc_angle = 0.0;
  /// Arc length on the circle from the image of the edge's first vertex and
  /// to the image of its second vertex. Kept separately so that nodes within
  /// rounding distance of a corner still resolve.
  double arc_from_start = 0.0;
  double arc_to_end = 0.0;
};

struct HarmonicMeasureOptions {
  int nodes_per_edge = 64;
  /// Endpoint grading exponent of the rules on the two V0 edges.
  double grading = 4.0;
  /// Endpoint grading exponent on V1, where psi is largest and oscillates
  /// like |z - corner|^{i c} toward both ends.
  double v1_grading = 6.0;
};

/// Harmonic measure mu of V at t together with a boundary quadrature.
///
/// Each edge is the image of an arc of the unit circle under phi^{-1}; the
/// edge's nodes come from a Gauss-Legendre rule on that arc with both ends
/// graded, so they integrate against density |phi'(z)|/(2 pi) |dz| while
/// absorbing the corner behaviour at both vertices of the edge.
class HarmonicMeasure {
 public:
  HarmonicMeasure(std::shared_ptr<const ConformalMap> map, std::vector<QuadratureNode> nodes);

  double theta() const { return map_->theta(); }
  const std::vector<QuadratureNode>& nodes() const { return nodes_; }
  const ConformalMap& map() const { return *map_; }
  const TriangleDomain& domain() const { return map_->domain(); }

  /// |phi'(z)|/(2 pi) at a boundary point.
  double density(const BoundaryPoint& point) const;

  double total_mass() const;
  double mass(BoundaryPart part) const;

  /// Im of the raw strip coordinate at t; subtracted so that w(t) = theta.
  double strip_offset() const { return strip_offset_; }

  template <class F>
  Complex integrate(F&& f) const {
    Complex acc = 0.0;
    for (const auto& node : nodes_) acc += node.weight * f(node.point.z);
    return acc;
  }

 private:
  std::shared_ptr<const ConformalMap> map_;
  std::vector<QuadratureNode> nodes_;
  double strip_offset_ = 0.0;
};

/// Throws DomainError when nodes_per_edge < 4.
HarmonicMeasure harmonic_measure(const TriangleDomain& domain, int nodes_per_edge);
HarmonicMeasure harmonic_measure(const TriangleDomain& domain, const HarmonicMeasureOptions& options);

/// Position in the closed unit strip 0 <= Re w <= 1.
struct StripCoordinate {
  Complex w;
};

/// chi_theta(z) = (e^{i pi z} - e^{i pi theta}) / (e^{i pi z} - e^{-i pi theta}).
Complex chi_theta(double theta, Complex z);

/// Inverse of chi_theta on the closed disk, with the branch giving
/// 0 <= Re w <= 1. Throws DomainError at zeta = 1 (the end of the strip).
Complex chi_theta_inverse(double theta, Complex zeta);

/// w(z) = chi_theta^{-1}(e^{i pi theta} phi(z)), normalized so w(t) = theta.
/// Maps V0 to Re w = 0 and V1 to Re w = 1. Throws DomainError at the two
/// V0/V1 corners.
StripCoordinate strip_coordinate(const TriangleDomain& domain, const HarmonicMeasure& measure, Complex z);

/// Strip coordinate of a quadrature node, computed from its arc offsets to
/// the corner images.
StripCoordinate strip_coordinate(const HarmonicMeasure& measure, const QuadratureNode& node);

/// xi(w) = epsilon^{(theta - w)/theta} (principal logarithm of epsilon).
/// Throws DomainError for epsilon <= 0.
Complex xi(double theta, double epsilon, Complex w);

/// psi = xi o strip_coordinate: psi(t) = 1, |psi| = epsilon on V0 and
/// epsilon^{(theta-1)/theta} on V1.
Complex psi(const TriangleDomain& domain, const HarmonicMeasure& measure, double epsilon, Complex z);
Complex psi(const HarmonicMeasure& measure, double epsilon, const QuadratureNode& node);

/// One node per line: edge parameter re_z im_z weight part.
void write_node_table(std::ostream& out, const HarmonicMeasure& measure);

}  // namespace hcsplit

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rgb/jet.hpp"

namespace rgb {

struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes on [a, b].
Rule1D gauss_legendre(int n, double a, double b);

/// Uniform rule on [0, period): exact for trigonometric polynomials of
/// degree < n.
Rule1D uniform_periodic(int n, double period);

/// Coordinates and quadrature for the level sets {x = const}, i.e. for the
/// boundary ∂M. The descriptor also carries the reference metric h_B(y) on
/// those coordinates; collar metrics scale it by a warp factor.
class BoundaryDescriptor {
 public:
  using BaseMetric = std::function<void(std::span<const double>, std::span<double>)>;
  using BaseMetricJet = std::function<void(std::span<const Jet>, std::span<Jet>)>;

  static BoundaryDescriptor circle(int nodes = 32);
  /// Round unit S^3 in Hopf coordinates (chi in (0, pi/2), phi1, phi2):
  /// dchi^2 + sin^2 chi dphi1^2 + cos^2 chi dphi2^2.
  static BoundaryDescriptor sphere3(int chiNodes = 6, int phiNodes = 8);
  /// Flat torus T^k with equal periods.
  static BoundaryDescriptor torus(int k, int nodes = 8, double period = 6.283185307179586);
  static BoundaryDescriptor product(const BoundaryDescriptor& a, const BoundaryDescriptor& b);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  std::span<const double> node(std::size_t i) const {
    return std::span<const double>(nodes_).subspan(i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_));
  }
  double weight(std::size_t i) const { return weights_[i]; }
  /// Sum of coordinate measure over the parameter domain.
  double coordinate_volume() const { return coordinateVolume_; }
  /// Volume of (∂M, h_B).
  double reference_volume() const { return referenceVolume_; }

  /// A rule with roughly half the nodes on the same coordinates, for error estimates.
  BoundaryDescriptor coarse() const { return coarse_ ? coarse_() : *this; }

  void base_metric(std::span<const double> y, std::span<double> out) const { base_(y, out); }
  void base_metric(std::span<const Jet> y, std::span<Jet> out) const { baseJet_(y, out); }

 private:
  std::string name_;
  int dim_ = 0;
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double coordinateVolume_ = 0.0;
  double referenceVolume_ = 0.0;
  BaseMetric base_;
  BaseMetricJet baseJet_;
  std::function<BoundaryDescriptor()> coarse_;
};

}  // namespace rgb

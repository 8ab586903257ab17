#pragma once

// Curvature of chart metrics and of level sets {x = eps}.
//
// Conventions:
//  * R((a,b),(c,d)) = g(R(X_a, X_b) X_d, X_c) with
//    R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y], so the round unit sphere has
//    R((e0,e1),(e0,e1)) = +1.
//  * Frames come from Gram-Schmidt on coordinate vectors in the order
//    d_1, ..., d_{m-1}, d_0: the first m-1 vectors are tangent to the level
//    sets of x = coordinate 0, the last is normal.
//  * The unit normal of {x = eps} points into the region being integrated:
//    towards increasing x for Side::Above ({x >= eps}), decreasing for Below.

#include <array>
#include <span>
#include <vector>

#include "rgb/double_form.hpp"
#include "rgb/metric.hpp"

namespace rgb {

enum class Side { Above, Below };

/// Gamma^k_{ij}, stored as [k][i][j].
struct Christoffel {
  int dim = 0;
  std::array<std::array<std::array<double, kMaxDim>, kMaxDim>, kMaxDim> G{};
  double operator()(int k, int i, int j) const {
    return G[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
};

/// Throws std::domain_error for a metric that is not positive definite or
/// whose condition number exceeds 1e14; the message carries the estimate.
Christoffel christoffel(const MetricJet& jet);
Christoffel christoffel(const ChartMetric& g, std::span<const double> p, const FdOptions& fd = {});

/// Orthonormal frame (columns, coordinate components) from Gram-Schmidt on
/// the coordinate vectors in the given order.
Mat gram_schmidt(const Mat& g, std::span<const int> order);
/// Gram-Schmidt in the adapted order d_1, ..., d_{m-1}, d_0.
Mat adapted_frame(const Mat& g);

/// Curvature in the given frame. Throws std::invalid_argument when the
/// frame is not orthonormal to 1e-8.
DoubleForm riemann(const MetricJet& jet, const Mat& frame);
/// Curvature in the adapted frame.
DoubleForm riemann(const ChartMetric& g, std::span<const double> p, const FdOptions& fd = {});

/// Everything the boundary integrands need at one point of {x = eps}.
struct LevelSetSample {
  DoubleForm R;          // ambient curvature, full adapted frame (m)
  DoubleForm R_tangent;  // ambient curvature on the tangent frame (m-1)
  DoubleForm S;          // second fundamental form on the tangent frame
  double dvol_boundary;  // sqrt det of the induced metric in y-coordinates
  Mat frame;             // adapted frame
};

LevelSetSample sample_level_set(const ChartMetric& g, double eps, std::span<const double> y, Side side = Side::Above,
                                const FdOptions& fd = {});

/// S(X_i, X_j) = g(nabla_{X_i} X_j, nu) on the tangent frame of {x = eps}.
DoubleForm sff_level_set(const ChartMetric& g, double eps, std::span<const double> y, Side side = Side::Above,
                         const FdOptions& fd = {});

/// The reference objects of gbar = dx^2/alpha^2 + h_x at (eps, y) on the
/// h_eps-orthonormal tangent frame.
struct ReferenceGeometry {
  DoubleForm S_bar;         // second fundamental form of gbar, normal alpha d_x
  DoubleForm R_bar_bdry;    // intrinsic curvature of (∂M, h_eps)
  DoubleForm g_bar;         // identity (1,1) form
  double alpha = 1.0;
  double dvol_h = 1.0;      // sqrt det h_eps in y-coordinates
};

ReferenceGeometry reference_geometry(const CollarMetric& cm, double eps, std::span<const double> y);

/// Phi = x^{eta-1} (x S_bar + alpha beta g_bar), the second fundamental form
/// of {x = eps} for g, expressed on the barred frame.
DoubleForm sff_model(const CollarMetric& cm, double eps, std::span<const double> y);

/// Tangential ambient curvature from the Gauss equation:
/// x^{2beta} Rbar - x^{2eta} Sbar^2/2 - x^{2eta-1} alpha beta Sbar gbar
///   - x^{2eta-2} alpha^2 beta^2 gbar^2/2.
DoubleForm curvature_model(const CollarMetric& cm, double eps, std::span<const double> y);

struct InducedBoundaryData {
  std::vector<double> weights;  // sqrt det of induced metric at each node
  std::vector<Mat> frames;      // tangent orthonormal frames (coordinate components)
};

/// Induced volume density and tangent frames at every quadrature node of
/// the level set {x = eps}, in node order.
InducedBoundaryData induced_boundary_data(const ChartMetric& g, const BoundaryDescriptor& level, double eps);

}  // namespace rgb

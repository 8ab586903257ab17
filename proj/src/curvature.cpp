#include "rgb/curvature.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rgb {
namespace {

using Tensor4 = std::array<std::array<std::array<std::array<double, kMaxDim>, kMaxDim>, kMaxDim>, kMaxDim>;
using Tensor3 = std::array<std::array<std::array<double, kMaxDim>, kMaxDim>, kMaxDim>;

std::size_t u(int i) { return static_cast<std::size_t>(i); }

Mat checked_inverse(const Mat& g) {
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e14) {
    std::ostringstream os;
    os << "metric matrix is singular or indefinite (eigenvalues " << lo << " .. " << hi
       << ", condition number " << (lo > 0.0 ? hi / lo : INFINITY) << ")";
    throw std::domain_error(os.str());
  }
  return g.inverse();
}

// Gamma_{l,ij} = 1/2 (d_i g_jl + d_j g_il - d_l g_ij).
Tensor3 first_kind(const MetricJet& J) {
  Tensor3 out{};
  const int m = J.dim;
  for (int l = 0; l < m; ++l)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        out[u(l)][u(i)][u(j)] = 0.5 * (J.dg[u(i)](j, l) + J.dg[u(j)](i, l) - J.dg[u(l)](i, j));
  return out;
}

// Lowered curvature R_abcd = g(R(d_a, d_b) d_d, d_c) in coordinates.
Tensor4 coordinate_curvature(const MetricJet& J) {
  const int m = J.dim;
  const Mat ginv = checked_inverse(J.g);
  const Tensor3 G1 = first_kind(J);
  Tensor3 G{};  // Gamma^k_ij
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double s = 0.0;
        for (int l = 0; l < m; ++l) s += ginv(k, l) * G1[u(l)][u(i)][u(j)];
        G[u(k)][u(i)][u(j)] = s;
      }
  // dG[a][k][i][j] = d_a Gamma^k_ij
  Tensor4 dG{};
  for (int a = 0; a < m; ++a) {
    const Mat dinv = -ginv * J.dg[u(a)] * ginv;
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          double s = 0.0;
          for (int l = 0; l < m; ++l) {
            const double dG1 =
                0.5 * (J.ddg[u(a)][u(i)](j, l) + J.ddg[u(a)][u(j)](i, l) - J.ddg[u(a)][u(l)](i, j));
            s += dinv(k, l) * G1[u(l)][u(i)][u(j)] + ginv(k, l) * dG1;
          }
          dG[u(a)][u(k)][u(i)][u(j)] = s;
        }
  }
  // Riem^l_{ijk} = d_i G^l_jk - d_j G^l_ik + G^l_ip G^p_jk - G^l_jp G^p_ik
  Tensor4 Rup{};  // [l][i][j][k]
  for (int l = 0; l < m; ++l)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          double s = dG[u(i)][u(l)][u(j)][u(k)] - dG[u(j)][u(l)][u(i)][u(k)];
          for (int p = 0; p < m; ++p) s += G[u(l)][u(i)][u(p)] * G[u(p)][u(j)][u(k)] - G[u(l)][u(j)][u(p)] * G[u(p)][u(i)][u(k)];
          Rup[u(l)][u(i)][u(j)][u(k)] = s;
        }
  Tensor4 R{};  // [a][b][c][d] = g_{c l} Riem^l_{a b d}
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          double s = 0.0;
          for (int l = 0; l < m; ++l) s += J.g(c, l) * Rup[u(l)][u(a)][u(b)][u(d)];
          R[u(a)][u(b)][u(c)][u(d)] = s;
        }
  return R;
}

// Contracts each slot of T with the frame, one index at a time.
Tensor4 to_frame(const Tensor4& T, const Mat& E, int m) {
  Tensor4 A = T, B{};
  for (int slot = 0; slot < 4; ++slot) {
    for (int i0 = 0; i0 < m; ++i0)
      for (int i1 = 0; i1 < m; ++i1)
        for (int i2 = 0; i2 < m; ++i2)
          for (int e = 0; e < m; ++e) {
            double s = 0.0;
            for (int c = 0; c < m; ++c) s += E(c, e) * A[u(c)][u(i0)][u(i1)][u(i2)];
            B[u(i0)][u(i1)][u(i2)][u(e)] = s;
          }
    A = B;
  }
  return A;
}

DoubleForm curvature_form(const Tensor4& F, int m, int offset = 0) {
  DoubleForm R(2, 2, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = k + 1; l < m; ++l) R.set({i, j}, {k, l}, F[u(i + offset)][u(j + offset)][u(k + offset)][u(l + offset)]);
  return R;
}

void check_orthonormal(const Mat& g, const Mat& E) {
  const Mat I = E.transpose() * g * E;
  const double dev = (I - Mat::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
  if (!(dev <= 1e-8)) {
    std::ostringstream os;
    os << "frame is not orthonormal (deviation " << dev << ")";
    throw std::invalid_argument(os.str());
  }
}

std::array<double, kMaxDim> point(double eps, std::span<const double> y) {
  std::array<double, kMaxDim> p{};
  p[0] = eps;
  for (std::size_t i = 0; i < y.size(); ++i) p[i + 1] = y[i];
  return p;
}

// Second fundamental form of {x = const} in coordinates y (indices 1..m-1).
Mat coordinate_sff(const MetricJet& J, Side side) {
  const int m = J.dim;
  const Mat ginv = checked_inverse(J.g);
  const Tensor3 G1 = first_kind(J);
  const double sign = (side == Side::Above) ? 1.0 : -1.0;
  const double len = std::sqrt(ginv(0, 0));
  Vec nu(m);
  for (int d = 0; d < m; ++d) nu(d) = sign * ginv(d, 0) / len;
  Mat S = Mat::Zero(m - 1, m - 1);
  for (int a = 1; a < m; ++a)
    for (int b = 1; b < m; ++b) {
      double s = 0.0;
      for (int d = 0; d < m; ++d) s += G1[u(d)][u(a)][u(b)] * nu(d);
      S(a - 1, b - 1) = s;
    }
  return S;
}

DoubleForm bilinear_on_frame(const Mat& S, const Mat& E) {
  const int n = static_cast<int>(S.rows());
  const Mat F = E.transpose() * S * E;
  std::array<double, kMaxDim * kMaxDim> buf{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) buf[u(i * n + j)] = F(i, j);
  return DoubleForm::from_bilinear(n, std::span<const double>(buf.data(), u(n * n)));
}

}  // namespace

Christoffel christoffel(const MetricJet& jet) {
  const int m = jet.dim;
  const Mat ginv = checked_inverse(jet.g);
  const Tensor3 G1 = first_kind(jet);
  Christoffel out;
  out.dim = m;
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double s = 0.0;
        for (int l = 0; l < m; ++l) s += ginv(k, l) * G1[u(l)][u(i)][u(j)];
        out.G[u(k)][u(i)][u(j)] = s;
      }
  return out;
}

Christoffel christoffel(const ChartMetric& g, std::span<const double> p, const FdOptions& fd) {
  return christoffel(g.jet(p, fd));
}

Mat gram_schmidt(const Mat& g, std::span<const int> order) {
  const int m = static_cast<int>(g.rows());
  if (static_cast<int>(order.size()) != m) throw std::invalid_argument("Gram-Schmidt order has the wrong length");
  checked_inverse(g);
  Mat E = Mat::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    Vec v = Vec::Zero(m);
    v(order[u(k)]) = 1.0;
    for (int j = 0; j < k; ++j) {
      const Vec e = E.col(j);
      v -= (e.transpose() * g * v)(0, 0) * e;
    }
    const double n2 = (v.transpose() * g * v)(0, 0);
    E.col(k) = v / std::sqrt(n2);
  }
  return E;
}

Mat adapted_frame(const Mat& g) {
  const int m = static_cast<int>(g.rows());
  std::array<int, kMaxDim> order{};
  for (int k = 0; k + 1 < m; ++k) order[u(k)] = k + 1;
  order[u(m - 1)] = 0;
  return gram_schmidt(g, std::span<const int>(order.data(), u(m)));
}

DoubleForm riemann(const MetricJet& jet, const Mat& frame) {
  const int m = jet.dim;
  if (frame.rows() != m || frame.cols() != m) throw std::invalid_argument("frame has the wrong size");
  check_orthonormal(jet.g, frame);
  if (m < 2) {
    checked_inverse(jet.g);
    return DoubleForm(2, 2, m);
  }
  return curvature_form(to_frame(coordinate_curvature(jet), frame, m), m);
}

DoubleForm riemann(const ChartMetric& g, std::span<const double> p, const FdOptions& fd) {
  const MetricJet J = g.jet(p, fd);
  return riemann(J, adapted_frame(J.g));
}

LevelSetSample sample_level_set(const ChartMetric& g, double eps, std::span<const double> y, Side side,
                                const FdOptions& fd) {
  const int m = g.dim();
  if (static_cast<int>(y.size()) != m - 1) throw std::invalid_argument("level-set point has the wrong dimension");
  const auto p = point(eps, y);
  const MetricJet J = g.jet(std::span<const double>(p.data(), u(m)), fd);
  const Mat E = adapted_frame(J.g);
  const Tensor4 F = to_frame(coordinate_curvature(J), E, m);

  LevelSetSample s{curvature_form(F, m), curvature_form(F, m - 1), DoubleForm(1, 1, m - 1), 0.0, E};
  const Mat Et = E.block(1, 0, m - 1, m - 1);
  s.S = bilinear_on_frame(coordinate_sff(J, side), Et);
  s.dvol_boundary = std::sqrt(J.g.block(1, 1, m - 1, m - 1).determinant());
  return s;
}

DoubleForm sff_level_set(const ChartMetric& g, double eps, std::span<const double> y, Side side,
                         const FdOptions& fd) {
  const int m = g.dim();
  if (static_cast<int>(y.size()) != m - 1) throw std::invalid_argument("level-set point has the wrong dimension");
  const auto p = point(eps, y);
  const MetricJet J = g.jet(std::span<const double>(p.data(), u(m)), fd);
  const Mat E = adapted_frame(J.g);
  return bilinear_on_frame(coordinate_sff(J, side), E.block(1, 0, m - 1, m - 1));
}

ReferenceGeometry reference_geometry(const CollarMetric& cm, double eps, std::span<const double> y) {
  const int d = cm.boundary.dim();
  if (static_cast<int>(y.size()) != d) throw std::invalid_argument("boundary point has the wrong dimension");
  if (!(eps >= 0.0)) throw std::domain_error("reference geometry needs x >= 0");

  // d/dx of h_x through a jet in x alone.
  std::array<Jet, kMaxDim> yj{};
  for (int i = 0; i < d; ++i) yj[u(i)] = Jet(y[u(i)]);
  const Jet w = cm.warp(Jet::variable(eps, 0), std::span<const Jet>(yj.data(), u(d)));
  std::array<double, kMaxDim * kMaxDim> base{};
  cm.boundary.base_metric(y, std::span<double>(base.data(), u(d * d)));
  Mat h(d, d), dh(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      h(i, j) = w.v * base[u(i * d + j)];
      dh(i, j) = w.d[0] * base[u(i * d + j)];
    }

  ReferenceGeometry r{DoubleForm(1, 1, d), DoubleForm(2, 2, d), DoubleForm::metric(d), 1.0, 1.0};
  r.alpha = cm.alpha(eps, y);
  r.dvol_h = std::sqrt(h.determinant());

  std::array<int, kMaxDim> order{};
  for (int k = 0; k < d; ++k) order[u(k)] = k;
  const Mat E = gram_schmidt(h, std::span<const int>(order.data(), u(d)));
  r.S_bar = bilinear_on_frame(-0.5 * r.alpha * dh, E);

  if (d >= 2) {
    const ChartMetric bc = boundary_chart(cm, eps);
    const MetricJet J = bc.jet(y);
    r.R_bar_bdry = riemann(J, E);
  }
  return r;
}

DoubleForm sff_model(const CollarMetric& cm, double eps, std::span<const double> y) {
  if (!(eps > 0.0)) throw std::domain_error("model second fundamental form needs x > 0");
  const ReferenceGeometry r = reference_geometry(cm, eps, y);
  DoubleForm phi = eps * r.S_bar + (r.alpha * cm.beta) * r.g_bar;
  phi *= std::pow(eps, cm.eta - 1.0);
  return phi;
}

DoubleForm curvature_model(const CollarMetric& cm, double eps, std::span<const double> y) {
  if (!(eps > 0.0)) throw std::domain_error("model curvature needs x > 0");
  const ReferenceGeometry r = reference_geometry(cm, eps, y);
  const double ab = r.alpha * cm.beta;
  const DoubleForm S2 = df_product(r.S_bar, r.S_bar);
  const DoubleForm Sg = df_product(r.S_bar, r.g_bar);
  const DoubleForm g2 = df_product(r.g_bar, r.g_bar);
  const double x = eps;
  return std::pow(x, 2 * cm.beta) * r.R_bar_bdry - (0.5 * std::pow(x, 2 * cm.eta)) * S2 -
         (std::pow(x, 2 * cm.eta - 1) * ab) * Sg - (0.5 * std::pow(x, 2 * cm.eta - 2) * ab * ab) * g2;
}

InducedBoundaryData induced_boundary_data(const ChartMetric& g, const BoundaryDescriptor& level, double eps) {
  const int m = g.dim();
  if (level.dim() != m - 1) throw std::invalid_argument("boundary descriptor does not match the chart");
  InducedBoundaryData out;
  out.weights.reserve(level.size());
  out.frames.reserve(level.size());
  for (std::size_t n = 0; n < level.size(); ++n) {
    const auto p = point(eps, level.node(n));
    const Mat gm = g(std::span<const double>(p.data(), u(m)));
    const Mat E = adapted_frame(gm);
    out.weights.push_back(std::sqrt(gm.block(1, 1, m - 1, m - 1).determinant()));
    out.frames.push_back(E.block(0, 0, m, m - 1));
  }
  return out;
}

}  // namespace rgb

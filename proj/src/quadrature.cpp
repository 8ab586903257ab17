#include "rgb/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rgb {

Rule1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  Rule1D rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = mid - half * z;
    rule.nodes[hi] = mid + half * z;
    rule.weights[lo] = half * w;
    rule.weights[hi] = half * w;
  }
  return rule;
}

Rule1D uniform_periodic(int n, double period) {
  if (n < 1) throw std::invalid_argument("periodic rule needs at least one node");
  Rule1D rule;
  for (int i = 0; i < n; ++i) {
    rule.nodes.push_back(period * i / n);
    rule.weights.push_back(period / n);
  }
  return rule;
}

BoundaryDescriptor BoundaryDescriptor::circle(int nodes) {
  BoundaryDescriptor b;
  b.name_ = "S1";
  b.dim_ = 1;
  const Rule1D r = uniform_periodic(nodes, 2.0 * std::numbers::pi);
  b.nodes_ = r.nodes;
  b.weights_ = r.weights;
  b.coordinateVolume_ = 2.0 * std::numbers::pi;
  b.referenceVolume_ = 2.0 * std::numbers::pi;
  b.base_ = [](std::span<const double>, std::span<double> out) { out[0] = 1.0; };
  b.baseJet_ = [](std::span<const Jet>, std::span<Jet> out) { out[0] = Jet(1.0); };
  if (nodes >= 4) b.coarse_ = [nodes] { return circle(nodes / 2); };
  return b;
}

BoundaryDescriptor BoundaryDescriptor::sphere3(int chiNodes, int phiNodes) {
  BoundaryDescriptor b;
  b.name_ = "S3";
  b.dim_ = 3;
  const double pi = std::numbers::pi;
  const Rule1D chi = gauss_legendre(chiNodes, 0.0, 0.5 * pi);
  const Rule1D phi = uniform_periodic(phiNodes, 2.0 * pi);
  for (std::size_t i = 0; i < chi.nodes.size(); ++i)
    for (std::size_t j = 0; j < phi.nodes.size(); ++j)
      for (std::size_t k = 0; k < phi.nodes.size(); ++k) {
        b.nodes_.insert(b.nodes_.end(), {chi.nodes[i], phi.nodes[j], phi.nodes[k]});
        b.weights_.push_back(chi.weights[i] * phi.weights[j] * phi.weights[k]);
      }
  b.coordinateVolume_ = 0.5 * pi * 4.0 * pi * pi;
  b.referenceVolume_ = 2.0 * pi * pi;
  auto fill = [](const auto& y, auto& out) {
    using std::cos;
    using std::sin;
    for (auto& o : out) o = 0.0;
    const auto s = sin(y[0]);
    const auto c = cos(y[0]);
    out[0] = 1.0;
    out[4] = s * s;
    out[8] = c * c;
  };
  b.base_ = [fill](std::span<const double> y, std::span<double> out) { fill(y, out); };
  b.baseJet_ = [fill](std::span<const Jet> y, std::span<Jet> out) { fill(y, out); };
  if (chiNodes >= 2 && phiNodes >= 4)
    b.coarse_ = [chiNodes, phiNodes] { return sphere3(chiNodes - chiNodes / 3, phiNodes / 2); };
  return b;
}

BoundaryDescriptor BoundaryDescriptor::torus(int k, int nodes, double period) {
  if (k < 1 || k > 3) throw std::invalid_argument("torus dimension must be 1..3");
  BoundaryDescriptor b;
  b.name_ = "T" + std::to_string(k);
  b.dim_ = k;
  const Rule1D r = uniform_periodic(nodes, period);
  std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
  while (true) {
    double w = 1.0;
    for (int a = 0; a < k; ++a) {
      b.nodes_.push_back(r.nodes[idx[static_cast<std::size_t>(a)]]);
      w *= r.weights[idx[static_cast<std::size_t>(a)]];
    }
    b.weights_.push_back(w);
    int a = k - 1;
    while (a >= 0 && ++idx[static_cast<std::size_t>(a)] == r.nodes.size()) idx[static_cast<std::size_t>(a--)] = 0;
    if (a < 0) break;
  }
  b.coordinateVolume_ = std::pow(period, k);
  b.referenceVolume_ = b.coordinateVolume_;
  b.base_ = [k](std::span<const double>, std::span<double> out) {
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) out[static_cast<std::size_t>(i * k + j)] = (i == j) ? 1.0 : 0.0;
  };
  b.baseJet_ = [k](std::span<const Jet>, std::span<Jet> out) {
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) out[static_cast<std::size_t>(i * k + j)] = Jet((i == j) ? 1.0 : 0.0);
  };
  if (nodes >= 4) b.coarse_ = [k, nodes, period] { return torus(k, nodes / 2, period); };
  return b;
}

BoundaryDescriptor BoundaryDescriptor::product(const BoundaryDescriptor& a, const BoundaryDescriptor& b) {
  if (a.dim_ + b.dim_ > kMaxDim - 1) throw std::invalid_argument("product boundary too large");
  BoundaryDescriptor p;
  p.name_ = a.name_ + "x" + b.name_;
  p.dim_ = a.dim_ + b.dim_;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto na = a.node(i);
      auto nb = b.node(j);
      p.nodes_.insert(p.nodes_.end(), na.begin(), na.end());
      p.nodes_.insert(p.nodes_.end(), nb.begin(), nb.end());
      p.weights_.push_back(a.weight(i) * b.weight(j));
    }
  p.coordinateVolume_ = a.coordinateVolume_ * b.coordinateVolume_;
  p.referenceVolume_ = a.referenceVolume_ * b.referenceVolume_;
  const int da = a.dim_, db = b.dim_, d = p.dim_;
  auto blocks = [da, db, d](const auto& fa, const auto& fb, auto y, auto out, auto zero) {
    using V = typename decltype(out)::value_type;
    std::vector<V> ga(static_cast<std::size_t>(da * da), zero), gb(static_cast<std::size_t>(db * db), zero);
    fa(y.subspan(0, static_cast<std::size_t>(da)), std::span<V>(ga));
    fb(y.subspan(static_cast<std::size_t>(da)), std::span<V>(gb));
    for (auto& o : out) o = zero;
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j) out[static_cast<std::size_t>(i * d + j)] = ga[static_cast<std::size_t>(i * da + j)];
    for (int i = 0; i < db; ++i)
      for (int j = 0; j < db; ++j)
        out[static_cast<std::size_t>((da + i) * d + da + j)] = gb[static_cast<std::size_t>(i * db + j)];
  };
  p.base_ = [blocks, fa = a.base_, fb = b.base_](std::span<const double> y, std::span<double> out) {
    blocks(fa, fb, y, out, 0.0);
  };
  p.baseJet_ = [blocks, fa = a.baseJet_, fb = b.baseJet_](std::span<const Jet> y, std::span<Jet> out) {
    blocks(fa, fb, y, out, Jet(0.0));
  };
  p.coarse_ = [a, b] { return product(a.coarse(), b.coarse()); };
  return p;
}

}  // namespace rgb

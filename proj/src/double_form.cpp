#include "rgb/double_form.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rgb {
namespace {

// Increasing k-subsets of {0..d-1} as bitmasks, with the inverse lookup.
struct SubsetTable {
  std::vector<std::vector<std::uint32_t>> byCount;  // [k] -> masks in colex order
  std::vector<int> rank;                            // mask -> position within its k
};

const SubsetTable& subsets(int d) {
  static const auto tables = [] {
    std::vector<SubsetTable> all(kMaxFormDim + 1);
    for (int n = 0; n <= kMaxFormDim; ++n) {
      SubsetTable t;
      t.byCount.resize(static_cast<std::size_t>(n) + 1);
      t.rank.assign(std::size_t{1} << n, -1);
      for (std::uint32_t m = 0; m < (1u << n); ++m) {
        auto& bucket = t.byCount[static_cast<std::size_t>(std::popcount(m))];
        t.rank[m] = static_cast<int>(bucket.size());
        bucket.push_back(m);
      }
      all[static_cast<std::size_t>(n)] = std::move(t);
    }
    return all;
  }();
  return tables[static_cast<std::size_t>(d)];
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

// Bitmask of an index tuple and the sign of the sorting permutation;
// sign 0 for a repeated index.
struct Sorted {
  std::uint32_t mask = 0;
  int sign = 1;
};

Sorted sort_indices(std::span<const int> idx, int dim) {
  Sorted s;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const int i = idx[a];
    if (i < 0 || i >= dim) throw std::invalid_argument("double form index " + std::to_string(i) + " outside frame");
    const std::uint32_t bit = 1u << i;
    if (s.mask & bit) return {0, 0};
    // Inversions: earlier entries greater than i.
    for (std::size_t b = 0; b < a; ++b)
      if (idx[b] > i) s.sign = -s.sign;
    s.mask |= bit;
  }
  return s;
}

// Sign of the shuffle that lists the elements of sub followed by the rest
// of whole, relative to increasing order.
int shuffle_sign(std::uint32_t sub, std::uint32_t whole) {
  const std::uint32_t rest = whole & ~sub;
  int inversions = 0;
  for (std::uint32_t r = rest; r; r &= r - 1) {
    const int pos = std::countr_zero(r);
    // elements of sub greater than pos precede it in the shuffled order
    inversions += std::popcount(sub & ~((2u << pos) - 1));
  }
  return (inversions % 2) ? -1 : 1;
}

}  // namespace

DoubleForm::DoubleForm(int p, int q, int dim) : p_(p), q_(q), dim_(dim) {
  if (dim < 0 || dim > kMaxFormDim) throw std::invalid_argument("double form dimension out of range");
  if (p < 0 || q < 0) throw std::invalid_argument("double form degree must be non-negative");
  colsQ_ = binomial(dim, q);
  coeffs_.assign(binomial(dim, p) * colsQ_, 0.0);
}

DoubleForm DoubleForm::metric(int dim) {
  DoubleForm g(1, 1, dim);
  for (int i = 0; i < dim; ++i) g.set_masks(1u << i, 1u << i, 1.0);
  return g;
}

DoubleForm DoubleForm::unit(int dim) {
  DoubleForm u(0, 0, dim);
  u.set_masks(0, 0, 1.0);
  return u;
}

DoubleForm DoubleForm::from_bilinear(int dim, std::span<const double> rowMajor) {
  if (rowMajor.size() != static_cast<std::size_t>(dim * dim))
    throw std::invalid_argument("bilinear form needs dim*dim entries");
  DoubleForm a(1, 1, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a.set_masks(1u << i, 1u << j, rowMajor[static_cast<std::size_t>(i * dim + j)]);
  return a;
}

std::size_t DoubleForm::offset(std::uint32_t I, std::uint32_t J) const {
  const auto& t = subsets(dim_);
  return static_cast<std::size_t>(t.rank[I]) * colsQ_ + static_cast<std::size_t>(t.rank[J]);
}

double DoubleForm::at_masks(std::uint32_t I, std::uint32_t J) const {
  if (std::popcount(I) != p_ || std::popcount(J) != q_) return 0.0;
  return coeffs_[offset(I, J)];
}

void DoubleForm::set_masks(std::uint32_t I, std::uint32_t J, double value) {
  if (std::popcount(I) != p_ || std::popcount(J) != q_)
    throw std::invalid_argument("mask degree does not match the form degree");
  coeffs_[offset(I, J)] = value;
}

double DoubleForm::operator()(std::span<const int> I, std::span<const int> J) const {
  if (static_cast<int>(I.size()) != p_ || static_cast<int>(J.size()) != q_)
    throw std::invalid_argument("index tuple lengths do not match the form degree");
  const Sorted a = sort_indices(I, dim_);
  const Sorted b = sort_indices(J, dim_);
  if (a.sign == 0 || b.sign == 0) return 0.0;
  return a.sign * b.sign * coeffs_[offset(a.mask, b.mask)];
}

void DoubleForm::set(std::span<const int> I, std::span<const int> J, double value) {
  if (static_cast<int>(I.size()) != p_ || static_cast<int>(J.size()) != q_)
    throw std::invalid_argument("index tuple lengths do not match the form degree");
  const Sorted a = sort_indices(I, dim_);
  const Sorted b = sort_indices(J, dim_);
  if (a.sign == 0 || b.sign == 0) {
    if (value != 0.0) throw std::invalid_argument("repeated index must carry value 0");
    return;
  }
  coeffs_[offset(a.mask, b.mask)] = a.sign * b.sign * value;
}

double DoubleForm::max_abs() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

DoubleForm& DoubleForm::operator+=(const DoubleForm& other) {
  if (other.p_ != p_ || other.q_ != q_ || other.dim_ != dim_)
    throw std::invalid_argument("adding double forms of different type");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

DoubleForm& DoubleForm::operator-=(const DoubleForm& other) {
  if (other.p_ != p_ || other.q_ != q_ || other.dim_ != dim_)
    throw std::invalid_argument("subtracting double forms of different type");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

DoubleForm& DoubleForm::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

DoubleForm operator+(DoubleForm a, const DoubleForm& b) { return a += b; }
DoubleForm operator-(DoubleForm a, const DoubleForm& b) { return a -= b; }
DoubleForm operator*(double s, DoubleForm a) { return a *= s; }
DoubleForm operator*(DoubleForm a, double s) { return a *= s; }

DoubleForm df_product(const DoubleForm& a, const DoubleForm& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("double form product: dimension mismatch");
  const int d = a.dim();
  const int P = a.p() + b.p();
  const int Q = a.q() + b.q();
  DoubleForm out(P, Q, d);
  if (P > d || Q > d) return out;
  const auto& t = subsets(d);
  for (std::uint32_t I : t.byCount[static_cast<std::size_t>(P)]) {
    for (std::uint32_t J : t.byCount[static_cast<std::size_t>(Q)]) {
      double sum = 0.0;
      // Enumerate sub-masks of I with p bits and of J with q bits.
      for (std::uint32_t A = I;; A = (A - 1) & I) {
        if (std::popcount(A) == a.p()) {
          const int sa = shuffle_sign(A, I);
          for (std::uint32_t C = J;; C = (C - 1) & J) {
            if (std::popcount(C) == a.q()) {
              const double va = a.at_masks(A, C);
              if (va != 0.0) sum += sa * shuffle_sign(C, J) * va * b.at_masks(I & ~A, J & ~C);
            }
            if (C == 0) break;
          }
        }
        if (A == 0) break;
      }
      out.set_masks(I, J, sum);
    }
  }
  return out;
}

DoubleForm df_power(const DoubleForm& a, int k) {
  if (k < 0) throw std::invalid_argument("double form power must be non-negative");
  DoubleForm r = DoubleForm::unit(a.dim());
  for (int i = 0; i < k; ++i) r = df_product(r, a);
  return r;
}

DoubleForm df_product_all(std::span<const DoubleForm> factors) {
  if (factors.empty()) throw std::invalid_argument("empty product");
  DoubleForm r = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) r = df_product(r, factors[i]);
  return r;
}

double df_eval(const DoubleForm& a, std::span<const int> I, std::span<const int> J) { return a(I, J); }

double permutation_contraction(std::span<const DoubleForm> factors) {
  if (factors.empty()) throw std::invalid_argument("permutation contraction needs factors");
  const int d = factors.front().dim();
  int P = 0, Q = 0;
  for (const auto& f : factors) {
    if (f.dim() != d) throw std::invalid_argument("permutation contraction: dimension mismatch");
    P += f.p();
    Q += f.q();
  }
  if (P != d || Q != d)
    throw std::invalid_argument("permutation contraction: factor degrees sum to (" + std::to_string(P) + "," +
                                std::to_string(Q) + "), need (" + std::to_string(d) + "," + std::to_string(d) + ")");

  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  std::vector<int> signs;
  do {
    int inv = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inv;
    perms.push_back(perm);
    signs.push_back(inv % 2 ? -1 : 1);
  } while (std::next_permutation(perm.begin(), perm.end()));

  double total = 0.0;
  for (std::size_t s = 0; s < perms.size(); ++s) {
    const auto& sigma = perms[s];
    for (std::size_t t = 0; t < perms.size(); ++t) {
      const auto& tau = perms[t];
      double prod = signs[s] * signs[t];
      std::size_t oi = 0, oj = 0;
      for (const auto& f : factors) {
        prod *= f(std::span<const int>(sigma).subspan(oi, static_cast<std::size_t>(f.p())),
                  std::span<const int>(tau).subspan(oj, static_cast<std::size_t>(f.q())));
        if (prod == 0.0) break;
        oi += static_cast<std::size_t>(f.p());
        oj += static_cast<std::size_t>(f.q());
      }
      total += prod;
    }
  }
  return total;
}

double contraction_ratio(std::span<const DoubleForm> factors) {
  auto fact = [](int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
  };
  double r = 1.0;
  for (const auto& f : factors) r *= fact(f.p()) * fact(f.q());
  return r;
}

}  // namespace rgb

#include "nct/lattice.hpp"

#include <cmath>
#include <cstdlib>

namespace nct {

int sup_norm(const MultiIndex& k) {
  int m = 0;
  for (int v : k) m = std::max(m, std::abs(v));
  return m;
}

long long norm2_sq(const MultiIndex& k) {
  long long s = 0;
  for (int v : k) s += static_cast<long long>(v) * v;
  return s;
}

double euclid_norm(const MultiIndex& k) { return std::sqrt(static_cast<double>(norm2_sq(k))); }

int order_of(const MultiIndex& alpha) {
  int s = 0;
  for (int v : alpha) s += v;
  return s;
}

bool is_nonnegative(const MultiIndex& alpha) {
  for (int v : alpha)
    if (v < 0) return false;
  return true;
}

MultiIndex add(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw std::invalid_argument("multi-index dimension mismatch");
  MultiIndex r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

MultiIndex sub(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw std::invalid_argument("multi-index dimension mismatch");
  MultiIndex r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

MultiIndex negate(const MultiIndex& a) {
  MultiIndex r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

MultiIndex unit_index(int n, int axis) {
  MultiIndex r(n, 0);
  r.at(axis) = 1;
  return r;
}

MultiIndex zero_index(int n) { return MultiIndex(n, 0); }

double int_pow(const MultiIndex& k, const MultiIndex& alpha) {
  if (k.size() != alpha.size()) throw std::invalid_argument("multi-index dimension mismatch");
  if (!is_nonnegative(alpha)) throw std::invalid_argument("negative multi-order");
  double p = 1.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (int t = 0; t < alpha[i]; ++t) p *= static_cast<double>(k[i]);
  }
  return p;
}

static double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double multi_binomial(const MultiIndex& alpha, const MultiIndex& beta) {
  if (alpha.size() != beta.size()) throw std::invalid_argument("multi-index dimension mismatch");
  double r = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) r *= binomial(alpha[i], beta[i]);
  return r;
}

static void enumerate_orders(int n, int axis, int remaining, MultiIndex& cur,
                             std::vector<MultiIndex>& out) {
  if (axis == n) {
    out.push_back(cur);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    cur[axis] = v;
    enumerate_orders(n, axis + 1, remaining - v, cur, out);
  }
  cur[axis] = 0;
}

std::vector<MultiIndex> multi_orders_up_to(int n, int N) {
  std::vector<MultiIndex> out;
  MultiIndex cur(n, 0);
  for (int total = 0; total <= N; ++total) {
    std::vector<MultiIndex> level;
    enumerate_orders(n, 0, total, cur, level);
    for (auto& a : level)
      if (order_of(a) == total) out.push_back(std::move(a));
  }
  return out;
}

std::vector<MultiIndex> sub_orders(const MultiIndex& alpha) {
  std::vector<MultiIndex> out;
  MultiIndex cur(alpha.size(), 0);
  long long total = 1;
  for (int v : alpha) total *= (v + 1);
  out.reserve(static_cast<std::size_t>(total));
  for (long long idx = 0; idx < total; ++idx) {
    long long rest = idx;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      cur[i] = static_cast<int>(rest % (alpha[i] + 1));
      rest /= (alpha[i] + 1);
    }
    out.push_back(cur);
  }
  return out;
}

ThetaMatrix::ThetaMatrix(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("torus dimension must be >= 1");
  upper_.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0.0);
}

ThetaMatrix::ThetaMatrix(int n, std::vector<double> upper_triangle) : n_(n) {
  if (n < 1) throw std::invalid_argument("torus dimension must be >= 1");
  const std::size_t expected = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (upper_triangle.size() != expected)
    throw std::invalid_argument("upper triangle size does not match dimension");
  upper_ = std::move(upper_triangle);
}

double ThetaMatrix::entry(int j, int k) const {
  if (j < 0 || k < 0 || j >= n_ || k >= n_) throw std::invalid_argument("theta index out of range");
  if (j == k) return 0.0;
  if (j < k) {
    // row-major strict upper triangle offset
    const std::size_t off = static_cast<std::size_t>(j) * n_ - static_cast<std::size_t>(j) * (j + 1) / 2 +
                            static_cast<std::size_t>(k - j - 1);
    return upper_[off];
  }
  return -entry(k, j);
}

double phase(const ThetaMatrix& theta, const MultiIndex& k, const MultiIndex& l) {
  const int n = theta.dim();
  if (static_cast<int>(k.size()) != n || static_cast<int>(l.size()) != n)
    throw std::invalid_argument("lattice point dimension mismatch");
  double c = 0.0;
  for (int q = 0; q < n; ++q) {
    for (int p = q + 1; p < n; ++p) {
      c += static_cast<double>(k[p]) * theta.entry(p, q) * static_cast<double>(l[q]);
    }
  }
  return c;
}

std::pair<double, double> peetre_bound(double m, std::span<const double> xi,
                                       std::span<const double> eta) {
  if (xi.size() != eta.size()) throw std::invalid_argument("vector dimension mismatch");
  std::vector<double> sum(xi.size());
  for (std::size_t i = 0; i < xi.size(); ++i) sum[i] = xi[i] + eta[i];
  const double lhs = std::pow(1.0 + euclidean_norm(sum), m);
  const double rhs =
      std::pow(1.0 + euclidean_norm(xi), m) * std::pow(1.0 + euclidean_norm(eta), std::abs(m));
  return {lhs, rhs};
}

LatticeBox::LatticeBox(MultiIndex lo, MultiIndex hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size()) throw std::invalid_argument("box corner dimension mismatch");
  size_ = 1;
  for (std::size_t i = 0; i < lo_.size(); ++i) {
    if (hi_[i] < lo_[i]) {
      size_ = 0;
      return;
    }
    size_ *= (hi_[i] - lo_[i] + 1);
  }
}

LatticeBox LatticeBox::centered(int n, int radius) {
  if (radius < 0) throw std::invalid_argument("radius must be >= 0");
  return LatticeBox(MultiIndex(n, -radius), MultiIndex(n, radius));
}

bool LatticeBox::contains(const MultiIndex& k) const {
  if (k.size() != lo_.size()) return false;
  for (std::size_t i = 0; i < k.size(); ++i)
    if (k[i] < lo_[i] || k[i] > hi_[i]) return false;
  return true;
}

long long LatticeBox::index(const MultiIndex& k) const {
  if (!contains(k)) return -1;
  long long idx = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    idx = idx * (hi_[i] - lo_[i] + 1) + (k[i] - lo_[i]);
  }
  return idx;
}

MultiIndex LatticeBox::at(long long idx) const {
  MultiIndex k(lo_.size());
  for (std::size_t ri = lo_.size(); ri-- > 0;) {
    const long long w = hi_[ri] - lo_[ri] + 1;
    k[ri] = static_cast<int>(idx % w) + lo_[ri];
    idx /= w;
  }
  return k;
}

void LatticeBox::for_each(const std::function<void(const MultiIndex&)>& fn) const {
  for (long long i = 0; i < size_; ++i) fn(at(i));
}

LatticeBox LatticeBox::shrunk(const MultiIndex& lo_shift, const MultiIndex& hi_shift) const {
  MultiIndex lo = add(lo_, lo_shift);
  MultiIndex hi = sub(hi_, hi_shift);
  return LatticeBox(std::move(lo), std::move(hi));
}

}  // namespace nct

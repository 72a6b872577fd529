#ifndef NCT_LATTICE_HPP
#define NCT_LATTICE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "nct/common.hpp"

namespace nct {

/// Lattice point of Z^n or differentiation multi-order; the two share
/// identical arithmetic, operations requiring nonnegativity check at entry.
using MultiIndex = std::vector<int>;

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (int v : k) {
      h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

int sup_norm(const MultiIndex& k);
long long norm2_sq(const MultiIndex& k);
double euclid_norm(const MultiIndex& k);
int order_of(const MultiIndex& alpha);  // |alpha| = sum of entries
bool is_nonnegative(const MultiIndex& alpha);

MultiIndex add(const MultiIndex& a, const MultiIndex& b);
MultiIndex sub(const MultiIndex& a, const MultiIndex& b);
MultiIndex negate(const MultiIndex& a);
MultiIndex unit_index(int n, int axis);
MultiIndex zero_index(int n);

/// k^alpha as a double; alpha must be nonnegative.
double int_pow(const MultiIndex& k, const MultiIndex& alpha);

/// Product of componentwise binomial coefficients C(alpha_i, beta_i).
double multi_binomial(const MultiIndex& alpha, const MultiIndex& beta);

/// All nonnegative multi-orders with |beta| <= N, graded lexicographic.
std::vector<MultiIndex> multi_orders_up_to(int n, int N);

/// All beta with 0 <= beta <= alpha componentwise.
std::vector<MultiIndex> sub_orders(const MultiIndex& alpha);

/// Real antisymmetric deformation matrix. Only the strict upper triangle is
/// stored, so theta_{jk} = -theta_{kj} holds exactly by construction.
class ThetaMatrix {
 public:
  ThetaMatrix() : n_(1) {}
  explicit ThetaMatrix(int n);
  ThetaMatrix(int n, std::vector<double> upper_triangle);

  static ThetaMatrix zero(int n) { return ThetaMatrix(n); }

  int dim() const { return n_; }
  double entry(int j, int k) const;
  const std::vector<double>& upper() const { return upper_; }

  bool operator==(const ThetaMatrix& other) const = default;

 private:
  int n_ = 1;
  std::vector<double> upper_;  // row-major strict upper triangle
};

/// Cocycle c(k, l) = sum_{q < p} k_p theta_{pq} l_q governing the twisted
/// product U^k U^l = e^{-2 i pi c(k,l)} U^{k+l}.
double phase(const ThetaMatrix& theta, const MultiIndex& k, const MultiIndex& l);

/// Both sides of (1+|xi+eta|)^m <= (1+|xi|)^m (1+|eta|)^{|m|}.
std::pair<double, double> peetre_bound(double m, std::span<const double> xi,
                                       std::span<const double> eta);

/// Axis-aligned box of lattice points with mixed-radix linear indexing.
class LatticeBox {
 public:
  LatticeBox(MultiIndex lo, MultiIndex hi);
  static LatticeBox centered(int n, int radius);

  int dim() const { return static_cast<int>(lo_.size()); }
  const MultiIndex& lo() const { return lo_; }
  const MultiIndex& hi() const { return hi_; }
  long long size() const { return size_; }
  bool contains(const MultiIndex& k) const;
  long long index(const MultiIndex& k) const;  // -1 when outside
  MultiIndex at(long long idx) const;
  void for_each(const std::function<void(const MultiIndex&)>& fn) const;
  LatticeBox shrunk(const MultiIndex& lo_shift, const MultiIndex& hi_shift) const;

 private:
  MultiIndex lo_, hi_;
  long long size_ = 0;
};

}  // namespace nct

#endif

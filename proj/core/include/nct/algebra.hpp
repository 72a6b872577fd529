#ifndef NCT_ALGEBRA_HPP
#define NCT_ALGEBRA_HPP

#include <limits>
#include <unordered_map>

#include "nct/lattice.hpp"

namespace nct {

inline constexpr int kUncappedRadius = std::numeric_limits<int>::max();

/// Element of the smooth noncommutative torus, held as a truncated sparse
/// table of Fourier coefficients k -> u_k of u = sum u_k U^k. Coefficients
/// with |u_k| below kCoeffDropThreshold are absent from the table.
class AlgebraElement {
 public:
  using CoeffMap = std::unordered_map<MultiIndex, cplx, MultiIndexHash>;

  explicit AlgebraElement(ThetaMatrix theta) : theta_(std::move(theta)) {}

  static AlgebraElement identity(const ThetaMatrix& theta);
  /// c * U^k
  static AlgebraElement basis(const ThetaMatrix& theta, const MultiIndex& k, cplx c = 1.0);

  int dim() const { return theta_.dim(); }
  const ThetaMatrix& theta() const { return theta_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  cplx coeff(const MultiIndex& k) const;
  void set_coeff(const MultiIndex& k, cplx value);
  void add_coeff(const MultiIndex& k, cplx value);
  /// Removes entries below the drop threshold.
  void prune(double threshold = kCoeffDropThreshold);

  /// Support radius: max sup-norm over stored indices (0 when empty).
  int radius() const;

  double l1_norm() const;
  double max_abs_coeff() const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(cplx scalar);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(cplx s, AlgebraElement a) { return a *= s; }

 private:
  ThetaMatrix theta_;
  CoeffMap coeffs_;
};

/// Max |u_k - v_k| over the union of supports.
double coeff_distance(const AlgebraElement& u, const AlgebraElement& v);
/// Same restricted to |k|_inf <= radius.
double coeff_distance_within(const AlgebraElement& u, const AlgebraElement& v, int radius);

/// Twisted product (uv)_m = sum_{k+l=m} u_k v_l e^{-2 i pi c(k,l)}.
/// The product is formed on the full Minkowski support and then truncated to
/// `radius_cap`; the l1 mass of the discarded terms is written to
/// `discarded_tail` when non-null.
AlgebraElement multiply(const AlgebraElement& u, const AlgebraElement& v,
                        int radius_cap = kUncappedRadius, double* discarded_tail = nullptr);

/// (u*)_m = conj(u_{-m}) e^{-2 i pi c(m,m)}.
AlgebraElement involution(const AlgebraElement& u);

/// tau(u) = u_0.
cplx trace(const AlgebraElement& u);

/// <u, v> = tau(u v*) = sum_k u_k conj(v_k).
cplx inner_product(const AlgebraElement& u, const AlgebraElement& v);

/// (delta^alpha u)_k = k^alpha u_k; alpha must be nonnegative.
AlgebraElement derivation(const AlgebraElement& u, const MultiIndex& alpha);

/// (alpha_s u)_k = e^{i s.k} u_k.
AlgebraElement act(const AlgebraElement& u, std::span<const double> s);

struct DecayReport {
  std::vector<std::pair<int, double>> shells;  // (r, max |u_k| on |k|_inf = r)
  double fitted_order = 0.0;                   // slope of log max vs log(1+r)
  bool fitted_order_defined = false;
  double tail_mass = 0.0;  // sum |u_k| on the outermost shell
};

DecayReport decay_report(const AlgebraElement& u);

}  // namespace nct

#endif

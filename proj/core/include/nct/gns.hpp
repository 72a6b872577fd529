#ifndef NCT_GNS_HPP
#define NCT_GNS_HPP

#include <Eigen/Dense>

#include "nct/algebra.hpp"

namespace nct {

/// Matrix of left multiplication by an element on span{U^k : |k|_inf <= R},
/// projected back to that span. Entries M_{m,k} = u_{m-k} e^{-2 i pi c(m-k,k)}.
class TruncatedRep {
 public:
  TruncatedRep(ThetaMatrix theta, int radius);

  int radius() const { return radius_; }
  long long matrix_dim() const { return box_.size(); }
  const LatticeBox& box() const { return box_; }
  const ThetaMatrix& theta() const { return theta_; }
  Eigen::MatrixXcd& matrix() { return m_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }

 private:
  ThetaMatrix theta_;
  int radius_;
  LatticeBox box_;
  Eigen::MatrixXcd m_;
};

TruncatedRep represent(const AlgebraElement& u, int radius);

/// Largest singular value of represent(u, radius); a lower bound for the
/// C*-norm, monotone nondecreasing in the radius.
double norm_estimate(const AlgebraElement& u, int radius);

/// Reads the column over the cyclic vector (lattice point 0) back into an
/// element. This recovers f(u) from f(represent(u)) since f(u).1 has Fourier
/// coefficients <f(u), U^k>.
AlgebraElement read_back_column(const TruncatedRep& rep);

enum class MatrixFunction { exp, log, sqrt, power, inverse };

struct GnsDiagnostics {
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double condition = 0.0;
  double residual = 0.0;
  int trusted_radius = 0;
};

/// Coefficients with |k|_inf beyond this radius are boundary-polluted by the
/// truncation and should not be trusted.
int trusted_radius(int radius);

/// f(u) for selfadjoint u via the Hermitian eigendecomposition of the
/// truncated representation. Branch-cut functions (log, sqrt, non-integer
/// power, inverse) require a strictly positive spectrum estimate.
AlgebraElement functional_calculus(const AlgebraElement& u, MatrixFunction f, int radius,
                                   double power_exponent = 1.0, GnsDiagnostics* diag = nullptr);

/// Approximate inverse from an LU solve of the truncated representation; the
/// interior residual of multiply(u, v) - 1 is reported in diagnostics.
AlgebraElement invert(const AlgebraElement& u, int radius, GnsDiagnostics* diag = nullptr,
                      double condition_bound = 1e12);

/// Positive invertible matrix g = (g_ij) over the algebra with selfadjoint
/// entries; the Riemannian metric datum for the Laplace-Beltrami operator.
class MetricTensor {
 public:
  explicit MetricTensor(std::vector<std::vector<AlgebraElement>> entries,
                        double selfadjoint_tol = 1e-12);

  static MetricTensor identity(const ThetaMatrix& theta);
  /// c * identity for a positive scalar-like element c.
  static MetricTensor conformal(const AlgebraElement& c);

  int dim() const { return static_cast<int>(entries_.size()); }
  const ThetaMatrix& theta() const { return entries_[0][0].theta(); }
  const AlgebraElement& entry(int i, int j) const { return entries_[i][j]; }

  /// Min/max eigenvalue of the truncated block representation.
  std::pair<double, double> positivity_certificate(int radius) const;
  Eigen::MatrixXcd block_representation(int radius) const;

 private:
  std::vector<std::vector<AlgebraElement>> entries_;
};

/// nu = sqrt(det g) = exp(1/2 Tr log g) and its inverse, via block functional
/// calculus on the truncated representation.
std::pair<AlgebraElement, AlgebraElement> metric_det_sqrt(const MetricTensor& g, int radius,
                                                          GnsDiagnostics* diag = nullptr);

/// Entrywise read-back of the inverse of the truncated block matrix. The max
/// interior residual of sum_j g_ij g^jk - delta_ik is reported.
MetricTensor metric_inverse(const MetricTensor& g, int radius, GnsDiagnostics* diag = nullptr);

}  // namespace nct

#endif

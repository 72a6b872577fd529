#ifndef NCT_COMMON_HPP
#define NCT_COMMON_HPP

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace nct {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Coefficients below this magnitude are dropped from sparse tables.
inline constexpr double kCoeffDropThreshold = 1e-15;

/// Thrown when a quadrature or search exceeds its configured budget.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a constructed object fails its own consistency checks.
class construction_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a caller-declared precondition fails at run time.
class precondition_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// C-infinity step: 0 for x <= 0, 1 for x >= 1, strictly monotone between.
double smooth_step(double x);
double smooth_step_derivative(double x);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Composite Gauss-Legendre rule on [a, b] with `panels` equal panels.
void composite_gauss_legendre(double a, double b, int panels, int nodes_per_panel,
                              std::vector<double>& nodes, std::vector<double>& weights);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  int points = 0;
};

/// Least-squares line through (x_i, y_i).
LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

double euclidean_norm(std::span<const double> v);

}  // namespace nct

#endif

#include "nct/common.hpp"

#include <cmath>

namespace nct {

static double bump_half(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = bump_half(x);
  const double b = bump_half(1.0 - x);
  return a / (a + b);
}

double smooth_step_derivative(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double a = bump_half(x);
  const double b = bump_half(1.0 - x);
  const double da = a / (x * x);
  const double db = b / ((1.0 - x) * (1.0 - x));
  const double den = a + b;
  return (da * b + a * db) / (den * den);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw std::invalid_argument("quadrature order must be >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration from the Chebyshev initial guess.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[n - 1 - i] = weights[i];
  }
}

void composite_gauss_legendre(double a, double b, int panels, int nodes_per_panel,
                              std::vector<double>& nodes, std::vector<double>& weights) {
  std::vector<double> x, w;
  gauss_legendre(nodes_per_panel, x, w);
  nodes.clear();
  weights.clear();
  nodes.reserve(static_cast<std::size_t>(panels) * nodes_per_panel);
  weights.reserve(static_cast<std::size_t>(panels) * nodes_per_panel);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    for (int i = 0; i < nodes_per_panel; ++i) {
      nodes.push_back(mid + 0.5 * h * x[i]);
      weights.push_back(0.5 * h * w[i]);
    }
  }
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  LineFit f;
  f.points = static_cast<int>(xs.size());
  if (xs.size() != ys.size() || xs.size() < 2) return f;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= xs.size();
  my /= ys.size();
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (f.intercept + f.slope * xs[i]);
    rss += e * e;
  }
  f.rms_residual = std::sqrt(rss / xs.size());
  return f;
}

double euclidean_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace nct

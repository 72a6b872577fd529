#include "nct/gns.hpp"

#include <cmath>
#include <sstream>

namespace nct {

TruncatedRep::TruncatedRep(ThetaMatrix theta, int radius)
    : theta_(std::move(theta)), radius_(radius), box_(LatticeBox::centered(theta_.dim(), radius)) {
  if (radius < 0) throw std::invalid_argument("representation radius must be >= 0");
  m_ = Eigen::MatrixXcd::Zero(box_.size(), box_.size());
}

TruncatedRep represent(const AlgebraElement& u, int radius) {
  TruncatedRep rep(u.theta(), radius);
  const LatticeBox& box = rep.box();
  for (long long col = 0; col < box.size(); ++col) {
    const MultiIndex k = box.at(col);
    for (const auto& [l, c] : u.coeffs()) {
      const MultiIndex m = add(l, k);
      const long long row = box.index(m);
      if (row < 0) continue;
      rep.matrix()(row, col) += c * std::polar(1.0, -kTwoPi * phase(u.theta(), l, k));
    }
  }
  return rep;
}

double norm_estimate(const AlgebraElement& u, int radius) {
  if (u.empty()) return 0.0;
  if (u.coeffs().size() == 1) {
    // ||c U^k|| = |c| for a single unitary term.
    return std::abs(u.coeffs().begin()->second);
  }
  const TruncatedRep rep = represent(u, radius);
  const Eigen::MatrixXcd gram = rep.matrix().adjoint() * rep.matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  const double lambda = es.eigenvalues().maxCoeff();
  return lambda > 0.0 ? std::sqrt(lambda) : 0.0;
}

AlgebraElement read_back_column(const TruncatedRep& rep) {
  AlgebraElement out(rep.theta());
  const long long center = rep.box().index(zero_index(rep.theta().dim()));
  for (long long row = 0; row < rep.box().size(); ++row) {
    out.set_coeff(rep.box().at(row), rep.matrix()(row, center));
  }
  return out;
}

int trusted_radius(int radius) { return radius - std::max(1, radius / 4); }

static void check_selfadjoint(const AlgebraElement& u) {
  const double scale = std::max(1.0, u.max_abs_coeff());
  if (coeff_distance(u, involution(u)) > 1e-12 * scale)
    throw std::invalid_argument("element is not selfadjoint");
}

static AlgebraElement element_from_vector(const ThetaMatrix& theta, const LatticeBox& box,
                                          const Eigen::VectorXcd& v) {
  AlgebraElement out(theta);
  for (long long i = 0; i < box.size(); ++i) out.set_coeff(box.at(i), v(i));
  return out;
}

AlgebraElement functional_calculus(const AlgebraElement& u, MatrixFunction f, int radius,
                                   double power_exponent, GnsDiagnostics* diag) {
  check_selfadjoint(u);
  TruncatedRep rep = represent(u, radius);
  Eigen::MatrixXcd m = 0.5 * (rep.matrix() + rep.matrix().adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  Eigen::VectorXd lambda = es.eigenvalues();
  const double lmin = lambda.minCoeff();
  const double lmax = lambda.maxCoeff();
  if (diag) {
    diag->min_eigenvalue = lmin;
    diag->max_eigenvalue = lmax;
    diag->trusted_radius = trusted_radius(radius);
  }

  const bool branch_cut = f == MatrixFunction::log || f == MatrixFunction::sqrt ||
                          f == MatrixFunction::inverse ||
                          (f == MatrixFunction::power && power_exponent != std::floor(power_exponent));
  if (branch_cut && lmin <= 1e-10 * std::max(std::abs(lmax), 1e-300)) {
    std::ostringstream msg;
    msg << "spectrum estimate not strictly positive: min eigenvalue " << lmin
        << ", max eigenvalue " << lmax;
    throw std::domain_error(msg.str());
  }

  Eigen::VectorXd flambda(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    switch (f) {
      case MatrixFunction::exp: flambda(i) = std::exp(lambda(i)); break;
      case MatrixFunction::log: flambda(i) = std::log(lambda(i)); break;
      case MatrixFunction::sqrt: flambda(i) = std::sqrt(lambda(i)); break;
      case MatrixFunction::power: flambda(i) = std::pow(lambda(i), power_exponent); break;
      case MatrixFunction::inverse: flambda(i) = 1.0 / lambda(i); break;
    }
  }

  const long long center = rep.box().index(zero_index(u.dim()));
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(rep.box().size());
  e0(center) = 1.0;
  const Eigen::VectorXcd w = es.eigenvectors() *
                             (flambda.array() * (es.eigenvectors().adjoint() * e0).array()).matrix();
  return element_from_vector(u.theta(), rep.box(), w);
}

AlgebraElement invert(const AlgebraElement& u, int radius, GnsDiagnostics* diag,
                      double condition_bound) {
  TruncatedRep rep = represent(u, radius);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(rep.matrix());
  const double rcond = lu.rcond();
  if (!(rcond > 1.0 / condition_bound)) {
    std::ostringstream msg;
    msg << "truncated representation numerically singular: reciprocal condition " << rcond;
    throw std::domain_error(msg.str());
  }
  const long long center = rep.box().index(zero_index(u.dim()));
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(rep.box().size());
  e0(center) = 1.0;
  const Eigen::VectorXcd x = lu.solve(e0);
  AlgebraElement v = element_from_vector(u.theta(), rep.box(), x);
  if (diag) {
    diag->condition = 1.0 / rcond;
    diag->trusted_radius = trusted_radius(radius);
    AlgebraElement resid = multiply(u, v) - AlgebraElement::identity(u.theta());
    double m = 0.0;
    for (const auto& [k, c] : resid.coeffs())
      if (sup_norm(k) <= diag->trusted_radius) m = std::max(m, std::abs(c));
    diag->residual = m;
  }
  return v;
}

MetricTensor::MetricTensor(std::vector<std::vector<AlgebraElement>> entries, double selfadjoint_tol)
    : entries_(std::move(entries)) {
  const std::size_t n = entries_.size();
  if (n == 0) throw std::invalid_argument("empty metric");
  for (const auto& row : entries_)
    if (row.size() != n) throw std::invalid_argument("metric matrix must be square");
  const ThetaMatrix& th = entries_[0][0].theta();
  if (static_cast<int>(n) != th.dim())
    throw std::invalid_argument("metric size must equal the torus dimension");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(entries_[i][j].theta() == th)) throw std::invalid_argument("theta mismatch");
      const double scale = std::max(1.0, entries_[i][j].max_abs_coeff());
      if (coeff_distance(entries_[i][j], involution(entries_[i][j])) > selfadjoint_tol * scale)
        throw std::invalid_argument("metric entries must be selfadjoint");
      if (coeff_distance(entries_[i][j], entries_[j][i]) > selfadjoint_tol * scale)
        throw std::invalid_argument("metric matrix must be symmetric");
    }
  }
}

MetricTensor MetricTensor::identity(const ThetaMatrix& theta) {
  const int n = theta.dim();
  std::vector<std::vector<AlgebraElement>> e(n, std::vector<AlgebraElement>(n, AlgebraElement(theta)));
  for (int i = 0; i < n; ++i) e[i][i] = AlgebraElement::identity(theta);
  return MetricTensor(std::move(e));
}

MetricTensor MetricTensor::conformal(const AlgebraElement& c) {
  const int n = c.dim();
  std::vector<std::vector<AlgebraElement>> e(n, std::vector<AlgebraElement>(n, AlgebraElement(c.theta())));
  for (int i = 0; i < n; ++i) e[i][i] = c;
  return MetricTensor(std::move(e));
}

Eigen::MatrixXcd MetricTensor::block_representation(int radius) const {
  const int n = dim();
  const long long d = LatticeBox::centered(theta().dim(), radius).size();
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n * d, n * d);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      b.block(i * d, j * d, d, d) = represent(entries_[i][j], radius).matrix();
    }
  }
  return 0.5 * (b + b.adjoint().eval());
}

std::pair<double, double> MetricTensor::positivity_certificate(int radius) const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block_representation(radius),
                                                     Eigen::EigenvaluesOnly);
  return {es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()};
}

static void require_positive(const std::pair<double, double>& cert) {
  if (cert.first <= 1e-10 * std::max(std::abs(cert.second), 1e-300)) {
    std::ostringstream msg;
    msg << "metric not positive definite: min eigenvalue " << cert.first;
    throw std::domain_error(msg.str());
  }
}

std::pair<AlgebraElement, AlgebraElement> metric_det_sqrt(const MetricTensor& g, int radius,
                                                          GnsDiagnostics* diag) {
  const int n = g.dim();
  const ThetaMatrix& th = g.theta();
  const LatticeBox box = LatticeBox::centered(th.dim(), radius);
  const long long d = box.size();

  const Eigen::MatrixXcd b = g.block_representation(radius);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const double lmin = es.eigenvalues().minCoeff();
  const double lmax = es.eigenvalues().maxCoeff();
  require_positive({lmin, lmax});
  if (diag) {
    diag->min_eigenvalue = lmin;
    diag->max_eigenvalue = lmax;
    diag->trusted_radius = trusted_radius(radius);
  }

  const Eigen::VectorXd loglambda = es.eigenvalues().array().log();
  const long long center = box.index(zero_index(th.dim()));

  // Tr log g read back from the 0-basis column of each diagonal block.
  AlgebraElement tr_log(th);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXcd ei = Eigen::VectorXcd::Zero(n * d);
    ei(i * d + center) = 1.0;
    const Eigen::VectorXcd col =
        es.eigenvectors() * (loglambda.array() * (es.eigenvectors().adjoint() * ei).array()).matrix();
    for (long long row = 0; row < d; ++row) tr_log.add_coeff(box.at(row), col(i * d + row));
  }
  tr_log *= 0.5;
  AlgebraElement sym = 0.5 * (tr_log + involution(tr_log));

  AlgebraElement nu = functional_calculus(sym, MatrixFunction::exp, radius);
  AlgebraElement nu_inv = invert(nu, radius);
  return {std::move(nu), std::move(nu_inv)};
}

MetricTensor metric_inverse(const MetricTensor& g, int radius, GnsDiagnostics* diag) {
  const int n = g.dim();
  const ThetaMatrix& th = g.theta();
  const LatticeBox box = LatticeBox::centered(th.dim(), radius);
  const long long d = box.size();

  const Eigen::MatrixXcd b = g.block_representation(radius);
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b, Eigen::EigenvaluesOnly);
    require_positive({es.eigenvalues().minCoeff(), es.eigenvalues().maxCoeff()});
    if (diag) {
      diag->min_eigenvalue = es.eigenvalues().minCoeff();
      diag->max_eigenvalue = es.eigenvalues().maxCoeff();
    }
  }

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(b);
  const long long center = box.index(zero_index(th.dim()));
  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(n * d, n);
  for (int j = 0; j < n; ++j) rhs(j * d + center, j) = 1.0;
  const Eigen::MatrixXcd sol = lu.solve(rhs);

  std::vector<std::vector<AlgebraElement>> inv(n, std::vector<AlgebraElement>(n, AlgebraElement(th)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      AlgebraElement e(th);
      for (long long row = 0; row < d; ++row) e.set_coeff(box.at(row), sol(i * d + row, j));
      inv[i][j] = std::move(e);
    }
  }
  // B^{-1} is Hermitian, so symmetrize block pairs against LU rounding and
  // boundary pollution before the constructor's selfadjointness checks.
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      AlgebraElement s = 0.5 * (inv[i][j] + involution(inv[j][i]));
      inv[i][j] = s;
      inv[j][i] = involution(s);
    }
    inv[i][i] = 0.5 * (inv[i][i] + involution(inv[i][i]));
  }
  MetricTensor out(inv, 1e-6);

  if (diag) {
    diag->trusted_radius = trusted_radius(radius);
    double resid = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        AlgebraElement s(th);
        for (int j = 0; j < n; ++j) s += multiply(g.entry(i, j), out.entry(j, k));
        if (i == k) s -= AlgebraElement::identity(th);
        resid = std::max(resid, [&] {
          double m = 0.0;
          for (const auto& [kk, c] : s.coeffs())
            if (sup_norm(kk) <= diag->trusted_radius) m = std::max(m, std::abs(c));
          return m;
        }());
      }
    }
    diag->residual = resid;
  }
  return out;
}

}  // namespace nct

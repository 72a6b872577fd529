#include "nct/algebra.hpp"

#include <cmath>

namespace nct {

AlgebraElement AlgebraElement::identity(const ThetaMatrix& theta) {
  AlgebraElement u(theta);
  u.set_coeff(zero_index(theta.dim()), 1.0);
  return u;
}

AlgebraElement AlgebraElement::basis(const ThetaMatrix& theta, const MultiIndex& k, cplx c) {
  if (static_cast<int>(k.size()) != theta.dim())
    throw std::invalid_argument("lattice point dimension mismatch");
  AlgebraElement u(theta);
  u.set_coeff(k, c);
  return u;
}

cplx AlgebraElement::coeff(const MultiIndex& k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? cplx(0.0) : it->second;
}

void AlgebraElement::set_coeff(const MultiIndex& k, cplx value) {
  if (static_cast<int>(k.size()) != dim())
    throw std::invalid_argument("lattice point dimension mismatch");
  if (std::abs(value) < kCoeffDropThreshold) {
    coeffs_.erase(k);
  } else {
    coeffs_[k] = value;
  }
}

void AlgebraElement::add_coeff(const MultiIndex& k, cplx value) { set_coeff(k, coeff(k) + value); }

void AlgebraElement::prune(double threshold) {
  for (auto it = coeffs_.begin(); it != coeffs_.end();) {
    if (std::abs(it->second) < threshold) {
      it = coeffs_.erase(it);
    } else {
      ++it;
    }
  }
}

int AlgebraElement::radius() const {
  int r = 0;
  for (const auto& [k, c] : coeffs_) r = std::max(r, sup_norm(k));
  return r;
}

double AlgebraElement::l1_norm() const {
  double s = 0.0;
  for (const auto& [k, c] : coeffs_) s += std::abs(c);
  return s;
}

double AlgebraElement::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [k, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  if (!(theta_ == other.theta_)) throw std::invalid_argument("theta mismatch");
  for (const auto& [k, c] : other.coeffs_) add_coeff(k, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  if (!(theta_ == other.theta_)) throw std::invalid_argument("theta mismatch");
  for (const auto& [k, c] : other.coeffs_) add_coeff(k, -c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(cplx scalar) {
  if (std::abs(scalar) == 0.0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [k, c] : coeffs_) c *= scalar;
  prune();
  return *this;
}

double coeff_distance(const AlgebraElement& u, const AlgebraElement& v) {
  double m = 0.0;
  for (const auto& [k, c] : u.coeffs()) m = std::max(m, std::abs(c - v.coeff(k)));
  for (const auto& [k, c] : v.coeffs()) m = std::max(m, std::abs(c - u.coeff(k)));
  return m;
}

double coeff_distance_within(const AlgebraElement& u, const AlgebraElement& v, int radius) {
  double m = 0.0;
  for (const auto& [k, c] : u.coeffs())
    if (sup_norm(k) <= radius) m = std::max(m, std::abs(c - v.coeff(k)));
  for (const auto& [k, c] : v.coeffs())
    if (sup_norm(k) <= radius) m = std::max(m, std::abs(c - u.coeff(k)));
  return m;
}

AlgebraElement multiply(const AlgebraElement& u, const AlgebraElement& v, int radius_cap,
                        double* discarded_tail) {
  if (!(u.theta() == v.theta())) throw std::invalid_argument("theta mismatch");
  AlgebraElement::CoeffMap acc;
  double tail = 0.0;
  for (const auto& [k, a] : u.coeffs()) {
    for (const auto& [l, b] : v.coeffs()) {
      const MultiIndex m = add(k, l);
      const cplx term = a * b * std::polar(1.0, -kTwoPi * phase(u.theta(), k, l));
      if (sup_norm(m) > radius_cap) {
        tail += std::abs(term);
      } else {
        acc[m] += term;
      }
    }
  }
  AlgebraElement out(u.theta());
  for (auto& [m, c] : acc) out.set_coeff(m, c);
  if (discarded_tail) *discarded_tail = tail;
  return out;
}

AlgebraElement involution(const AlgebraElement& u) {
  AlgebraElement out(u.theta());
  for (const auto& [k, c] : u.coeffs()) {
    const MultiIndex m = negate(k);
    out.set_coeff(m, std::conj(c) * std::polar(1.0, -kTwoPi * phase(u.theta(), m, m)));
  }
  return out;
}

cplx trace(const AlgebraElement& u) { return u.coeff(zero_index(u.dim())); }

cplx inner_product(const AlgebraElement& u, const AlgebraElement& v) {
  if (!(u.theta() == v.theta())) throw std::invalid_argument("theta mismatch");
  cplx s = 0.0;
  for (const auto& [k, c] : u.coeffs()) s += c * std::conj(v.coeff(k));
  return s;
}

AlgebraElement derivation(const AlgebraElement& u, const MultiIndex& alpha) {
  if (static_cast<int>(alpha.size()) != u.dim())
    throw std::invalid_argument("multi-order dimension mismatch");
  if (!is_nonnegative(alpha)) throw std::invalid_argument("negative multi-order");
  AlgebraElement out(u.theta());
  for (const auto& [k, c] : u.coeffs()) {
    const double f = int_pow(k, alpha);
    if (f != 0.0) out.set_coeff(k, f * c);
  }
  return out;
}

AlgebraElement act(const AlgebraElement& u, std::span<const double> s) {
  if (static_cast<int>(s.size()) != u.dim())
    throw std::invalid_argument("action vector dimension mismatch");
  AlgebraElement out(u.theta());
  for (const auto& [k, c] : u.coeffs()) {
    double dot = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) dot += s[i] * k[i];
    out.set_coeff(k, c * std::polar(1.0, dot));
  }
  return out;
}

DecayReport decay_report(const AlgebraElement& u) {
  DecayReport rep;
  if (u.empty()) return rep;
  const int R = u.radius();
  std::vector<double> shell_max(static_cast<std::size_t>(R) + 1, 0.0);
  std::vector<double> shell_sum(static_cast<std::size_t>(R) + 1, 0.0);
  for (const auto& [k, c] : u.coeffs()) {
    const int r = sup_norm(k);
    shell_max[r] = std::max(shell_max[r], std::abs(c));
    shell_sum[r] += std::abs(c);
  }
  std::vector<double> xs, ys;
  for (int r = 0; r <= R; ++r) {
    rep.shells.emplace_back(r, shell_max[r]);
    if (shell_max[r] > 0.0) {
      xs.push_back(std::log(1.0 + r));
      ys.push_back(std::log(shell_max[r]));
    }
  }
  rep.tail_mass = shell_sum[R];
  if (xs.size() >= 2) {
    rep.fitted_order = fit_line(xs, ys).slope;
    rep.fitted_order_defined = true;
  }
  return rep;
}

}  // namespace nct

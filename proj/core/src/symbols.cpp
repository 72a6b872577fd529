#include "nct/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "nct/gns.hpp"

namespace nct {

double CutoffSpec::chi_radial(double r) const {
  if (r <= r0) return 1.0;
  if (r >= r1) return 0.0;
  return smooth_step((r1 - r) / (r1 - r0));
}

double CutoffSpec::chi_radial_derivative(double r) const {
  if (r <= r0 || r >= r1) return 0.0;
  return -smooth_step_derivative((r1 - r) / (r1 - r0)) / (r1 - r0);
}

double CutoffSpec::chi(std::span<const double> xi) const { return chi_radial(euclidean_norm(xi)); }

HomogeneousSymbol::HomogeneousSymbol(ThetaMatrix theta, cplx degree)
    : theta_(std::move(theta)), degree_(degree) {}

HomogeneousSymbol::HomogeneousSymbol(ThetaMatrix theta, cplx degree, std::vector<Term> terms)
    : theta_(std::move(theta)), degree_(degree) {
  for (auto& t : terms) add_term(t.alpha, t.coeff);
}

HomogeneousSymbol HomogeneousSymbol::radial_power(const ThetaMatrix& theta, cplx degree,
                                                  cplx scale) {
  HomogeneousSymbol h(theta, degree);
  h.add_term(zero_index(theta.dim()), scale * AlgebraElement::identity(theta));
  return h;
}

HomogeneousSymbol HomogeneousSymbol::monomial(const AlgebraElement& a, const MultiIndex& alpha) {
  HomogeneousSymbol h(a.theta(), static_cast<double>(order_of(alpha)));
  h.add_term(alpha, a);
  return h;
}

void HomogeneousSymbol::add_term(const MultiIndex& alpha, const AlgebraElement& coeff) {
  if (static_cast<int>(alpha.size()) != dim())
    throw std::invalid_argument("term multi-order dimension mismatch");
  if (!is_nonnegative(alpha)) throw std::invalid_argument("negative term multi-order");
  if (!(coeff.theta() == theta_)) throw std::invalid_argument("theta mismatch");
  for (auto& t : terms_) {
    if (t.alpha == alpha) {
      t.coeff += coeff;
      if (t.coeff.max_abs_coeff() < kCoeffDropThreshold) {
        terms_.erase(terms_.begin() + (&t - terms_.data()));
      }
      return;
    }
  }
  if (coeff.max_abs_coeff() >= kCoeffDropThreshold) terms_.push_back({alpha, coeff});
}

static cplx complex_radial_pow(double r, cplx z) {
  return std::exp(z * std::log(r));  // r > 0
}

AlgebraElement eval_homogeneous(const HomogeneousSymbol& h, std::span<const double> xi) {
  if (static_cast<int>(xi.size()) != h.dim())
    throw std::invalid_argument("evaluation point dimension mismatch");
  const double r = euclidean_norm(xi);
  if (r == 0.0) throw std::domain_error("homogeneous symbols live on R^n minus 0");
  AlgebraElement out(h.theta());
  for (const auto& t : h.terms()) {
    double mono = 1.0;
    for (std::size_t i = 0; i < xi.size(); ++i)
      for (int p = 0; p < t.alpha[i]; ++p) mono *= xi[i];
    const cplx factor = mono * complex_radial_pow(r, h.degree() - static_cast<double>(order_of(t.alpha)));
    AlgebraElement scaled = t.coeff;
    scaled *= factor;
    out += scaled;
  }
  return out;
}

HomogeneousSymbol diff_homogeneous(const HomogeneousSymbol& h, int axis) {
  if (axis < 0 || axis >= h.dim()) throw std::invalid_argument("axis out of range");
  HomogeneousSymbol out(h.theta(), h.degree() - 1.0);
  for (const auto& t : h.terms()) {
    const cplx s = h.degree() - static_cast<double>(order_of(t.alpha));
    if (t.alpha[axis] > 0) {
      MultiIndex down = t.alpha;
      down[axis] -= 1;
      AlgebraElement c = t.coeff;
      c *= static_cast<double>(t.alpha[axis]);
      out.add_term(down, c);
    }
    if (s != cplx(0.0)) {
      MultiIndex up = t.alpha;
      up[axis] += 1;
      AlgebraElement c = t.coeff;
      c *= s;
      out.add_term(up, c);
    }
  }
  return out;
}

HomogeneousSymbol diff_homogeneous(const HomogeneousSymbol& h, const MultiIndex& beta) {
  HomogeneousSymbol out = h;
  for (std::size_t axis = 0; axis < beta.size(); ++axis)
    for (int t = 0; t < beta[axis]; ++t) out = diff_homogeneous(out, static_cast<int>(axis));
  return out;
}

HomogeneousSymbol delta_homogeneous(const HomogeneousSymbol& h, const MultiIndex& alpha) {
  HomogeneousSymbol out(h.theta(), h.degree());
  for (const auto& t : h.terms()) out.add_term(t.alpha, derivation(t.coeff, alpha));
  return out;
}

HomogeneousSymbol homogeneous_product(const HomogeneousSymbol& a, const HomogeneousSymbol& b) {
  if (!(a.theta() == b.theta())) throw std::invalid_argument("theta mismatch");
  HomogeneousSymbol out(a.theta(), a.degree() + b.degree());
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) out.add_term(add(ta.alpha, tb.alpha), multiply(ta.coeff, tb.coeff));
  return out;
}

HomogeneousSymbol homogeneous_involution(const HomogeneousSymbol& h) {
  HomogeneousSymbol out(h.theta(), std::conj(h.degree()));
  for (const auto& t : h.terms()) out.add_term(t.alpha, involution(t.coeff));
  return out;
}

HomogeneousSymbol homogeneous_sum(const HomogeneousSymbol& a, const HomogeneousSymbol& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("degree mismatch in homogeneous sum");
  HomogeneousSymbol out = a;
  for (const auto& t : b.terms()) out.add_term(t.alpha, t.coeff);
  return out;
}

ClassicalSymbol::ClassicalSymbol(cplx order, std::vector<HomogeneousSymbol> components,
                                 CutoffSpec excision)
    : order_(order), components_(std::move(components)), excision_(excision) {
  if (components_.empty()) throw std::invalid_argument("classical symbol needs components");
  for (int j = 0; j < static_cast<int>(components_.size()); ++j) {
    if (std::abs(components_[j].degree() - (order_ - static_cast<double>(j))) > 1e-12)
      throw std::invalid_argument("component degree must be order - j");
  }
}

ClassicalSymbol classical_product(const ClassicalSymbol& rho, const ClassicalSymbol& sigma, int J) {
  if (!(rho.theta() == sigma.theta())) throw std::invalid_argument("theta mismatch");
  if (rho.component_count() < J + 1 || sigma.component_count() < J + 1) {
    std::ostringstream msg;
    msg << "classical product through offset " << J << " needs " << (J + 1)
        << " components on both factors";
    throw std::invalid_argument(msg.str());
  }
  std::vector<HomogeneousSymbol> comps;
  for (int j = 0; j <= J; ++j) {
    HomogeneousSymbol cj(rho.theta(), rho.order() + sigma.order() - static_cast<double>(j));
    for (int p = 0; p <= j; ++p) {
      const int r = j - p;
      cj = homogeneous_sum(cj, homogeneous_product(rho.component(p), sigma.component(r)));
    }
    comps.push_back(std::move(cj));
  }
  return ClassicalSymbol(rho.order() + sigma.order(), std::move(comps), rho.excision());
}

ClassicalSymbol classical_involution(const ClassicalSymbol& rho) {
  std::vector<HomogeneousSymbol> comps;
  comps.reserve(rho.component_count());
  for (int j = 0; j < rho.component_count(); ++j)
    comps.push_back(homogeneous_involution(rho.component(j)));
  return ClassicalSymbol(std::conj(rho.order()), std::move(comps), rho.excision());
}

ClassicalSymbol classical_derivative(const ClassicalSymbol& rho, const MultiIndex& alpha,
                                     const MultiIndex& beta) {
  std::vector<HomogeneousSymbol> comps;
  comps.reserve(rho.component_count());
  for (int j = 0; j < rho.component_count(); ++j)
    comps.push_back(delta_homogeneous(diff_homogeneous(rho.component(j), beta), alpha));
  return ClassicalSymbol(rho.order() - static_cast<double>(order_of(beta)), std::move(comps),
                         rho.excision());
}

static cplx generalized_binomial(cplx z, int j) {
  cplx r = 1.0;
  for (int t = 0; t < j; ++t) r *= (z - static_cast<double>(t)) / static_cast<double>(t + 1);
  return r;
}

ClassicalSymbol bracket_xi_power(cplx s, int J, const ThetaMatrix& theta) {
  if (J < 0) throw std::invalid_argument("J must be >= 0");
  std::vector<HomogeneousSymbol> comps;
  for (int j = 0; j <= J; ++j) {
    if (j % 2 == 0) {
      comps.push_back(
          HomogeneousSymbol::radial_power(theta, s - static_cast<double>(j),
                                          generalized_binomial(s * 0.5, j / 2)));
    } else {
      comps.emplace_back(theta, s - static_cast<double>(j));
    }
  }
  return ClassicalSymbol(s, std::move(comps));
}

AlgebraElement evaluate_classical(const ClassicalSymbol& rho, std::span<const double> xi) {
  const double factor = rho.excision().excision_factor(xi);
  AlgebraElement out(rho.theta());
  if (factor == 0.0) return out;
  for (int j = 0; j < rho.component_count(); ++j) {
    if (rho.component(j).is_zero()) continue;
    AlgebraElement e = eval_homogeneous(rho.component(j), xi);
    e *= factor;
    out += e;
  }
  return out;
}

AlgebraElement StandardSymbol::xi_derivative(std::span<const double> xi,
                                             const MultiIndex& beta) const {
  // Central finite differences, applied recursively one axis at a time.
  int axis = -1;
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (beta[i] > 0) axis = static_cast<int>(i);
  if (axis < 0) return evaluate(xi);
  MultiIndex lower = beta;
  lower[axis] -= 1;
  const double h = 1e-4 * std::max(1.0, euclidean_norm(xi) * 1e-2);
  std::vector<double> xp(xi.begin(), xi.end()), xm(xi.begin(), xi.end());
  xp[axis] += h;
  xm[axis] -= h;
  AlgebraElement d = xi_derivative(xp, lower) - xi_derivative(xm, lower);
  d *= 1.0 / (2.0 * h);
  return d;
}

AlgebraElement ClassicalEvaluator::evaluate(std::span<const double> xi) const {
  return evaluate_classical(rho_, xi);
}

AlgebraElement ClassicalEvaluator::xi_derivative(std::span<const double> xi,
                                                 const MultiIndex& beta) const {
  if (euclidean_norm(xi) >= rho_.excision().r1) {
    ClassicalSymbol d = classical_derivative(rho_, zero_index(dim()), beta);
    AlgebraElement out(rho_.theta());
    for (int j = 0; j < d.component_count(); ++j) {
      if (d.component(j).is_zero()) continue;
      out += eval_homogeneous(d.component(j), xi);
    }
    return out;
  }
  return StandardSymbol::xi_derivative(xi, beta);
}

BracketPowerSymbol::BracketPowerSymbol(cplx s, const ThetaMatrix& theta) : s_(s), theta_(theta) {}

std::vector<BracketPowerSymbol::Term> BracketPowerSymbol::derivative_terms(
    const MultiIndex& beta) const {
  std::vector<Term> terms{{zero_index(dim()), 0, 1.0}};
  for (std::size_t axis = 0; axis < beta.size(); ++axis) {
    for (int rep = 0; rep < beta[axis]; ++rep) {
      std::map<std::pair<MultiIndex, int>, cplx> merged;
      for (const auto& t : terms) {
        const cplx expo = s_ * 0.5 - static_cast<double>(t.level);
        if (t.alpha[axis] > 0) {
          MultiIndex down = t.alpha;
          down[axis] -= 1;
          merged[{down, t.level}] += t.coeff * static_cast<double>(t.alpha[axis]);
        }
        MultiIndex up = t.alpha;
        up[axis] += 1;
        merged[{up, t.level + 1}] += t.coeff * 2.0 * expo;
      }
      terms.clear();
      for (const auto& [key, c] : merged)
        if (std::abs(c) > 0.0) terms.push_back({key.first, key.second, c});
    }
  }
  return terms;
}

AlgebraElement BracketPowerSymbol::evaluate(std::span<const double> xi) const {
  double r2 = 0.0;
  for (double x : xi) r2 += x * x;
  const cplx v = std::exp(s_ * 0.5 * std::log1p(r2));
  return AlgebraElement::basis(theta_, zero_index(dim()), v);
}

AlgebraElement BracketPowerSymbol::xi_derivative(std::span<const double> xi,
                                                 const MultiIndex& beta) const {
  double r2 = 0.0;
  for (double x : xi) r2 += x * x;
  cplx total = 0.0;
  for (const auto& t : derivative_terms(beta)) {
    double mono = 1.0;
    for (std::size_t i = 0; i < xi.size(); ++i)
      for (int p = 0; p < t.alpha[i]; ++p) mono *= xi[i];
    total += t.coeff * mono * std::exp((s_ * 0.5 - static_cast<double>(t.level)) * std::log1p(r2));
  }
  return AlgebraElement::basis(theta_, zero_index(dim()), total);
}

SamplingGrid SamplingGrid::standard(int n) {
  SamplingGrid g;
  g.directions = (n == 1) ? 2 : 26;
  for (int p = 0; p <= 10; ++p) g.radii.push_back(std::pow(2.0, p));
  return g;
}

std::vector<std::vector<double>> SamplingGrid::direction_vectors(int n) const {
  std::vector<std::vector<double>> dirs;
  if (n == 1) {
    dirs.push_back({1.0});
    dirs.push_back({-1.0});
    return dirs;
  }
  if (n == 2) {
    for (int i = 0; i < directions; ++i) {
      const double t = kTwoPi * i / directions;
      dirs.push_back({std::cos(t), std::sin(t)});
    }
    return dirs;
  }
  // Deterministic low-discrepancy directions for n >= 3.
  std::uint64_t state = 88172645463325252ull;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return static_cast<double>(state % 1000000ull) / 500000.0 - 1.0;
  };
  for (int i = 0; i < directions; ++i) {
    std::vector<double> d(n);
    double norm = 0.0;
    do {
      for (int j = 0; j < n; ++j) d[j] = next();
      norm = euclidean_norm(d);
    } while (norm < 1e-3);
    for (int j = 0; j < n; ++j) d[j] /= norm;
    dirs.push_back(std::move(d));
  }
  return dirs;
}

double element_norm_lower(const AlgebraElement& u, int radius) {
  if (u.coeffs().size() <= 1) return u.max_abs_coeff();
  return norm_estimate(u, radius);
}

SeminormEstimate seminorm_estimate(const StandardSymbol& rho, int N, double m,
                                   const SamplingGrid& grid) {
  SeminormEstimate est;
  est.N = N;
  est.m = m;
  est.norm_radius = grid.norm_radius;
  const int n = rho.dim();
  const auto dirs = grid.direction_vectors(n);
  const auto orders = multi_orders_up_to(n, N);
  double best = 0.0;
  std::vector<double> xi(n);
  for (const auto& alpha : orders) {
    for (const auto& beta : orders) {
      if (order_of(alpha) + order_of(beta) > N) continue;
      for (const auto& d : dirs) {
        for (double r : grid.radii) {
          for (int i = 0; i < n; ++i) xi[i] = r * d[i];
          AlgebraElement e = (order_of(beta) == 0) ? rho.evaluate(xi) : rho.xi_derivative(xi, beta);
          if (order_of(alpha) > 0) e = derivation(e, alpha);
          const double w = std::pow(1.0 + r, -m + order_of(beta));
          best = std::max(best, w * element_norm_lower(e, grid.norm_radius));
        }
      }
    }
  }
  est.value = best;
  return est;
}

double order_fit(const StandardSymbol& rho, const SamplingGrid& grid) {
  const int n = rho.dim();
  const auto dirs = grid.direction_vectors(n);
  std::vector<double> xs, ys;
  std::vector<double> xi(n);
  for (double r : grid.radii) {
    double shell_max = 0.0;
    for (const auto& d : dirs) {
      for (int i = 0; i < n; ++i) xi[i] = r * d[i];
      shell_max = std::max(shell_max, element_norm_lower(rho.evaluate(xi), grid.norm_radius));
    }
    if (shell_max > 1e-250) {
      xs.push_back(std::log(1.0 + r));
      ys.push_back(std::log(shell_max));
    }
  }
  if (xs.size() < 2) return -std::numeric_limits<double>::infinity();
  return fit_line(xs, ys).slope;
}

BorelSymbol::BorelSymbol(std::vector<HomogeneousSymbol> components, std::vector<double> epsilons,
                         CutoffSpec profile)
    : components_(std::move(components)), epsilons_(std::move(epsilons)), profile_(profile) {
  if (components_.size() != epsilons_.size())
    throw std::invalid_argument("one epsilon per component required");
  if (components_.empty()) throw std::invalid_argument("empty component list");
}

AlgebraElement BorelSymbol::evaluate(std::span<const double> xi) const {
  AlgebraElement out(components_[0].theta());
  const int n = dim();
  std::vector<double> scaled(n);
  for (std::size_t j = 0; j < components_.size(); ++j) {
    for (int i = 0; i < n; ++i) scaled[i] = epsilons_[j] * xi[i];
    const double factor = 1.0 - profile_.chi(scaled);
    if (factor == 0.0 || components_[j].is_zero()) continue;
    AlgebraElement e = eval_homogeneous(components_[j], xi);
    e *= factor;
    out += e;
  }
  return out;
}

namespace {

/// One cutoff-damped homogeneous component as an evaluable symbol.
class DampedComponent final : public StandardSymbol {
 public:
  DampedComponent(const HomogeneousSymbol& h, double eps, const CutoffSpec& profile)
      : h_(h), eps_(eps), profile_(profile) {}
  int dim() const override { return h_.dim(); }
  double order() const override { return h_.degree().real(); }
  AlgebraElement evaluate(std::span<const double> xi) const override {
    std::vector<double> scaled(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) scaled[i] = eps_ * xi[i];
    const double factor = 1.0 - profile_.chi(scaled);
    AlgebraElement out(h_.theta());
    if (factor == 0.0 || h_.is_zero()) return out;
    out = eval_homogeneous(h_, xi);
    out *= factor;
    return out;
  }

 private:
  const HomogeneousSymbol& h_;
  double eps_;
  const CutoffSpec& profile_;
};

}  // namespace

BorelSymbol borel_realize(const std::vector<HomogeneousSymbol>& components, int N,
                          const SamplingGrid& grid, CutoffSpec profile, int halving_budget) {
  if (N > static_cast<int>(components.size()))
    throw std::invalid_argument("fewer components than requested realization depth");
  std::vector<HomogeneousSymbol> used(components.begin(), components.begin() + N);
  std::vector<double> epsilons;
  double eps = 1.0;
  int budget = halving_budget;
  for (int j = 0; j < N; ++j) {
    if (j > 0) eps = std::min(eps, epsilons[j - 1] * 0.5);
    const double m = used[0].degree().real();
    const double target = std::pow(2.0, -(j + 1));
    for (;;) {
      DampedComponent damped(used[j], eps, profile);
      const double p = seminorm_estimate(damped, j, m - j + 1.0, grid).value;
      if (p <= target) break;
      if (budget-- <= 0) {
        std::ostringstream msg;
        msg << "cutoff scale search exhausted its halving budget at component " << j
            << "; best eps " << eps;
        throw construction_error(msg.str());
      }
      eps *= 0.5;
    }
    epsilons.push_back(eps);
  }
  return BorelSymbol(std::move(used), std::move(epsilons), profile);
}

}  // namespace nct

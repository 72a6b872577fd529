#ifndef NCT_SYMBOLS_HPP
#define NCT_SYMBOLS_HPP

#include <memory>
#include <optional>

#include "nct/algebra.hpp"

namespace nct {

/// Radial cutoff profile built from the standard smooth step: equal to 1 on
/// |xi| <= r0 and 0 on |xi| >= r1. `excision` uses the factor (1 - chi),
/// `approximate_unit` uses chi(eps xi) itself.
struct CutoffSpec {
  enum class Kind { excision, approximate_unit };
  Kind kind = Kind::excision;
  double r0 = 0.25;
  double r1 = 0.75;

  double chi_radial(double r) const;
  double chi_radial_derivative(double r) const;
  double chi(std::span<const double> xi) const;
  double excision_factor(std::span<const double> xi) const { return 1.0 - chi(xi); }
};

/// Homogeneous symbol of complex degree q in the closed grammar
///   sum_alpha a_alpha xi^alpha |xi|^{q - |alpha|},  a_alpha in the algebra.
/// The grammar is closed under d/dxi_j, delta^alpha and products.
class HomogeneousSymbol {
 public:
  struct Term {
    MultiIndex alpha;
    AlgebraElement coeff;
  };

  HomogeneousSymbol(ThetaMatrix theta, cplx degree);
  HomogeneousSymbol(ThetaMatrix theta, cplx degree, std::vector<Term> terms);

  /// c |xi|^q
  static HomogeneousSymbol radial_power(const ThetaMatrix& theta, cplx degree, cplx scale = 1.0);
  /// a xi^alpha (degree |alpha|)
  static HomogeneousSymbol monomial(const AlgebraElement& a, const MultiIndex& alpha);

  int dim() const { return theta_.dim(); }
  const ThetaMatrix& theta() const { return theta_; }
  cplx degree() const { return degree_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const MultiIndex& alpha, const AlgebraElement& coeff);

 private:
  ThetaMatrix theta_;
  cplx degree_;
  std::vector<Term> terms_;
};

/// Evaluation at xi != 0 with |xi|^z = exp(z log |xi|).
AlgebraElement eval_homogeneous(const HomogeneousSymbol& h, std::span<const double> xi);
/// d/dxi_j, lowering the degree by exactly one.
HomogeneousSymbol diff_homogeneous(const HomogeneousSymbol& h, int axis);
HomogeneousSymbol diff_homogeneous(const HomogeneousSymbol& h, const MultiIndex& beta);
/// delta^alpha applied to every coefficient (degree unchanged).
HomogeneousSymbol delta_homogeneous(const HomogeneousSymbol& h, const MultiIndex& alpha);
HomogeneousSymbol homogeneous_product(const HomogeneousSymbol& a, const HomogeneousSymbol& b);
HomogeneousSymbol homogeneous_involution(const HomogeneousSymbol& h);
HomogeneousSymbol homogeneous_sum(const HomogeneousSymbol& a, const HomogeneousSymbol& b);

/// Classical symbol of complex order q: the finite list of homogeneous
/// components rho_{q-j}, j = 0..J, together with an excision profile used for
/// evaluation near xi = 0.
class ClassicalSymbol {
 public:
  ClassicalSymbol(cplx order, std::vector<HomogeneousSymbol> components,
                  CutoffSpec excision = {});

  int dim() const { return components_[0].dim(); }
  const ThetaMatrix& theta() const { return components_[0].theta(); }
  cplx order() const { return order_; }
  int component_count() const { return static_cast<int>(components_.size()); }
  /// Component of degree order - j.
  const HomogeneousSymbol& component(int j) const { return components_.at(j); }
  const CutoffSpec& excision() const { return excision_; }

 private:
  cplx order_;
  std::vector<HomogeneousSymbol> components_;
  CutoffSpec excision_;
};

/// Graded product through degree offset J:
/// (rho sigma)_{q+q'-j} = sum_{p+r=j} rho_{q-p} sigma_{q'-r}.
ClassicalSymbol classical_product(const ClassicalSymbol& rho, const ClassicalSymbol& sigma, int J);
ClassicalSymbol classical_involution(const ClassicalSymbol& rho);
/// delta^alpha d_xi^beta applied componentwise; order drops by |beta|.
ClassicalSymbol classical_derivative(const ClassicalSymbol& rho, const MultiIndex& alpha,
                                     const MultiIndex& beta);
/// <xi>^s as a classical symbol: components binom(s/2, j)|xi|^{s-2j} at even
/// offsets 2j <= J, zero components at odd offsets.
ClassicalSymbol bracket_xi_power(cplx s, int J, const ThetaMatrix& theta);
/// sum_j (1 - chi(xi)) eval(rho_{q-j}, xi); the zero element inside the core.
AlgebraElement evaluate_classical(const ClassicalSymbol& rho, std::span<const double> xi);

/// Evaluable standard symbol: anything that can be sampled on R^n. Exact
/// xi-derivatives are optional; a central finite-difference fallback is used
/// otherwise.
class StandardSymbol {
 public:
  virtual ~StandardSymbol() = default;
  virtual int dim() const = 0;
  virtual double order() const = 0;
  virtual AlgebraElement evaluate(std::span<const double> xi) const = 0;
  virtual bool exact_derivatives() const { return false; }
  virtual AlgebraElement xi_derivative(std::span<const double> xi, const MultiIndex& beta) const;
};

/// Classical symbol as an evaluable standard symbol. Derivatives are exact
/// (grammar) outside the excision transition and finite-difference inside.
class ClassicalEvaluator final : public StandardSymbol {
 public:
  explicit ClassicalEvaluator(ClassicalSymbol rho) : rho_(std::move(rho)) {}
  int dim() const override { return rho_.dim(); }
  double order() const override { return rho_.order().real(); }
  AlgebraElement evaluate(std::span<const double> xi) const override;
  bool exact_derivatives() const override { return true; }
  AlgebraElement xi_derivative(std::span<const double> xi, const MultiIndex& beta) const override;
  const ClassicalSymbol& symbol() const { return rho_; }

 private:
  ClassicalSymbol rho_;
};

/// Exact evaluator for <xi>^s = (1 + |xi|^2)^{s/2} with closed-form
/// derivatives of every order; total on R^n, no excision involved.
class BracketPowerSymbol final : public StandardSymbol {
 public:
  BracketPowerSymbol(cplx s, const ThetaMatrix& theta);
  int dim() const override { return theta_.dim(); }
  double order() const override { return s_.real(); }
  AlgebraElement evaluate(std::span<const double> xi) const override;
  bool exact_derivatives() const override { return true; }
  AlgebraElement xi_derivative(std::span<const double> xi, const MultiIndex& beta) const override;
  cplx exponent() const { return s_; }

 private:
  struct Term {
    MultiIndex alpha;
    int level;  // power (1+|xi|^2)^{s/2 - level}
    cplx coeff;
  };
  std::vector<Term> derivative_terms(const MultiIndex& beta) const;
  cplx s_;
  ThetaMatrix theta_;
};

struct SamplingGrid {
  int directions = 26;
  std::vector<double> radii;  // dyadic 1..2^10 by default
  int norm_radius = 3;        // operator-norm estimator radius

  static SamplingGrid standard(int n);
  std::vector<std::vector<double>> direction_vectors(int n) const;
};

struct SeminormEstimate {
  int N = 0;
  double m = 0.0;
  double value = 0.0;
  int norm_radius = 0;
};

/// Sampled sup of (1+|xi|)^{-m+|beta|} ||delta^alpha d^beta rho(xi)|| over
/// |alpha|+|beta| <= N and the grid; a lower bound of the true supremum.
SeminormEstimate seminorm_estimate(const StandardSymbol& rho, int N, double m,
                                   const SamplingGrid& grid);

/// Least-squares slope of log ||rho(xi)|| (operator-norm estimate, shell max
/// over directions) against log(1+|xi|). Returns -infinity when the symbol
/// vanishes on the whole grid.
double order_fit(const StandardSymbol& rho, const SamplingGrid& grid);

/// Finite-N realization of an asymptotic sum: sum_{j<N} (1-chi(eps_j xi))
/// rho_{m-j}(xi) with greedily halved eps_j.
class BorelSymbol final : public StandardSymbol {
 public:
  BorelSymbol(std::vector<HomogeneousSymbol> components, std::vector<double> epsilons,
              CutoffSpec profile);
  int dim() const override { return components_[0].dim(); }
  double order() const override { return components_[0].degree().real(); }
  AlgebraElement evaluate(std::span<const double> xi) const override;
  const std::vector<double>& epsilons() const { return epsilons_; }
  const CutoffSpec& profile() const { return profile_; }
  const HomogeneousSymbol& component(int j) const { return components_.at(j); }
  int component_count() const { return static_cast<int>(components_.size()); }

 private:
  std::vector<HomogeneousSymbol> components_;
  std::vector<double> epsilons_;
  CutoffSpec profile_;
};

/// Chooses eps_0 >= eps_1 >= ... by halving until the sampled seminorm bound
/// p_j^{(m-j+1)}((1-chi(eps_j xi)) rho_{m-j}) <= 2^{-(j+1)} holds, with
/// eps_{j+1} <= eps_j / 2. Throws construction_error (carrying the best eps
/// found) when the halving budget is exhausted.
BorelSymbol borel_realize(const std::vector<HomogeneousSymbol>& components, int N,
                          const SamplingGrid& grid, CutoffSpec profile = {},
                          int halving_budget = 60);

/// Operator-norm lower bound used by the symbol estimators: exact |c| for a
/// single-term element, GNS estimate at `radius` otherwise.
double element_norm_lower(const AlgebraElement& u, int radius);

}  // namespace nct

#endif

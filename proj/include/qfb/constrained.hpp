#ifndef QFB_CONSTRAINED_HPP
#define QFB_CONSTRAINED_HPP

#include <optional>

#include "qfb/bounds.hpp"

namespace qfb {

enum class NormKind { SupNorm, Custom };

// Moment condition restricted to a non-Euclidean ball |gamma|_s <= g_s,
// paired with a Gaussian concentration radius r_star for the same norm
// (P(|eps|_s <= r_star) >= 1/2) and a constraint level u_s on the samples.
struct NormConstraint {
  NormKind norm_kind = NormKind::Custom;
  double g_s = 0.0;
  double r_star = 0.0;
  double u_s = 0.0;

  NormConstraint() = default;
  NormConstraint(NormKind kind, double g_s_, double r_star_, double u_s_);

  static NormConstraint sup_norm(double g_s, int ambient_dim, double u_s);
};

// Root z_s of g_s/mu(z) - r_star/sqrt(mu(z)) = u_s with mu(z) = (z-p)/z,
// or infinite when u_s < g_s - r_star.
struct ConstrainedCriticals {
  double z_s = kInf;
  std::optional<double> mu_s;
  double x_s = kInf;

  bool infinite() const { return !mu_s.has_value(); }
};

// Per-coordinate Bernstein condition log E exp(lambda zeta_i) <=
// lambda^2 sigma^2 / (1 - c |lambda|); the derived sup-norm radius is
// g_s = sigma / c.
struct BernsteinProfile {
  double sigma = 1.0;
  double c = 1.0;
  int ambient_dim = 0;
  int subspace_dim = 0;

  BernsteinProfile() = default;
  BernsteinProfile(double sigma_, double c_, int ambient_dim_, int subspace_dim_);

  double g_s() const { return c == 0.0 ? kInf : sigma / c; }
};

// Scaled + unscaled thresholds of the Bernstein-condition quantile: the bound
// applies to (4 sigma^2)^{-1} |Pi_S zeta|^2 jointly with
// |Pi_S zeta|_inf <= 2 sigma u_s.
struct BernsteinBound {
  TailBound scaled;
  double unscaled_threshold = 0.0;
  double sup_norm_limit = 0.0;
};

// mu(z) = (z - p)/z for z > p; strictly increasing from 0 to 1.
double mu_of_z(int p, double z);

ConstrainedCriticals solve_z_s(const NormConstraint& constraint, int p);

// P(|xi|^2 > z, |xi|_s <= u_s): Gaussian-type bound 2 exp{-(p/2) phi((z-p)/p)}
// for z <= z_s, Markov form 2 exp{-mu_s z/2 - (p/2) log(1-mu_s)} beyond.
TailBound constrained_tail(const NormConstraint& constraint, int p, double z);

// The z > z_s bound rewritten around the anchor: 2 exp{-x_s - slope (z-z_s)/2}.
// The Markov form linearizes with slope mu_s; the alternative uses slope g_s.
struct ConstrainedTailForms {
  double markov = 0.0;
  double g_s_slope = 0.0;
};
ConstrainedTailForms constrained_tail_forms(const NormConstraint& constraint, int p,
                                            double z);

// Truncated exponential-moment bound 2 exp(mu_s^2 v_sq / 4) for a
// sub-projector Pi (spectrum of Pi^2 in [0,1]) and mu_s <= 2/3.
double subprojector_exp_moment_bound(const QuadFormSpec& spec_pi, double mu_s);

// P(|Pi xi|^2 > p_eff + (2 v sqrt(x)) v (6 x), |Pi^2 xi|_s <= u_s) <= 2 e^{-x},
// valid under g_s >= r_star + u_s.
TailBound subprojector_quantile(const QuadFormSpec& spec_pi,
                                const NormConstraint& constraint, double x);

// Quantile for (4 sigma^2)^{-1} |Pi_S zeta|^2 under the Bernstein condition;
// requires g_s >= u_s + r_star with r_star = sqrt(2 log ambient_dim).
BernsteinBound bernstein_quantile(const BernsteinProfile& profile, double u_s,
                                  double x);

// Comparison bound: |Pi_S zeta|_2 > (3 sigma v sqrt(6 c u)) sqrt(x + 3 p_eff)
// with probability <= e^{-x}. `u_level` is the free level inside the sqrt.
TailBound baraud_quantile(const BernsteinProfile& profile, double u_level, double x);
double baraud_squared_threshold(const BernsteinProfile& profile, double u_level,
                                double x);

// r_star = sqrt(2 log m) for the sup-norm of a standard normal m-vector.
double sup_norm_r_star(int m);

}  // namespace qfb

#endif  // QFB_CONSTRAINED_HPP

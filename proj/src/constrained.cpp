#include "qfb/constrained.hpp"

#include <cmath>
#include <string>

namespace qfb {

NormConstraint::NormConstraint(NormKind kind, double g_s_, double r_star_, double u_s_)
    : norm_kind(kind), g_s(g_s_), r_star(r_star_), u_s(u_s_) {
  if (!(g_s > 0.0) || !(r_star > 0.0) || !(u_s > 0.0)) {
    raise(errc::bad_constraint, "g_s, r_star and u_s must all be positive");
  }
}

NormConstraint NormConstraint::sup_norm(double g_s, int ambient_dim, double u_s) {
  return NormConstraint(NormKind::SupNorm, g_s, sup_norm_r_star(ambient_dim), u_s);
}

BernsteinProfile::BernsteinProfile(double sigma_, double c_, int ambient_dim_,
                                   int subspace_dim_)
    : sigma(sigma_), c(c_), ambient_dim(ambient_dim_), subspace_dim(subspace_dim_) {
  if (!(sigma > 0.0) || c < 0.0) {
    raise(errc::bad_args, "sigma must be positive and c nonnegative");
  }
  if (ambient_dim < 2 || subspace_dim < 1 || subspace_dim > ambient_dim) {
    raise(errc::bad_args, "need ambient_dim >= 2 and 1 <= subspace_dim <= ambient_dim");
  }
}

double mu_of_z(int p, double z) {
  if (p < 1) raise(errc::bad_args, "dimension p must be >= 1");
  if (!(z > static_cast<double>(p))) {
    raise(errc::z_not_above_dim, "mu(z) requires z > p");
  }
  return (z - static_cast<double>(p)) / z;
}

namespace {

// g_s / mu - r_star / sqrt(mu), written in t = 1/sqrt(mu).
double constraint_map(const NormConstraint& c, double t) {
  return c.g_s * t * t - c.r_star * t;
}

}  // namespace

ConstrainedCriticals solve_z_s(const NormConstraint& constraint, int p) {
  if (p < 1) raise(errc::bad_args, "dimension p must be >= 1");
  ConstrainedCriticals out;
  if (constraint.u_s <= constraint.g_s - constraint.r_star) {
    return out;  // z_s = x_s = inf, mu_s unset
  }
  // In t = mu^{-1/2} in (1, inf) the defining equation is the quadratic
  // g_s t^2 - r_star t = u_s, increasing past its vertex; the relevant root
  // is the unique t >= 1 (mu < 1).
  double lo = 1.0;
  double hi = 2.0;
  while (constraint_map(constraint, hi) < constraint.u_s) {
    hi *= 2.0;
    if (hi > 1e154) raise(errc::bad_constraint, "constraint root diverged");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-17 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (constraint_map(constraint, mid) < constraint.u_s ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 2; ++it) {  // Newton polish on the quadratic
    const double deriv = 2.0 * constraint.g_s * t - constraint.r_star;
    if (deriv <= 0.0) break;
    t -= (constraint_map(constraint, t) - constraint.u_s) / deriv;
  }
  const double mu_s = 1.0 / (t * t);
  const double pd = static_cast<double>(p);
  out.mu_s = mu_s;
  out.z_s = pd / (1.0 - mu_s);
  out.x_s = 0.5 * (mu_s * out.z_s + pd * std::log1p(-mu_s));
  return out;
}

TailBound constrained_tail(const NormConstraint& constraint, int p, double z) {
  const double pd = static_cast<double>(p);
  if (!(z > pd)) raise(errc::z_not_above_dim, "constrained_tail requires z > p");
  const ConstrainedCriticals crit = solve_z_s(constraint, p);
  TailBound b;
  b.threshold = z;
  b.source = BoundSource::ConstrainedTail;
  if (z <= crit.z_s) {
    b.prob_bound = 2.0 * std::exp(-0.5 * pd * phi((z - pd) / pd));
    b.regime = Regime::SubGaussian;
  } else {
    const double mu_s = *crit.mu_s;
    b.prob_bound = 2.0 * std::exp(-0.5 * mu_s * z - 0.5 * pd * std::log1p(-mu_s));
    b.regime = Regime::LargeDeviation;
  }
  return b;
}

ConstrainedTailForms constrained_tail_forms(const NormConstraint& constraint, int p,
                                            double z) {
  const double pd = static_cast<double>(p);
  if (!(z > pd)) raise(errc::z_not_above_dim, "constrained_tail requires z > p");
  const ConstrainedCriticals crit = solve_z_s(constraint, p);
  if (crit.infinite()) {
    raise(errc::bad_constraint,
          "criticals are infinite (u_s < g_s - r_star); no large-z zone exists");
  }
  if (z < crit.z_s) {
    raise(errc::z_not_above_dim, "linearized forms need z >= z_s");
  }
  const double mu_s = *crit.mu_s;
  ConstrainedTailForms f;
  f.markov = 2.0 * std::exp(-crit.x_s - 0.5 * mu_s * (z - crit.z_s));
  f.g_s_slope = 2.0 * std::exp(-crit.x_s - 0.5 * constraint.g_s * (z - crit.z_s));
  return f;
}

double subprojector_exp_moment_bound(const QuadFormSpec& spec_pi, double mu_s) {
  if (!(mu_s >= 0.0) || mu_s > 2.0 / 3.0) {
    raise(errc::mu_too_large, "mu_s must lie in [0, 2/3]");
  }
  for (double a : spec_pi.spectrum.eigenvalues) {
    if (a > 1.0 + 1e-12) {
      raise(errc::not_sub_projector,
            "spectrum entry " + std::to_string(a) + " exceeds 1");
    }
  }
  return 2.0 * std::exp(0.25 * mu_s * mu_s * spec_pi.v_sq);
}

TailBound subprojector_quantile(const QuadFormSpec& spec_pi,
                                const NormConstraint& constraint, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) raise(errc::bad_args, "x must be positive and finite");
  for (double a : spec_pi.spectrum.eigenvalues) {
    if (a > 1.0 + 1e-12) {
      raise(errc::not_sub_projector,
            "spectrum entry " + std::to_string(a) + " exceeds 1");
    }
  }
  if (!(constraint.g_s >= constraint.r_star + constraint.u_s)) {
    raise(errc::assumption_violated,
          "needs g_s >= r_star + u_s (g_s = " + std::to_string(constraint.g_s) +
              ", r_star + u_s = " + std::to_string(constraint.r_star + constraint.u_s) +
              ")");
  }
  const double dev_gauss = 2.0 * spec_pi.v() * std::sqrt(x);
  const double dev_exp = 6.0 * x;
  return TailBound{spec_pi.p_eff + std::max(dev_gauss, dev_exp), 2.0 * std::exp(-x),
                   dev_gauss >= dev_exp ? Regime::SubGaussian : Regime::SubExponential,
                   BoundSource::SubProjectorQuantile, false};
}

BernsteinBound bernstein_quantile(const BernsteinProfile& profile, double u_s,
                                  double x) {
  if (!(x > 0.0) || !std::isfinite(x)) raise(errc::bad_args, "x must be positive and finite");
  if (!(u_s > 0.0)) raise(errc::bad_args, "u_s must be positive");
  const double r_star = sup_norm_r_star(profile.ambient_dim);
  if (!(profile.g_s() >= u_s + r_star)) {
    raise(errc::assumption_violated,
          "needs g_s = sigma/c >= u_s + r_star (g_s = " + std::to_string(profile.g_s()) +
              ", u_s + r_star = " + std::to_string(u_s + r_star) + ")");
  }
  const double p_eff = static_cast<double>(profile.subspace_dim);
  const double dev = std::max(std::sqrt(kKappa * x * p_eff), kKappa * x);
  BernsteinBound out;
  out.scaled = TailBound{p_eff + dev, 2.0 * std::exp(-x),
                         x <= p_eff / kKappa ? Regime::SubGaussian : Regime::SubExponential,
                         BoundSource::BernsteinQuantile, false};
  out.unscaled_threshold = 4.0 * profile.sigma * profile.sigma * out.scaled.threshold;
  out.sup_norm_limit = 2.0 * profile.sigma * u_s;
  return out;
}

TailBound baraud_quantile(const BernsteinProfile& profile, double u_level, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) raise(errc::bad_args, "x must be positive and finite");
  if (u_level < 0.0) raise(errc::bad_args, "u_level must be nonnegative");
  const double p_eff = static_cast<double>(profile.subspace_dim);
  const double coeff = std::max(3.0 * profile.sigma, std::sqrt(6.0 * profile.c * u_level));
  const double thr = coeff * std::sqrt(x + 3.0 * p_eff);
  return TailBound{thr, std::exp(-x), Regime::SubGaussian, BoundSource::BaraudQuantile,
                   true};
}

double baraud_squared_threshold(const BernsteinProfile& profile, double u_level,
                                double x) {
  const double thr = baraud_quantile(profile, u_level, x).threshold;
  return thr * thr;
}

double sup_norm_r_star(int m) {
  if (m < 2) raise(errc::dim_too_small, "sup-norm radius needs dimension >= 2");
  return std::sqrt(2.0 * std::log(static_cast<double>(m)));
}

}  // namespace qfb

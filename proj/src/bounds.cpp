#include "qfb/bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qfb {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::SubGaussian: return "sub_gaussian";
    case Regime::SubExponential: return "sub_exponential";
    case Regime::LargeDeviation: return "large_deviation";
  }
  return "unknown";
}

const char* to_string(BoundSource s) {
  switch (s) {
    case BoundSource::GaussianTail: return "gaussian_tail";
    case BoundSource::GaussianQuantile: return "gaussian_quantile";
    case BoundSource::GaussianBFormQuantile: return "gaussian_bform_quantile";
    case BoundSource::L2Quantile: return "l2_quantile";
    case BoundSource::L2LargeDeviation: return "l2_large_dev";
    case BoundSource::BFormQuantile: return "bform_quantile";
    case BoundSource::BFormLargeDeviation: return "bform_large_dev";
    case BoundSource::RescaledQuantile: return "rescaled_quantile";
    case BoundSource::ConstrainedTail: return "constrained_tail";
    case BoundSource::SubProjectorQuantile: return "subprojector_quantile";
    case BoundSource::BernsteinQuantile: return "bernstein_quantile";
    case BoundSource::BaraudQuantile: return "baraud_quantile";
  }
  return "unknown";
}

MomentProfile::MomentProfile(double nu0_, double g_) : nu0(nu0_), g(g_) {
  if (!(nu0 >= 1.0) || !std::isfinite(nu0)) {
    raise(errc::bad_args, "nu0 must be finite and >= 1, got " + std::to_string(nu0));
  }
  if (!(g > 0.0)) {
    raise(errc::bad_args, "moment radius g must be positive");
  }
}

double phi(double t) {
  if (!(t >= 0.0)) raise(errc::negative_argument, "phi requires t >= 0");
  return t - std::log1p(t);
}

double phi_inverse(double u) {
  if (!(u >= 0.0)) raise(errc::negative_argument, "phi_inverse requires u >= 0");
  if (u == 0.0) return 0.0;
  double lo = 0.0;
  double hi = u + 2.0 + 2.0 * std::sqrt(u);  // phi(hi) >= u
  for (int it = 0; it < 100 && hi - lo > 1e-16 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (phi(mid) < u ? lo : hi) = mid;
  }
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {  // Newton polish; phi'(t) = t/(1+t)
    const double d = t / (1.0 + t);
    if (d <= 0.0) break;
    t -= (phi(t) - u) / d;
    if (t < lo) t = lo;
    if (t > hi) t = hi;
  }
  return t;
}

TailBound gaussian_tail(int p, double u) {
  if (p < 1) raise(errc::bad_args, "dimension p must be >= 1");
  if (!(u > 0.0) || !std::isfinite(u)) raise(errc::bad_args, "u must be positive and finite");
  const double pd = static_cast<double>(p);
  const double prob = std::exp(-0.5 * pd * phi(u / pd));
  const Regime regime = u <= pd ? Regime::SubGaussian : Regime::SubExponential;
  return TailBound{pd + u, prob, regime, BoundSource::GaussianTail, false};
}

TailBound gaussian_quantile(int p, double x) {
  if (p < 1) raise(errc::bad_args, "dimension p must be >= 1");
  if (!(x > 0.0) || !std::isfinite(x)) raise(errc::bad_args, "x must be positive and finite");
  const double pd = static_cast<double>(p);
  const double dev = std::max(std::sqrt(kKappa * x * pd), kKappa * x);
  const Regime regime = x <= pd / kKappa ? Regime::SubGaussian : Regime::SubExponential;
  return TailBound{pd + dev, std::exp(-x), regime, BoundSource::GaussianQuantile, false};
}

TailBound gaussian_bform_quantile(const QuadFormSpec& spec, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) raise(errc::bad_args, "x must be positive and finite");
  const double a_star = spec.lambda_star;
  const double dev = std::max(2.0 * spec.v() * std::sqrt(x), 6.0 * a_star * x);
  const bool sub_gauss = 2.0 * spec.v() * std::sqrt(x) >= 6.0 * a_star * x;
  return TailBound{spec.p_eff + dev, std::exp(-x),
                   sub_gauss ? Regime::SubGaussian : Regime::SubExponential,
                   BoundSource::GaussianBFormQuantile, false};
}

namespace {

// w (1+w) / sqrt(1+w^2), strictly increasing on [0, inf).
double frontier_map(double w) { return w * (1.0 + w) / std::sqrt(1.0 + w * w); }

double frontier_map_deriv(double w) {
  const double s = 1.0 + w * w;
  return (1.0 + 2.0 * w + w * w * w) / (s * std::sqrt(s));
}

}  // namespace

double solve_w_c(double g, double p_eff) {
  if (!std::isfinite(g) || !(g > 0.0)) {
    raise(errc::non_finite, "solve_w_c requires finite positive g");
  }
  if (!(p_eff > 0.0)) raise(errc::bad_args, "p_eff must be positive");
  const double w0 = g / std::sqrt(p_eff);
  double lo = w0 / std::sqrt(2.0);
  double hi = w0;
  // The bracket holds analytically; widen a hair against roundoff.
  lo *= 1.0 - 1e-12;
  hi *= 1.0 + 1e-12;
  for (int it = 0; it < 200 && hi - lo > 1e-17 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (frontier_map(mid) < w0 ? lo : hi) = mid;
  }
  double w = 0.5 * (lo + hi);
  for (int it = 0; it < 2; ++it) {
    w -= (frontier_map(w) - w0) / frontier_map_deriv(w);
    if (w < lo) w = lo;
    if (w > hi) w = hi;
  }
  return w;
}

CriticalQuantities critical_quantities_l2(double g, int p) {
  if (p < 1) raise(errc::bad_args, "dimension p must be >= 1");
  const double pd = static_cast<double>(p);
  CriticalQuantities c;
  c.w0 = g / std::sqrt(pd);
  c.w_c = solve_w_c(g, pd);
  const double w2 = c.w_c * c.w_c;
  c.mu_c = w2 / (1.0 + w2);
  c.y_c = std::sqrt((1.0 + w2) * pd);
  c.x_c = 0.5 * pd * (w2 - std::log1p(w2));
  c.g_c = g - std::sqrt(c.mu_c * pd);
  const double g_c_alt = g * c.w_c / (1.0 + c.w_c);
  if (std::abs(c.g_c - g_c_alt) > 1e-9 * std::max(1.0, std::abs(c.g_c))) {
    throw std::logic_error("g_c cross-check failed: " + std::to_string(c.g_c) +
                           " vs " + std::to_string(g_c_alt));
  }
  return c;
}

TailBound l2_quantile(double g, int p, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) raise(errc::bad_args, "x must be positive and finite");
  if (p < 1) raise(errc::bad_args, "dimension p must be >= 1");
  if (g == kInf) return gaussian_quantile(p, x);
  const double pd = static_cast<double>(p);
  if (!(g * g >= pd)) {
    raise(errc::g_too_small, "quantile form requires g^2 >= p (g^2 = " +
                                 std::to_string(g * g) + ", p = " + std::to_string(p) +
                                 "); use the raw large-deviation tail instead");
  }
  const CriticalQuantities c = critical_quantities_l2(g, p);
  if (x <= c.x_c) {
    const double prob = 2.0 * std::exp(-x) + kSlicingConstant * std::exp(-c.x_c);
    if (x <= pd / kKappa) {
      return TailBound{pd + std::sqrt(kKappa * x * pd), prob, Regime::SubGaussian,
                       BoundSource::L2Quantile, false};
    }
    return TailBound{pd + kKappa * x, prob, Regime::SubExponential,
                     BoundSource::L2Quantile, false};
  }
  const double y = c.y_c + 2.0 * (x - c.x_c) / c.g_c;
  return TailBound{y * y, kSlicingConstant * std::exp(-x), Regime::LargeDeviation,
                   BoundSource::L2Quantile, false};
}

TailBound l2_quantile(const MomentProfile& profile, int p, double x) {
  const MomentProfile reduced = profile.normalized();
  TailBound b = l2_quantile(reduced.g, p, x);
  b.threshold *= profile.nu0 * profile.nu0;
  return b;
}

LargeDevTail l2_large_dev_tail(double g, int p, double y, std::optional<double> mu0_opt) {
  if (p < 1) raise(errc::bad_args, "dimension p must be >= 1");
  if (g == kInf) {
    raise(errc::y_below_critical,
          "large-deviation zone is unreachable for g = inf (y0 = inf)");
  }
  if (!(g > 0.0) || !std::isfinite(g)) raise(errc::non_finite, "g must be positive finite");
  const double pd = static_cast<double>(p);
  const double mu0 = mu0_opt ? *mu0_opt : critical_quantities_l2(g, p).mu_c;
  if (!(mu0 > 0.0) || mu0 >= 1.0) {
    raise(errc::mu_invalid, "mu0 must lie in (0, 1), got " + std::to_string(mu0));
  }
  if (!(mu0 * pd < g * g)) {
    raise(errc::mu_invalid, "mu0 * p must be < g^2");
  }
  LargeDevTail t;
  t.mu0 = mu0;
  t.y0 = g / mu0 - std::sqrt(pd / mu0);
  t.g0 = g - std::sqrt(mu0 * pd);  // = mu0 * y0
  if (y < t.y0 * (1.0 - 1e-12)) {
    raise(errc::y_below_critical, "y = " + std::to_string(y) + " below y0 = " +
                                      std::to_string(t.y0));
  }
  t.y = y;
  t.x0 = 0.5 * (mu0 * t.y0 * t.y0 + pd * std::log1p(-mu0));
  // g0/y <= g0/y0 = mu0 < 1, so the sharp form always exists here.
  t.sharp = kSlicingConstant *
            std::exp(-0.5 * t.g0 * y - 0.5 * pd * std::log1p(-t.g0 / y));
  t.linearized = kSlicingConstant * std::exp(-t.x0 - 0.5 * t.g0 * (y - t.y0));
  t.source = BoundSource::L2LargeDeviation;
  return t;
}

CriticalQuantities critical_quantities_bform(double g, const QuadFormSpec& spec) {
  if (std::abs(spec.lambda_star - 1.0) > 1e-9) {
    raise(errc::not_normalized, "spectrum must be normalized to lambda_star = 1 "
                                "(call normalize_lambda first)");
  }
  CriticalQuantities c;
  c.w0 = g / std::sqrt(spec.p_eff);
  c.w_c = solve_w_c(g, spec.p_eff);
  const double w2 = c.w_c * c.w_c;
  c.mu_c = std::min(w2 / (1.0 + w2), 2.0 / 3.0);
  c.y_c = std::sqrt((1.0 + w2) * spec.p_eff);
  c.x_c = 0.5 * (c.mu_c * c.y_c * c.y_c + log_det_complement(spec.spectrum, c.mu_c));
  c.g_c = g - std::sqrt(c.mu_c * spec.p_eff);
  return c;
}

std::pair<QuadFormSpec, double> normalize_lambda(const QuadFormSpec& spec) {
  const double scale = spec.lambda_star;
  if (!(scale > 0.0)) raise(errc::zero_matrix, "lambda_star must be positive");
  std::vector<double> scaled = spec.spectrum.eigenvalues;
  for (double& a : scaled) a /= scale;
  QuadFormSpec out = quadform_spec(spectrum_from_values(scaled));
  out.spectrum.source_dim = spec.spectrum.source_dim;
  return {std::move(out), scale};
}

TailBound bform_quantile(double g, const QuadFormSpec& spec, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) raise(errc::bad_args, "x must be positive and finite");
  if (g == kInf) return gaussian_bform_quantile(spec, x);
  auto [nspec, scale] = normalize_lambda(spec);
  if (!(g * g >= 2.0 * nspec.p_eff)) {
    raise(errc::g_too_small, "quantile form requires g^2 >= 2 p_eff after "
                             "normalization (g^2 = " + std::to_string(g * g) +
                             ", 2 p_eff = " + std::to_string(2.0 * nspec.p_eff) + ")");
  }
  const CriticalQuantities c = critical_quantities_bform(g, nspec);
  TailBound b;
  b.source = BoundSource::BFormQuantile;
  if (x <= c.x_c) {
    const double dev_gauss = 2.0 * nspec.v() * std::sqrt(x);
    const double dev_exp = 6.0 * x;
    b.threshold = scale * (nspec.p_eff + std::max(dev_gauss, dev_exp));
    b.prob_bound = 2.0 * std::exp(-x) + kSlicingConstant * std::exp(-c.x_c);
    // The max-form branches cross at x = v^2 / 9.
    b.regime = dev_gauss >= dev_exp ? Regime::SubGaussian : Regime::SubExponential;
    return b;
  }
  const double y = c.y_c + 2.0 * (x - c.x_c) / c.g_c;
  b.threshold = scale * y * y;
  b.prob_bound = kSlicingConstant * std::exp(-x);
  b.regime = Regime::LargeDeviation;
  return b;
}

TailBound bform_quantile(const MomentProfile& profile, const QuadFormSpec& spec,
                         double x) {
  const MomentProfile reduced = profile.normalized();
  TailBound b = bform_quantile(reduced.g, spec, x);
  b.threshold *= profile.nu0 * profile.nu0;
  return b;
}

LargeDevTail bform_large_dev_tail(double g, const QuadFormSpec& spec, double y) {
  if (!(g > 0.0) || !std::isfinite(g)) {
    raise(errc::non_finite, "bform_large_dev_tail requires finite positive g");
  }
  const CriticalQuantities c = critical_quantities_bform(g, spec);
  if (y < c.y_c * (1.0 - 1e-12)) {
    raise(errc::y_below_critical, "y = " + std::to_string(y) + " below y_c = " +
                                      std::to_string(c.y_c));
  }
  LargeDevTail t;
  t.y = y;
  t.mu0 = c.mu_c;
  t.g0 = c.g_c;
  t.y0 = c.g_c / c.mu_c;
  t.x0 = c.x_c;
  t.linearized =
      kSlicingConstant * std::exp(-c.x_c - 0.5 * c.g_c * (y - c.y_c));
  // det{I - (g0/y) B^2} exists only for g0/y < 1 (lambda_star = 1); with a
  // capped mu_c that can fail just above y_c.
  if (t.g0 / y < 1.0) {
    const double log_det = log_det_complement(spec.spectrum, t.g0 / y);
    t.sharp = kSlicingConstant * std::exp(-0.5 * t.g0 * y - 0.5 * log_det);
  } else {
    t.sharp = kInf;
  }
  t.source = BoundSource::BFormLargeDeviation;
  return t;
}

QuadFormSpec rescaled_quadform(const SymmetricMatrix& v0, const SymmetricMatrix& d0) {
  if (v0.dim() != d0.dim()) raise(errc::bad_args, "V0 and D0 dimensions differ");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> d0_eig(d0.data());
  if (d0_eig.info() != Eigen::Success) {
    raise(errc::eigen_failure, "eigendecomposition of D0 did not converge");
  }
  const Eigen::VectorXd d = d0_eig.eigenvalues();
  const double d_max = d.maxCoeff();
  if (!(d.minCoeff() > 0.0) || d.minCoeff() <= 1e-14 * d_max) {
    raise(errc::d0_not_pd, "D0 is not positive definite");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> v0_eig(v0.data(),
                                                        Eigen::EigenvaluesOnly);
  if (v0_eig.info() != Eigen::Success) {
    raise(errc::eigen_failure, "eigendecomposition of V0 did not converge");
  }
  if (v0_eig.eigenvalues().minCoeff() < -1e-10 * std::max(1.0, v0_eig.eigenvalues().maxCoeff())) {
    raise(errc::bad_args, "V0 must be positive semi-definite");
  }
  const Eigen::MatrixXd d0_inv =
      d0_eig.eigenvectors() * d.cwiseInverse().asDiagonal() *
      d0_eig.eigenvectors().transpose();
  // B^2 = (V0 D0^{-1})' (V0 D0^{-1}); its spectrum is the squared singular
  // values of W = V0 D0^{-1}.
  const Eigen::MatrixXd w = v0.data() * d0_inv;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(w);
  Eigen::VectorXd sv = svd.singularValues();
  std::vector<double> a(static_cast<std::size_t>(sv.size()));
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    a[static_cast<std::size_t>(i)] = sv[i] * sv[i];
  }
  return quadform_spec(a);
}

TailBound rescaled_bound(const SymmetricMatrix& v0, const SymmetricMatrix& d0,
                         double g, double x) {
  TailBound b = bform_quantile(g, rescaled_quadform(v0, d0), x);
  b.source = BoundSource::RescaledQuantile;
  return b;
}

TailBound rescaled_bound(const SymmetricMatrix& v0, const SymmetricMatrix& d0,
                         const MomentProfile& profile, double x) {
  TailBound b = bform_quantile(profile, rescaled_quadform(v0, d0), x);
  b.source = BoundSource::RescaledQuantile;
  return b;
}

std::pair<MomentProfile, double> nu0_reduce(const MomentProfile& profile,
                                            double threshold_y) {
  return {profile.normalized(), threshold_y / profile.nu0};
}

}  // namespace qfb

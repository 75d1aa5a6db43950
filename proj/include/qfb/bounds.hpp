#ifndef QFB_BOUNDS_HPP
#define QFB_BOUNDS_HPP

#include <limits>
#include <optional>
#include <utility>

#include "qfb/matrix.hpp"

namespace qfb {

// Quantile constant of the moderate-deviation bounds. The exact value would
// be 2/(1 - log 2) ~ 6.52; the stated bounds round up to 6.6.
inline constexpr double kKappa = 6.6;

// Prefactor of the slicing large-deviation bounds; dominates
// 2 e^{1/2} (1 - e^{-1/2})^{-1} ~ 8.3804.
inline constexpr double kSlicingConstant = 8.4;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Regime { SubGaussian, SubExponential, LargeDeviation };

enum class BoundSource {
  GaussianTail,
  GaussianQuantile,
  GaussianBFormQuantile,
  L2Quantile,
  L2LargeDeviation,
  BFormQuantile,
  BFormLargeDeviation,
  RescaledQuantile,
  ConstrainedTail,
  SubProjectorQuantile,
  BernsteinQuantile,
  BaraudQuantile,
};

const char* to_string(Regime r);
const char* to_string(BoundSource s);

// An evaluated deviation bound. `threshold` applies to the squared norm
// unless `threshold_on_norm` is set. `prob_bound` is the exact formula value
// and may exceed 1; clamping is presentation-only.
struct TailBound {
  double threshold = 0.0;
  double prob_bound = 1.0;
  Regime regime = Regime::SubGaussian;
  BoundSource source = BoundSource::GaussianTail;
  bool threshold_on_norm = false;

  double clamped_prob() const { return prob_bound < 1.0 ? prob_bound : 1.0; }
};

// Exponential-moment assumption: log E exp(gamma' xi) <= nu0^2 |gamma|^2 / 2
// for |gamma| <= g. g = +inf recovers the Gaussian-type case.
struct MomentProfile {
  double nu0 = 1.0;
  double g = kInf;

  MomentProfile() = default;
  MomentProfile(double nu0_, double g_);

  bool gaussian_range() const { return g == kInf; }
  // Equivalent profile with nu0 = 1 and radius nu0 * g.
  MomentProfile normalized() const { return MomentProfile(1.0, nu0 * g); }
};

// Regime-frontier bundle: w_c solves w(1+w)/sqrt(1+w^2) = w0 = g / sqrt(p),
// mu_c / y_c / x_c / g_c derive from it.
struct CriticalQuantities {
  double w0 = 0.0;
  double w_c = 0.0;
  double mu_c = 0.0;
  double y_c = 0.0;
  double x_c = 0.0;
  double g_c = 0.0;
};

// Large-deviation tail evaluated at |.| > y: the determinant-sharp form and
// its linearization. `sharp` is +inf where the determinant form is undefined
// (possible for y between y_c and g0/mu0 when mu_c is capped).
struct LargeDevTail {
  double y = 0.0;
  double sharp = kInf;
  double linearized = kInf;
  double y0 = 0.0;
  double x0 = 0.0;
  double g0 = 0.0;
  double mu0 = 0.0;
  BoundSource source = BoundSource::L2LargeDeviation;

  double best() const { return sharp < linearized ? sharp : linearized; }
  TailBound bound() const {
    return TailBound{y, best(), Regime::LargeDeviation, source, true};
  }
};

// phi(t) = t - log(1+t): nonnegative, convex, phi(0) = 0.
double phi(double t);
// Inverse of phi on [0, inf); |phi(t) - u| <= 1e-12 max(1, u).
double phi_inverse(double u);

// P(|xi|^2 > p + u) <= exp{-(p/2) phi(u/p)} for standard normal xi.
TailBound gaussian_tail(int p, double u);

// P(|xi|^2 > p + sqrt(kappa x p) v (kappa x)) <= exp(-x).
TailBound gaussian_quantile(int p, double x);

// P(|B xi|^2 > p_eff + (2 v sqrt(x)) v (6 a* x)) <= exp(-x), a* = lambda_star.
TailBound gaussian_bform_quantile(const QuadFormSpec& spec, double x);

// Unique root w_c of w(1+w)/sqrt(1+w^2) = g / sqrt(p_eff), bisection on
// [w0/sqrt(2), w0] to absolute residual <= 1e-12.
double solve_w_c(double g, double p_eff);

CriticalQuantities critical_quantities_l2(double g, int p);

// Quantile surrogate of the l2 bound (requires g^2 >= p). Moderate zone
// matches the chi-squared-like form; x > x_c switches to the slicing bound.
TailBound l2_quantile(double g, int p, double x);
TailBound l2_quantile(const MomentProfile& profile, int p, double x);

// Tail P(|xi| > y) for y >= y0(mu0); mu0 defaults to mu_c.
LargeDevTail l2_large_dev_tail(double g, int p, double y,
                               std::optional<double> mu0 = std::nullopt);

// Requires a spectrum normalized to lambda_star = 1; mu_c is capped at 2/3.
CriticalQuantities critical_quantities_bform(double g, const QuadFormSpec& spec);

// Spectrum divided by lambda_star plus the scale; quantiles computed on the
// normalized spec are multiplied back by lambda_star.
std::pair<QuadFormSpec, double> normalize_lambda(const QuadFormSpec& spec);

// Quantile surrogate for |B xi|^2 (requires g^2 >= 2 p_eff after
// normalization); thresholds are reported on the original scale.
TailBound bform_quantile(double g, const QuadFormSpec& spec, double x);
TailBound bform_quantile(const MomentProfile& profile, const QuadFormSpec& spec,
                         double x);

// Tail P(|B xi| > y) for y >= y_c, on the normalized scale (lambda_star = 1).
LargeDevTail bform_large_dev_tail(double g, const QuadFormSpec& spec, double y);

// Spectral data of B^2 = D0^{-1} V0^2 D0^{-1}, formed symmetrically.
QuadFormSpec rescaled_quadform(const SymmetricMatrix& v0, const SymmetricMatrix& d0);

// Bound on |D0^{-1} zeta|^2 for zeta whose V0-rescaling satisfies the moment
// condition with radius g.
TailBound rescaled_bound(const SymmetricMatrix& v0, const SymmetricMatrix& d0,
                         double g, double x);
TailBound rescaled_bound(const SymmetricMatrix& v0, const SymmetricMatrix& d0,
                         const MomentProfile& profile, double x);

// (nu0, g) -> (1, nu0 g) with thresholds on the norm divided by nu0.
std::pair<MomentProfile, double> nu0_reduce(const MomentProfile& profile,
                                            double threshold_y);

}  // namespace qfb

#endif  // QFB_BOUNDS_HPP

#ifndef QFB_MC_HPP
#define QFB_MC_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfb/bounds.hpp"
#include "qfb/matrix.hpp"

namespace qfb {

enum class NoiseKind { Gaussian, Rademacher, CenteredExponential };

const char* to_string(NoiseKind k);
NoiseKind noise_kind_from_string(const std::string& name);

// A seeded coordinate-i.i.d. noise model. Gaussian and Rademacher satisfy
// the exponential moment condition with g = inf; CenteredExponential
// (X - 1 with X standard exponential) satisfies the Bernstein condition
// with sigma = c = 1.
struct NoiseModel {
  NoiseKind kind = NoiseKind::Gaussian;
  int dim = 1;
  std::uint64_t seed = 0;
};

enum class Verdict { Certified, Inconclusive, Violated };
const char* to_string(Verdict v);

// Empirical tail estimate with an exact two-sided Clopper-Pearson interval,
// judged against a theoretical bound. Violated iff lower_conf > bound; the
// interval merely straddling the bound is Inconclusive, not a refutation.
struct McCertificate {
  std::uint64_t n_samples = 0;
  std::uint64_t n_exceed = 0;
  double point_estimate = 0.0;
  double upper_conf = 1.0;
  double lower_conf = 0.0;
  double conf_level = 0.0;
  double theoretical_bound = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

struct ConfInterval {
  double lower = 0.0;
  double upper = 1.0;
};

// Exact two-sided Clopper-Pearson interval for a binomial proportion.
ConfInterval clopper_pearson(std::uint64_t k, std::uint64_t n, double conf);

McCertificate make_certificate(std::uint64_t n_exceed, std::uint64_t n_samples,
                               double conf, double theoretical_bound);

// Writes the coordinates of sample `index` (deterministic in (seed, index)).
void sample_into(const NoiseModel& model, std::uint64_t index, std::span<double> out);

// Row-major n x dim sample block, byte-identical for identical (model, n).
std::vector<double> sample_matrix(const NoiseModel& model, std::size_t n);

enum class TailStatistic { L2Sq, BFormSq, ProjectedSq };

struct TailEstimateOptions {
  // ProjectedSq: statistic |Pi_S zeta|^2 / (4 sigma^2) over the leading
  // proj_dim coordinates, jointly with max_i |zeta_i| <= sup_limit.
  double sigma = 1.0;
  int proj_dim = 0;
  std::optional<double> sup_limit;
};

McCertificate estimate_tail(const NoiseModel& model, TailStatistic statistic,
                            const std::optional<QuadFormSpec>& spec, double threshold,
                            std::size_t n, double conf, double theoretical_bound,
                            const TailEstimateOptions& options = {});

// Joint tail P(|Pi xi|^2 > threshold, |Pi^2 xi|_inf <= u_s) for a dense
// sub-projector Pi.
McCertificate estimate_subprojector_tail(const NoiseModel& model,
                                         const Eigen::MatrixXd& pi, double u_s,
                                         double threshold, std::size_t n, double conf,
                                         double theoretical_bound);

struct MgfEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
  std::uint64_t n_kept = 0;
};

// Sample mean of exp(mu |B xi|^2 / 2) 1{|B^2 xi| <= truncation_radius},
// accumulated in log-sum-exp form (stable for exponents up to ~700).
MgfEstimate estimate_truncated_mgf(const NoiseModel& model, const QuadFormSpec& spec,
                                   double mu, double truncation_radius, std::size_t n);

struct AuditDirection {
  double gamma_norm = 0.0;
  double bound = 0.0;     // |gamma|^2 / 2
  double estimate = 0.0;  // log-sum-exp estimate of log E exp(gamma' xi)
  double std_error = 0.0; // jackknife
  bool flagged = false;
};

struct AuditReport {
  std::vector<AuditDirection> directions;
  int n_flagged = 0;
  double scale = 1.0;  // xi = scale * (raw sample); 1/2 for CenteredExponential
};

// Checks log E exp(gamma' xi) <= |gamma|^2/2 on random directions with norms
// uniform in (0, g]; a direction is flagged when the estimate exceeds the
// bound by more than 3 jackknife standard errors.
AuditReport audit_moment_condition(const NoiseModel& model, double g, int n_gamma,
                                   std::size_t n_samples);

struct MomentCheck {
  double empirical_mean = 0.0;
  double empirical_var = 0.0;
  double p_eff = 0.0;
  double v_sq = 0.0;
  double mean_tol = 0.0;
  bool mean_ok = false;
  bool var_ok = false;
};

// Gaussian sanity check of E |B xi|^2 = tr(B^2) and Var = 2 tr(B^4).
MomentCheck mean_variance_identity_check(const QuadFormSpec& spec, std::size_t n,
                                         std::uint64_t seed);

// Pi = Q diag(pi_eigenvalues) Q' for a seeded Haar-ish orthogonal Q
// (QR of a Gaussian matrix); eigenvalues must lie in [0, 1].
Eigen::MatrixXd random_subprojector(int dim, std::span<const double> pi_eigenvalues,
                                    std::uint64_t seed);

namespace detail {

// Streaming log-sum-exp mean: tracks max exponent, rescales on the fly.
class LogMeanExp {
 public:
  void add(double exponent);
  void add_zero_term() { ++n_; }  // excluded-by-truncation term contributes 0
  std::uint64_t count() const { return n_; }
  std::uint64_t kept() const { return kept_; }
  // mean of exp(e_i) over all n terms (excluded terms counted as 0)
  double mean() const;
  double log_mean() const;
  // standard error of that mean (second-moment accumulator, same shift)
  double std_error() const;

 private:
  double max_ = -kInf;
  double sum_ = 0.0;     // sum exp(e_i - max_)
  double sum_sq_ = 0.0;  // sum exp(2 (e_i - max_))
  std::uint64_t n_ = 0;
  std::uint64_t kept_ = 0;
};

}  // namespace detail

}  // namespace qfb

#endif  // QFB_MC_HPP

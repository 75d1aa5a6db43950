#include "qfb/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace qfb {

const char* errc_name(errc code) {
  switch (code) {
    case errc::non_square: return "non_square";
    case errc::asymmetry_exceeds_tol: return "asymmetry_exceeds_tol";
    case errc::non_finite_entry: return "non_finite_entry";
    case errc::eigen_failure: return "eigen_failure";
    case errc::empty_spectrum: return "empty_spectrum";
    case errc::mu_too_large: return "mu_too_large";
    case errc::negative_argument: return "negative_argument";
    case errc::bad_args: return "bad_args";
    case errc::non_finite: return "non_finite";
    case errc::g_too_small: return "g_too_small";
    case errc::y_below_critical: return "y_below_critical";
    case errc::mu_invalid: return "mu_invalid";
    case errc::not_normalized: return "not_normalized";
    case errc::zero_matrix: return "zero_matrix";
    case errc::d0_not_pd: return "d0_not_pd";
    case errc::z_not_above_dim: return "z_not_above_dim";
    case errc::bad_constraint: return "bad_constraint";
    case errc::assumption_violated: return "assumption_violated";
    case errc::dim_too_small: return "dim_too_small";
    case errc::spec_missing: return "spec_missing";
    case errc::not_sub_projector: return "not_sub_projector";
    case errc::rank_deficient_design: return "rank_deficient_design";
    case errc::io_error: return "io_error";
    case errc::config: return "config";
  }
  return "unknown";
}

namespace {

// Eigenvalues below this after decomposition are roundoff noise on a PSD
// matrix and get clamped to zero.
constexpr double kPsdClampTol = 1e-10;

Spectrum sorted_clamped(Eigen::VectorXd values, int source_dim) {
  std::vector<double> a(values.data(), values.data() + values.size());
  std::sort(a.begin(), a.end(), std::greater<double>());
  for (double& v : a) {
    if (v < -kPsdClampTol) {
      raise(errc::eigen_failure, "negative eigenvalue " + std::to_string(v) +
                                     " beyond PSD roundoff tolerance");
    }
    if (v < 0.0) v = 0.0;
  }
  return Spectrum{std::move(a), source_dim};
}

}  // namespace

SymmetricMatrix SymmetricMatrix::from_raw(const Eigen::MatrixXd& raw, double tol) {
  if (raw.rows() != raw.cols()) {
    raise(errc::non_square, "matrix is " + std::to_string(raw.rows()) + "x" +
                                std::to_string(raw.cols()));
  }
  if (raw.size() == 0) raise(errc::non_square, "matrix is empty");
  if (!raw.allFinite()) raise(errc::non_finite_entry, "matrix has NaN or Inf entries");

  double max_asym = 0.0;
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < raw.cols(); ++j) {
      const double gap = std::abs(raw(i, j) - raw(j, i));
      const double scale = std::max({1.0, std::abs(raw(i, j)), std::abs(raw(j, i))});
      max_asym = std::max(max_asym, gap / scale);
      if (gap > tol * scale) {
        raise(errc::asymmetry_exceeds_tol,
              "entry (" + std::to_string(i) + "," + std::to_string(j) + ") asymmetry " +
                  std::to_string(gap) + " exceeds tolerance");
      }
    }
  }
  Eigen::MatrixXd sym = 0.5 * (raw + raw.transpose());
  return SymmetricMatrix(std::move(sym), max_asym);
}

SymmetricMatrix SymmetricMatrix::from_symmetric_product(const Eigen::MatrixXd& w) {
  Eigen::MatrixXd m = w.transpose() * w;
  m = 0.5 * (m + m.transpose()).eval();
  return SymmetricMatrix(std::move(m), 0.0);
}

SymmetricMatrix symmetrize_and_validate(const Eigen::MatrixXd& raw, double tol) {
  return SymmetricMatrix::from_raw(raw, tol);
}

Spectrum spectrum_of_square(const SymmetricMatrix& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b.data(),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    raise(errc::eigen_failure, "eigendecomposition did not converge");
  }
  return sorted_clamped(solver.eigenvalues().array().square(), b.dim());
}

Spectrum spectrum_of_psd(const SymmetricMatrix& b_squared) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b_squared.data(),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    raise(errc::eigen_failure, "eigendecomposition did not converge");
  }
  return sorted_clamped(solver.eigenvalues(), b_squared.dim());
}

Spectrum spectrum_from_values(std::span<const double> eigenvalues_of_b_squared) {
  Eigen::VectorXd v(eigenvalues_of_b_squared.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double e = eigenvalues_of_b_squared[static_cast<std::size_t>(i)];
    if (!std::isfinite(e)) raise(errc::non_finite_entry, "non-finite eigenvalue");
    v[i] = e;
  }
  return sorted_clamped(std::move(v), static_cast<int>(v.size()));
}

double QuadFormSpec::v() const { return std::sqrt(v_sq); }

QuadFormSpec quadform_spec(const Spectrum& s) {
  if (s.eigenvalues.empty()) raise(errc::empty_spectrum, "spectrum has no eigenvalues");
  QuadFormSpec spec;
  spec.spectrum = s;
  for (double a : s.eigenvalues) {
    spec.p_eff += a;
    spec.v_sq += 2.0 * a * a;
  }
  spec.lambda_star = s.eigenvalues.front();
  return spec;
}

QuadFormSpec quadform_spec(std::span<const double> eigenvalues_of_b_squared) {
  return quadform_spec(spectrum_from_values(eigenvalues_of_b_squared));
}

double log_det_complement(const Spectrum& s, double mu) {
  if (s.eigenvalues.empty()) raise(errc::empty_spectrum, "spectrum has no eigenvalues");
  if (!std::isfinite(mu)) raise(errc::non_finite, "mu must be finite");
  const double a1 = s.eigenvalues.front();
  if (mu * a1 >= 1.0) {
    raise(errc::mu_too_large, "mu * lambda_star = " + std::to_string(mu * a1) +
                                  " >= 1; the mgf does not exist at this mu");
  }
  double sum = 0.0;
  for (double a : s.eigenvalues) sum += std::log1p(-mu * a);
  return sum;
}

}  // namespace qfb

#ifndef QFB_MATRIX_HPP
#define QFB_MATRIX_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "qfb/errors.hpp"

namespace qfb {

// Dense symmetric matrix, validated on construction. Entries are immutable
// afterwards, so values can be shared freely across threads.
class SymmetricMatrix {
 public:
  // Accepts a square matrix whose asymmetry is within `tol` (relative to
  // max(1, |entry|)) and stores the symmetrized average (raw + raw^T)/2.
  static SymmetricMatrix from_raw(const Eigen::MatrixXd& raw, double tol = 1e-9);

  // For matrices that are symmetric by construction (e.g. W^T W).
  static SymmetricMatrix from_symmetric_product(const Eigen::MatrixXd& w);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& data() const { return m_; }
  double max_asymmetry() const { return max_asymmetry_; }

 private:
  SymmetricMatrix(Eigen::MatrixXd m, double max_asym)
      : m_(std::move(m)), max_asymmetry_(max_asym) {}
  Eigen::MatrixXd m_;
  double max_asymmetry_ = 0.0;
};

// Eigenvalues of B^2, sorted descending and clamped to >= 0.
struct Spectrum {
  std::vector<double> eigenvalues;
  int source_dim = 0;
};

// Spectral functionals of a quadratic form: p_eff = tr(B^2),
// v_sq = 2 tr(B^4), lambda_star = lambda_max(B^2).
struct QuadFormSpec {
  Spectrum spectrum;
  double p_eff = 0.0;
  double v_sq = 0.0;
  double lambda_star = 0.0;

  double v() const;  // sqrt(v_sq)
};

SymmetricMatrix symmetrize_and_validate(const Eigen::MatrixXd& raw, double tol = 1e-9);

// Eigendecomposes B and squares the eigenvalues (never forms B*B, which
// would square the condition number).
Spectrum spectrum_of_square(const SymmetricMatrix& b);

// Spectrum of a matrix that already is B^2 (PSD up to roundoff).
Spectrum spectrum_of_psd(const SymmetricMatrix& b_squared);

Spectrum spectrum_from_values(std::span<const double> eigenvalues_of_b_squared);

QuadFormSpec quadform_spec(const Spectrum& s);
QuadFormSpec quadform_spec(std::span<const double> eigenvalues_of_b_squared);

// log det(I - mu B^2) = sum_i log(1 - mu a_i); requires mu * a_1 < 1.
double log_det_complement(const Spectrum& s, double mu);

}  // namespace qfb

#endif  // QFB_MATRIX_HPP

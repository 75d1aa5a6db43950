#ifndef QFB_ERRORS_HPP
#define QFB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qfb {

// One code per failure mode so callers (and the CLI exit-code mapping) can
// react without parsing messages.
enum class errc {
  non_square,
  asymmetry_exceeds_tol,
  non_finite_entry,
  eigen_failure,
  empty_spectrum,
  mu_too_large,
  negative_argument,
  bad_args,
  non_finite,
  g_too_small,
  y_below_critical,
  mu_invalid,
  not_normalized,
  zero_matrix,
  d0_not_pd,
  z_not_above_dim,
  bad_constraint,
  assumption_violated,
  dim_too_small,
  spec_missing,
  not_sub_projector,
  rank_deficient_design,
  io_error,
  config,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace qfb

#endif  // QFB_ERRORS_HPP

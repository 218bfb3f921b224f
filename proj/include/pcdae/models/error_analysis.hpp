#pragma once

#include "pcdae/integrators.hpp"

namespace pcdae {

/// Backward-Euler corrector x = x_n + h f(t_n + h, x, y_est) with y_est fixed.
/// Only the error-analysis oracles use it; production steps use correct_itm.
[[nodiscard]] NewtonResult correct_be(const DaeSystem& system, double t_n, const Vector& x_n,
                                      const Vector& y_est, const Vector& x_init, double h,
                                      CorrectorMode mode, const NewtonConfig& cfg = {});

struct CorrectorErrorCheck {
    double observed = 0.0;   ///< x_BE(y_exact + e_y) - x_BE(y_exact)
    double predicted = 0.0;  ///< h b / (1 - h a) * e_y
};

/// One converged BE corrector step on the scalar linear DAE from the exact
/// state x(0) = 1, with the algebraic estimate offset by e_y.
[[nodiscard]] CorrectorErrorCheck verify_corrector_error_formula(double a, double b, double c,
                                                                 double h, double e_y);

/// Error of a single fixed-point corrector update x1 = x_n + h f(x_pred, y_est)
/// started from the forward-Euler prediction, split into its parts:
///   observed = predictor_term + algebraic_term + truncation_term
/// with predictor_term = h a (x_pred - x*), algebraic_term = h b e_y and
/// truncation_term = x_n + h f(x*, y*) - x*, where x* is the exact solution.
struct SingleIterationError {
    double observed = 0.0;
    double predictor_term = 0.0;
    double algebraic_term = 0.0;
    double truncation_term = 0.0;
};

[[nodiscard]] SingleIterationError verify_single_iteration_error(double a, double b, double c,
                                                                 double h, double e_y);

}  // namespace pcdae

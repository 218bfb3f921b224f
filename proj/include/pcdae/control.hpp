#pragma once

#include "pcdae/linalg.hpp"

namespace pcdae {

/// PI step-size controller driven by the predictor-corrector difference.
///
/// Defaults treat the FE/ITM pair as order p = 2: k_i = 0.3/p, k_p = 0.4/p.
struct PiController {
    double rtol = 1e-6;
    double atol = 1e-8;
    double k_i = 0.3 / 2.0;
    double k_p = 0.4 / 2.0;
    double safety = 0.9;
    double fac_min = 0.5;
    double fac_max = 2.0;
    double h_min = 1e-7;
    double h_max = 0.1;
    double err_prev = 1.0;

    void validate() const;

    /// Records the scaled error of an accepted step for the next proposal.
    void accept(double err) noexcept;
    void reset() noexcept { err_prev = 1.0; }
};

/// Threshold on ||y_new - y_est||_inf used by the hold-previous scheme.
struct AlgebraicCheck {
    double epsilon = 1e-4;
    int max_recorrections = 3;

    static constexpr double kLooseEpsilon = 1e-4;
    static constexpr double kTightEpsilon = 1e-6;

    void validate() const;
};

/// RMS of (x_corr - x_pred) weighted by atol + rtol * max(|x_corr|, |x_pred|).
[[nodiscard]] double scaled_error(const Vector& x_pred, const Vector& x_corr,
                                  const PiController& controller);

/// PI proposal clamped to [fac_min*h, fac_max*h] and then to [h_min, h_max].
/// Does not modify err_prev.
[[nodiscard]] double propose_step(const PiController& controller, double err, double h);

[[nodiscard]] bool accept_step(double err) noexcept;

[[nodiscard]] bool algebraic_consistency(const Vector& y_new, const Vector& y_est,
                                         const AlgebraicCheck& check);

}  // namespace pcdae

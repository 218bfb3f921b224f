#pragma once

#include <vector>

#include "pcdae/integrators.hpp"
#include "pcdae/models/model.hpp"

namespace pcdae {

enum class StudyQuantity {
    /// max |x(t_end) - x_exact(t_end)| of a fixed-step run.
    FinalState,
    /// max |y_est - y(t_end)| for the scheme's estimator fed the exact
    /// history y(t_end - 2h), y(t_end - h).
    AlgebraicEstimate,
};

struct ConvergenceSpec {
    SolverScheme scheme;
    StepSettings settings;
    StudyQuantity quantity = StudyQuantity::FinalState;
    double t_end = 1.0;
    /// Strictly decreasing, at least three entries.
    std::vector<double> steps;
};

struct ConvergencePoint {
    double h = 0.0;
    double error = 0.0;
};

struct ConvergenceResult {
    std::vector<ConvergencePoint> points;
    double slope = 0.0;  ///< least-squares slope of log(error) against log(h)
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares y = slope * x + intercept. Needs two distinct x.
[[nodiscard]] LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Slope of log(err) against log(h). Every entry must be positive.
[[nodiscard]] double fit_loglog_slope(const std::vector<double>& h,
                                      const std::vector<double>& err);

/// Errors are measured against model.analytic when present, otherwise
/// against a simultaneous ITM run at rtol 1e-10 (FinalState only). Solver
/// failures are rethrown with the offending h in the message.
[[nodiscard]] ConvergenceResult convergence_study(const ModelInstance& model,
                                                  const ConvergenceSpec& spec);

}  // namespace pcdae

#pragma once

#include <string>
#include <vector>

#include "pcdae/run_data.hpp"

namespace pcdae {

struct VariableDifference {
    std::string name;
    double l2 = 0.0;    ///< sqrt of the sum of squared differences on the reference grid
    double linf = 0.0;
};

struct ComparisonReport {
    std::vector<VariableDifference> variables;  ///< reference column order
    std::size_t worst = 0;                      ///< index of the largest l2
    std::vector<double> times;                  ///< reference grid
    std::vector<double> worst_series;           ///< |candidate - reference| of the worst variable
    double max_abs = 0.0;                       ///< over all variables

    [[nodiscard]] const VariableDifference& worst_variable() const { return variables.at(worst); }
};

/// Resamples the candidate onto the reference grid with piecewise-linear
/// interpolation and reports per-variable absolute differences. Rows sharing
/// an event time are matched in order. Throws VariableMismatch when the
/// variable sets differ.
[[nodiscard]] ComparisonReport compare_trajectories(const Trajectory& reference,
                                                    const Trajectory& candidate);

}  // namespace pcdae

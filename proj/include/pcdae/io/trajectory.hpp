#pragma once

#include <iosfwd>
#include <string>

#include "pcdae/run_data.hpp"

namespace pcdae {

/// Shortest round-trip-exact rendering used in every CSV (17 significant digits).
[[nodiscard]] std::string format_number(double v);

/// Header of labels, then one comma-separated row per trajectory row, LF endings.
void write_trajectory_csv(const Trajectory& trajectory, std::ostream& out);
void write_trajectory_csv(const Trajectory& trajectory, const std::string& path);

[[nodiscard]] Trajectory read_trajectory_csv(std::istream& in, const std::string& source);
[[nodiscard]] Trajectory read_trajectory_csv(const std::string& path);

/// Columns t,h,accepted with one row per step attempt.
void write_step_trace_csv(const RunMetrics& metrics, const std::string& path);

/// key = value lines: nonlinear_calls, accepted_steps, rejected_steps,
/// recorrections, diverged, diverged_reason.
void write_metrics(const RunMetrics& metrics, std::ostream& out);
void write_metrics(const RunMetrics& metrics, const std::string& path);

}  // namespace pcdae

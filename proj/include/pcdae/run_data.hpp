#pragma once

#include <cstdint>
#include <deque>
#include <initializer_list>
#include <string>
#include <vector>

namespace pcdae {

/// One attempted step, accepted or not.
struct StepRecord {
    double t = 0.0;
    double h = 0.0;
    bool accepted = false;
    double error = 0.0;
};

struct RunMetrics {
    std::uint64_t nonlinear_calls = 0;
    std::uint64_t accepted_steps = 0;
    std::uint64_t rejected_steps = 0;
    std::uint64_t recorrections = 0;
    bool diverged = false;
    std::string diverged_reason;
    std::deque<StepRecord> step_records;

    /// accepted + rejected == records and calls >= accepted.
    [[nodiscard]] bool counters_consistent() const noexcept;
};

/// Rows of (t, h, x..., y...) at accepted steps and event boundaries.
///
/// Time is non-decreasing. A time value repeats only at an event, where the
/// pre-event row is followed by the post-event row.
/// Values are stored row-major in one container; width() == labels.size().
struct Trajectory {
    std::vector<std::string> labels;
    std::deque<double> values;

    static constexpr std::size_t kTimeColumn = 0;
    static constexpr std::size_t kStepColumn = 1;
    static constexpr std::size_t kFirstVariable = 2;

    [[nodiscard]] std::size_t n_variables() const noexcept {
        return labels.size() > kFirstVariable ? labels.size() - kFirstVariable : 0;
    }
    [[nodiscard]] std::size_t width() const noexcept { return labels.size(); }
    [[nodiscard]] std::size_t n_rows() const noexcept {
        return labels.empty() ? 0 : values.size() / labels.size();
    }
    [[nodiscard]] bool empty() const noexcept { return n_rows() == 0; }
    [[nodiscard]] double at(std::size_t row, std::size_t col) const {
        return values[row * labels.size() + col];
    }
    [[nodiscard]] double time(std::size_t row) const { return at(row, kTimeColumn); }
    [[nodiscard]] std::vector<double> row(std::size_t i) const {
        const auto first = values.begin() + static_cast<std::ptrdiff_t>(i * labels.size());
        return {first, first + static_cast<std::ptrdiff_t>(labels.size())};
    }
    [[nodiscard]] std::vector<double> column(std::size_t col) const {
        std::vector<double> out;
        out.reserve(n_rows());
        for (std::size_t i = 0; i < n_rows(); ++i) {
            out.push_back(at(i, col));
        }
        return out;
    }
    /// Appends one row; throws std::invalid_argument on a width mismatch.
    void append(const std::vector<double>& row);
};

}  // namespace pcdae

#pragma once

#include <optional>

#include "pcdae/linalg.hpp"

namespace pcdae {

/// The two most recent solved algebraic vectors and the step between them.
///
/// After a discontinuity (t0 or an event) only y_curr is valid and the
/// next estimate falls back to holding y_curr. One accepted step restores
/// the two samples the extrapolation needs.
class AlgebraicHistory {
public:
    AlgebraicHistory() = default;
    explicit AlgebraicHistory(Vector y0);

    [[nodiscard]] const Vector& y_curr() const noexcept { return y_curr_; }
    [[nodiscard]] const std::optional<Vector>& y_prev() const noexcept { return y_prev_; }
    [[nodiscard]] std::optional<double> h_prev() const noexcept { return h_prev_; }
    [[nodiscard]] bool fresh_discontinuity() const noexcept { return fresh_; }

    /// Shifts y_curr into y_prev and stores the new solved value.
    void push_accepted(const Vector& y_new, double h_used);

    /// Drops the previous sample and marks a discontinuity.
    void reset_on_event(const Vector& y_resolved);

private:
    Vector y_curr_;
    std::optional<Vector> y_prev_;
    std::optional<double> h_prev_;
    bool fresh_ = true;
};

/// Hold-previous estimate: y_{n+1} ~ y_n.
[[nodiscard]] Vector estimate_hold(const AlgebraicHistory& history);

/// Two-point extrapolation y_n + h_next * (y_n - y_{n-1}) / h_n.
/// Falls back to estimate_hold right after a discontinuity or when only one
/// sample exists.
[[nodiscard]] Vector estimate_extrapolate(const AlgebraicHistory& history, double h_next);

}  // namespace pcdae

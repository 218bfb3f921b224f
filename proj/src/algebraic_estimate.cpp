#include "pcdae/algebraic_estimate.hpp"

#include <utility>

#include "pcdae/errors.hpp"

namespace pcdae {

AlgebraicHistory::AlgebraicHistory(Vector y0) : y_curr_(std::move(y0)) {}

void AlgebraicHistory::push_accepted(const Vector& y_new, double h_used) {
    if (!(h_used > 0.0)) {
        throw Error("push_accepted: step size must be positive");
    }
    y_prev_ = std::move(y_curr_);
    h_prev_ = h_used;
    y_curr_ = y_new;
    fresh_ = false;
}

void AlgebraicHistory::reset_on_event(const Vector& y_resolved) {
    y_curr_ = y_resolved;
    y_prev_.reset();
    h_prev_.reset();
    fresh_ = true;
}

Vector estimate_hold(const AlgebraicHistory& history) { return history.y_curr(); }

Vector estimate_extrapolate(const AlgebraicHistory& history, double h_next) {
    if (history.fresh_discontinuity() || !history.y_prev() || !history.h_prev() ||
        !(*history.h_prev() > 0.0) || !(h_next > 0.0)) {
        return estimate_hold(history);
    }
    const Vector& y_n = history.y_curr();
    const Vector& y_nm1 = *history.y_prev();
    return y_n + (h_next / *history.h_prev()) * (y_n - y_nm1);
}

}  // namespace pcdae

#include "pcdae/control.hpp"

#include <algorithm>
#include <cmath>

#include "pcdae/errors.hpp"

namespace pcdae {

void PiController::validate() const {
    if (!(rtol >= 0.0) || !(atol > 0.0)) {
        throw ConfigError("controller tolerances must satisfy rtol >= 0, atol > 0");
    }
    if (!(fac_min > 0.0 && fac_min < 1.0 && fac_max > 1.0)) {
        throw ConfigError("controller factors must satisfy 0 < fac_min < 1 < fac_max");
    }
    if (!(h_min > 0.0 && h_min < h_max)) {
        throw ConfigError("controller step bounds must satisfy 0 < h_min < h_max");
    }
    if (!(k_i >= 0.0 && k_p >= 0.0)) {
        throw ConfigError("controller gains must be non-negative");
    }
    if (!(safety > 0.0 && safety <= 1.0)) {
        throw ConfigError("controller safety factor must lie in (0, 1]");
    }
}

void PiController::accept(double err) noexcept { err_prev = std::max(err, 1e-10); }

void AlgebraicCheck::validate() const {
    if (!(epsilon > 0.0)) {
        throw ConfigError("check.epsilon must be positive");
    }
    if (max_recorrections < 0) {
        throw ConfigError("check.max_recorrections must be non-negative");
    }
}

double scaled_error(const Vector& x_pred, const Vector& x_corr, const PiController& controller) {
    if (x_pred.size() != x_corr.size()) {
        throw Error("scaled_error: vector lengths differ");
    }
    if (x_pred.size() == 0) {
        return 0.0;
    }
    double sum = 0.0;
    for (Eigen::Index i = 0; i < x_pred.size(); ++i) {
        const double w =
            controller.atol + controller.rtol * std::max(std::abs(x_corr[i]), std::abs(x_pred[i]));
        const double e = (x_corr[i] - x_pred[i]) / w;
        sum += e * e;
    }
    return std::sqrt(sum / static_cast<double>(x_pred.size()));
}

double propose_step(const PiController& c, double err, double h) {
    const double e = std::max(err, 1e-10);
    const double e_prev = std::max(c.err_prev, 1e-10);
    double factor = c.safety * std::pow(e, -c.k_i) * std::pow(e_prev / e, c.k_p);
    factor = std::clamp(factor, c.fac_min, c.fac_max);
    return std::clamp(h * factor, c.h_min, c.h_max);
}

bool accept_step(double err) noexcept { return err <= 1.0; }

bool algebraic_consistency(const Vector& y_new, const Vector& y_est, const AlgebraicCheck& check) {
    if (y_new.size() != y_est.size()) {
        throw Error("algebraic_consistency: vector lengths differ");
    }
    return inf_norm(y_new - y_est) <= check.epsilon;
}

}  // namespace pcdae

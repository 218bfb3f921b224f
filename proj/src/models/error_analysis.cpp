#include "pcdae/models/error_analysis.hpp"

#include <cmath>

#include "pcdae/errors.hpp"
#include "pcdae/models/scalar_linear.hpp"

namespace pcdae {

NewtonResult correct_be(const DaeSystem& system, double t_n, const Vector& x_n,
                        const Vector& y_est, const Vector& x_init, double h, CorrectorMode mode,
                        const NewtonConfig& cfg) {
    const double t1 = t_n + h;
    const auto m = static_cast<Eigen::Index>(system.n_states());
    auto residual = [&](const Vector& x) -> Vector { return x - x_n - h * system.f(t1, x, y_est); };
    auto jacobian = [&](const Vector& x) -> Matrix {
        return Matrix::Identity(m, m) - h * system.jac_fx(t1, x, y_est);
    };
    if (mode.converges()) {
        return newton_solve(residual, jacobian, x_init, cfg);
    }
    return newton_fixed_iterations(residual, jacobian, x_init, mode.fixed_iterations);
}

CorrectorErrorCheck verify_corrector_error_formula(double a, double b, double c, double h,
                                                   double e_y) {
    if (1.0 - h * a == 0.0) {
        throw Error("verify_corrector_error_formula: 1 - h a must be non-zero");
    }
    const ModelInstance model = build_scalar_linear(a, b, c, 1.0);
    const DaeSystem& sys = *model.system;
    const SystemState& s0 = model.initial;
    const Vector y_exact = model.analytic(h).second;
    const Vector x_pred = predict_fe(s0.x, sys.f(s0.t, s0.x, s0.y), h);

    const Vector x_ref =
        correct_be(sys, s0.t, s0.x, y_exact, x_pred, h, CorrectorMode::to_convergence()).solution;
    const Vector y_perturbed = y_exact + Vector::Constant(1, e_y);
    const Vector x_pert =
        correct_be(sys, s0.t, s0.x, y_perturbed, x_pred, h, CorrectorMode::to_convergence())
            .solution;

    return {x_pert[0] - x_ref[0], h * b / (1.0 - h * a) * e_y};
}

SingleIterationError verify_single_iteration_error(double a, double b, double c, double h,
                                                   double e_y) {
    const ModelInstance model = build_scalar_linear(a, b, c, 1.0);
    const DaeSystem& sys = *model.system;
    const SystemState& s0 = model.initial;
    const double t1 = s0.t + h;
    const auto [x_star, y_star] = model.analytic(t1);

    const Vector x_pred = predict_fe(s0.x, sys.f(s0.t, s0.x, s0.y), h);
    const Vector y_est = y_star + Vector::Constant(1, e_y);
    // One application of the fixed-point map of the BE corrector.
    const Vector x_one = s0.x + h * sys.f(t1, x_pred, y_est);

    SingleIterationError out;
    out.observed = x_one[0] - x_star[0];
    out.predictor_term = h * a * (x_pred[0] - x_star[0]);
    out.algebraic_term = h * b * e_y;
    out.truncation_term = (s0.x + h * sys.f(t1, x_star, y_star))[0] - x_star[0];
    return out;
}

}  // namespace pcdae

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "pcdae/linalg.hpp"

namespace pcdae {

class DaeSystem;

struct NewtonConfig {
    double tol_residual = 1e-8;
    double tol_step = 1e-10;
    int max_iter = 20;
    /// Updates applied before the convergence test may end the iteration.
    int min_iter = 0;
    /// Initial fraction of the Newton update; halved while the residual grows.
    double damping = 1.0;
    double min_damping = 1.0 / 64.0;
    /// When set, receives the residual norm of the guess and of every accepted iterate.
    std::vector<double>* residual_trace = nullptr;

    /// Throws ConfigError on non-positive tolerances or max_iter < 1.
    void validate() const;
};

struct NewtonReport {
    bool converged = false;
    int iterations = 0;
    double final_residual = 0.0;
    double last_step = std::numeric_limits<double>::infinity();
    int jacobian_factorizations = 0;
};

/// Tally of nonlinear-solver invocations. One newton_solve (or fixed
/// iteration run) adds exactly one, regardless of inner iterations.
struct SolveCounter {
    std::uint64_t calls = 0;
};

using ResidualFn = std::function<Vector(const Vector&)>;
using JacobianFn = std::function<Matrix(const Vector&)>;

struct NewtonResult {
    Vector solution;
    NewtonReport report;
};

/// Damped Newton iteration with residual-monotone backtracking.
///
/// Throws NewtonDivergence after max_iter updates, when the damping floor is
/// reached without a residual decrease, or when the Jacobian turns singular
/// after the first update. A singular Jacobian at the initial guess raises
/// SingularJacobian.
[[nodiscard]] NewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian,
                                        const Vector& guess, const NewtonConfig& cfg = {},
                                        SolveCounter* counter = nullptr);

/// Exactly `iterations` undamped Newton updates, no convergence test.
[[nodiscard]] NewtonResult newton_fixed_iterations(const ResidualFn& residual,
                                                   const JacobianFn& jacobian,
                                                   const Vector& guess, int iterations,
                                                   SolveCounter* counter = nullptr);

/// Solves g(t, x, y) = 0 for y with the system's jac_gy.
[[nodiscard]] NewtonResult solve_algebraic(const DaeSystem& system, double t, const Vector& x,
                                           const Vector& y_guess, const NewtonConfig& cfg = {},
                                           SolveCounter* counter = nullptr);

}  // namespace pcdae

#include "pcdae/nonlinear.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "pcdae/dae.hpp"
#include "pcdae/errors.hpp"

namespace pcdae {

void NewtonConfig::validate() const {
    if (!(tol_residual > 0.0) || !(tol_step > 0.0)) {
        throw ConfigError("newton tolerances must be positive");
    }
    if (max_iter < 1) {
        throw ConfigError("newton.max_iter must be at least 1");
    }
    if (min_iter < 0 || min_iter > max_iter) {
        throw ConfigError("newton.min_iter must lie in [0, max_iter]");
    }
    if (!(damping > 0.0) || damping > 1.0 || !(min_damping > 0.0) || min_damping > damping) {
        throw ConfigError("newton damping must satisfy 0 < min_damping <= damping <= 1");
    }
}

namespace {

[[noreturn]] void diverge(const char* why, const NewtonReport& report) {
    std::ostringstream msg;
    msg << "Newton iteration failed: " << why << " (iterations " << report.iterations
        << ", residual " << report.final_residual << ")";
    throw NewtonDivergence(msg.str(), report.iterations, report.final_residual);
}

}  // namespace

NewtonResult newton_solve(const ResidualFn& residual, const JacobianFn& jacobian,
                          const Vector& guess, const NewtonConfig& cfg, SolveCounter* counter) {
    if (counter != nullptr) {
        ++counter->calls;
    }
    NewtonResult out{guess, {}};
    NewtonReport& rep = out.report;
    if (guess.size() == 0) {
        rep.converged = true;
        return out;
    }

    Vector r = residual(out.solution);
    double res = inf_norm(r);
    rep.final_residual = res;
    if (cfg.residual_trace != nullptr) {
        cfg.residual_trace->push_back(res);
    }
    if (!std::isfinite(res)) {
        diverge("non-finite residual at initial guess", rep);
    }
    if (res <= cfg.tol_residual && cfg.min_iter == 0) {
        rep.converged = true;
        return out;
    }

    while (rep.iterations < cfg.max_iter) {
        Vector dz;
        try {
            const LuFactorization lu(jacobian(out.solution));
            ++rep.jacobian_factorizations;
            dz = -lu.solve(r);
        } catch (const SingularJacobian&) {
            if (rep.iterations == 0) {
                throw;
            }
            diverge("Jacobian became singular", rep);
        }

        double lambda = cfg.damping;
        Vector trial = out.solution + lambda * dz;
        Vector r_trial = residual(trial);
        double res_trial = inf_norm(r_trial);
        while (!(res_trial <= res) && res_trial > cfg.tol_residual &&
               res_trial > std::numeric_limits<double>::epsilon() * 16.0) {
            lambda *= 0.5;
            if (lambda < cfg.min_damping) {
                ++rep.iterations;
                diverge("damping floor reached with increasing residual", rep);
            }
            trial = out.solution + lambda * dz;
            r_trial = residual(trial);
            res_trial = inf_norm(r_trial);
        }

        ++rep.iterations;
        rep.last_step = lambda * inf_norm(dz);
        out.solution = std::move(trial);
        r = std::move(r_trial);
        res = res_trial;
        rep.final_residual = res;
        if (cfg.residual_trace != nullptr) {
            cfg.residual_trace->push_back(res);
        }
        if (rep.iterations >= cfg.min_iter &&
            (res <= cfg.tol_residual || rep.last_step <= cfg.tol_step)) {
            rep.converged = true;
            return out;
        }
    }
    diverge("maximum iterations reached", rep);
}

NewtonResult newton_fixed_iterations(const ResidualFn& residual, const JacobianFn& jacobian,
                                     const Vector& guess, int iterations, SolveCounter* counter) {
    if (iterations < 1) {
        throw ConfigError("fixed corrector iteration count must be at least 1");
    }
    if (counter != nullptr) {
        ++counter->calls;
    }
    NewtonResult out{guess, {}};
    if (guess.size() == 0) {
        out.report.converged = true;
        return out;
    }
    for (int k = 0; k < iterations; ++k) {
        const LuFactorization lu(jacobian(out.solution));
        ++out.report.jacobian_factorizations;
        const Vector dz = -lu.solve(residual(out.solution));
        out.solution += dz;
        out.report.last_step = inf_norm(dz);
        ++out.report.iterations;
    }
    out.report.final_residual = inf_norm(residual(out.solution));
    out.report.converged = std::isfinite(out.report.final_residual);
    return out;
}

NewtonResult solve_algebraic(const DaeSystem& system, double t, const Vector& x,
                             const Vector& y_guess, const NewtonConfig& cfg,
                             SolveCounter* counter) {
    return newton_solve([&](const Vector& y) { return system.g(t, x, y); },
                        [&](const Vector& y) { return system.jac_gy(t, x, y); }, y_guess, cfg,
                        counter);
}

}  // namespace pcdae

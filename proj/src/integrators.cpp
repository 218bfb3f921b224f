#include "pcdae/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pcdae/errors.hpp"

namespace pcdae {

std::string_view to_string(SchemeKind kind) noexcept {
    switch (kind) {
        case SchemeKind::SimultaneousItm: return "itm";
        case SchemeKind::PartitionedHold: return "pc-hold";
        case SchemeKind::PartitionedPredict: return "pc-predict";
    }
    return "unknown";
}

SchemeKind parse_scheme(std::string_view name) {
    if (name == "itm") return SchemeKind::SimultaneousItm;
    if (name == "pc-hold") return SchemeKind::PartitionedHold;
    if (name == "pc-predict") return SchemeKind::PartitionedPredict;
    throw ConfigError("unknown solver '" + std::string(name) +
                      "' (expected itm, pc-hold or pc-predict)");
}

Vector predict_fe(const Vector& x_n, const Vector& f_n, double h) { return x_n + h * f_n; }

NewtonResult correct_itm(const DaeSystem& system, double t_n, const Vector& x_n,
                         const Vector& f_n, const Vector& y_est, const Vector& x_init, double h,
                         CorrectorMode mode, const NewtonConfig& cfg, SolveCounter* counter) {
    const double t1 = t_n + h;
    const auto m = static_cast<Eigen::Index>(system.n_states());
    auto residual = [&](const Vector& x) -> Vector {
        return x - x_n - 0.5 * h * (f_n + system.f(t1, x, y_est));
    };
    auto jacobian = [&](const Vector& x) -> Matrix {
        return Matrix::Identity(m, m) - 0.5 * h * system.jac_fx(t1, x, y_est);
    };
    if (mode.converges()) {
        NewtonConfig corrector_cfg = cfg;
        corrector_cfg.min_iter = std::max(cfg.min_iter, 1);
        return newton_solve(residual, jacobian, x_init, corrector_cfg, counter);
    }
    return newton_fixed_iterations(residual, jacobian, x_init, mode.fixed_iterations, counter);
}

namespace {

bool all_finite(const Vector& v) { return v.allFinite(); }

// Step size after a rejection: strictly below h.
double shrink(const PiController& c, double err, double h) {
    return std::max(std::min(propose_step(c, err, h), c.safety * h), c.fac_min * h);
}

StepOutcome newton_failure(StepResult&& partial, double h) {
    StepOutcome out;
    out.result = std::move(partial);
    out.h_next = 0.5 * h;
    out.status = StepStatus::NewtonFailure;
    return out;
}

}  // namespace

StepOutcome step_partitioned(const DaeSystem& system, const SystemState& state, double h,
                             const SolverScheme& scheme, const AlgebraicHistory& history,
                             const StepSettings& settings) {
    if (scheme.kind == SchemeKind::SimultaneousItm) {
        throw Error("step_partitioned called with the simultaneous scheme");
    }
    const PiController& ctl = settings.controller;
    SolveCounter calls;
    StepResult r;
    const double t1 = state.t + h;

    const Vector f_n = system.f(state.t, state.x, state.y);
    r.x_pred = predict_fe(state.x, f_n, h);
    r.y_est = scheme.kind == SchemeKind::PartitionedPredict ? estimate_extrapolate(history, h)
                                                            : estimate_hold(history);

    const bool run_check =
        scheme.kind == SchemeKind::PartitionedHold || scheme.check_predict;
    bool consistent = true;
    double mismatch = 0.0;
    try {
        r.x_corr = correct_itm(system, state.t, state.x, f_n, r.y_est, r.x_pred, h,
                               scheme.corrector, settings.newton, &calls)
                       .solution;
        r.y_new = solve_algebraic(system, t1, r.x_corr, r.y_est, settings.newton, &calls).solution;

        // The check bounds the change of y across the step, so the reference stays
        // at the estimate even after re-correcting with y_new.
        if (run_check) {
            mismatch = inf_norm(r.y_new - r.y_est);
            consistent = algebraic_consistency(r.y_new, r.y_est, settings.check);
            Vector y_used = r.y_est;
            for (int k = 0; !consistent && k < settings.check.max_recorrections; ++k) {
                y_used = r.y_new;
                r.x_corr = correct_itm(system, state.t, state.x, f_n, y_used, r.x_corr, h,
                                       scheme.corrector, settings.newton, &calls)
                               .solution;
                r.y_new =
                    solve_algebraic(system, t1, r.x_corr, y_used, settings.newton, &calls).solution;
                ++r.recorrections;
                mismatch = inf_norm(r.y_new - r.y_est);
                consistent = algebraic_consistency(r.y_new, r.y_est, settings.check);
            }
        }
    } catch (const NewtonDivergence&) {
        r.nonlinear_calls = calls.calls;
        return newton_failure(std::move(r), h);
    } catch (const SingularJacobian&) {
        r.nonlinear_calls = calls.calls;
        return newton_failure(std::move(r), h);
    }
    r.nonlinear_calls = calls.calls;
    if (!all_finite(r.x_corr) || !all_finite(r.y_new)) {
        return newton_failure(std::move(r), h);
    }

    r.local_error = scaled_error(r.x_pred, r.x_corr, ctl);
    StepOutcome out;
    if (settings.fixed_step) {
        out.status = StepStatus::Accepted;
        out.h_next = h;
    } else if (!accept_step(r.local_error)) {
        out.status = StepStatus::ErrorTooLarge;
        out.h_next = shrink(ctl, r.local_error, h);
    } else if (!consistent) {
        out.status = StepStatus::AlgebraicMismatch;
        const double ratio = settings.check.epsilon / std::max(mismatch, 1e-300);
        out.h_next = std::clamp(ctl.safety * ratio * h, ctl.fac_min * h, ctl.safety * h);
    } else {
        out.status = StepStatus::Accepted;
        out.h_next = propose_step(ctl, r.local_error, h);
        // Keep the next step's change in y within epsilon as well.
        if (run_check && mismatch > 0.0) {
            const double cap = ctl.safety * settings.check.epsilon / mismatch * h;
            out.h_next = std::clamp(std::min(out.h_next, cap), ctl.h_min, ctl.h_max);
        }
    }
    out.result = std::move(r);
    return out;
}

StepOutcome step_simultaneous_itm(const DaeSystem& system, const SystemState& state, double h,
                                  const StepSettings& settings) {
    const PiController& ctl = settings.controller;
    const auto m = static_cast<Eigen::Index>(system.n_states());
    const auto n = static_cast<Eigen::Index>(system.n_algebraic());
    const double t1 = state.t + h;
    SolveCounter calls;
    StepResult r;

    const Vector f_n = system.f(state.t, state.x, state.y);
    r.x_pred = predict_fe(state.x, f_n, h);
    r.y_est = state.y;

    auto residual = [&](const Vector& z) -> Vector {
        const Vector x = z.head(m);
        const Vector y = z.tail(n);
        Vector res(m + n);
        res.head(m) = x - state.x - 0.5 * h * (f_n + system.f(t1, x, y));
        res.tail(n) = system.g(t1, x, y);
        return res;
    };
    auto jacobian = [&](const Vector& z) -> Matrix {
        const Vector x = z.head(m);
        const Vector y = z.tail(n);
        Matrix jac(m + n, m + n);
        jac.topLeftCorner(m, m) = Matrix::Identity(m, m) - 0.5 * h * system.jac_fx(t1, x, y);
        jac.topRightCorner(m, n) = -0.5 * h * system.jac_fy(t1, x, y);
        jac.bottomLeftCorner(n, m) = system.jac_gx(t1, x, y);
        jac.bottomRightCorner(n, n) = system.jac_gy(t1, x, y);
        return jac;
    };

    Vector guess(m + n);
    guess << r.x_pred, state.y;
    try {
        NewtonConfig cfg = settings.newton;
        cfg.min_iter = std::max(cfg.min_iter, 1);
        const Vector z = newton_solve(residual, jacobian, guess, cfg, &calls).solution;
        r.x_corr = z.head(m);
        r.y_new = z.tail(n);
    } catch (const NewtonDivergence&) {
        r.nonlinear_calls = calls.calls;
        return newton_failure(std::move(r), h);
    } catch (const SingularJacobian&) {
        r.nonlinear_calls = calls.calls;
        return newton_failure(std::move(r), h);
    }
    r.nonlinear_calls = calls.calls;
    if (!all_finite(r.x_corr) || !all_finite(r.y_new)) {
        return newton_failure(std::move(r), h);
    }

    r.local_error = scaled_error(r.x_pred, r.x_corr, ctl);
    StepOutcome out;
    if (settings.fixed_step) {
        out.status = StepStatus::Accepted;
        out.h_next = h;
    } else if (!accept_step(r.local_error)) {
        out.status = StepStatus::ErrorTooLarge;
        out.h_next = shrink(ctl, r.local_error, h);
    } else {
        out.status = StepStatus::Accepted;
        out.h_next = propose_step(ctl, r.local_error, h);
    }
    out.result = std::move(r);
    return out;
}

namespace {

std::vector<double> make_row(const SystemState& s, double h) {
    std::vector<double> row;
    row.reserve(2 + static_cast<std::size_t>(s.x.size() + s.y.size()));
    row.push_back(s.t);
    row.push_back(h);
    row.insert(row.end(), s.x.data(), s.x.data() + s.x.size());
    row.insert(row.end(), s.y.data(), s.y.data() + s.y.size());
    return row;
}

}  // namespace

SimulationResult simulate(const DaeSystem& system, const SystemState& initial,
                          const SimulationOptions& options) {
    options.step.controller.validate();
    options.step.check.validate();
    options.step.newton.validate();
    if (options.fixed_step && !(*options.fixed_step > 0.0)) {
        throw ConfigError("fixed step size must be positive");
    }
    if (!(options.t_end >= initial.t)) {
        throw ConfigError("t_end must not precede the initial time");
    }

    const std::unique_ptr<DaeSystem> sys = system.clone();
    SimulationResult out;
    Trajectory& traj = out.trajectory;
    RunMetrics& metrics = out.metrics;
    traj.labels = {"time", "step_size"};
    for (auto& name : sys->variable_names()) {
        traj.labels.push_back(std::move(name));
    }

    StepSettings settings = options.step;
    settings.fixed_step = options.fixed_step.has_value();
    PiController& ctl = settings.controller;
    ctl.reset();

    SolveCounter event_calls;
    SystemState state = initial;
    AlgebraicHistory history(state.y);
    traj.append(make_row(state, 0.0));

    const double t0 = initial.t;
    const double t_end = options.t_end;
    const double snap = 1e-12 * std::max(1.0, std::abs(t_end));
    const auto& events = sys->events();
    for (const auto& ev : events) {
        if (ev.time < t0 - snap) {
            throw ConfigError("event '" + ev.label + "' precedes the initial time");
        }
    }
    std::size_t next_event = 0;

    const double h_start = options.fixed_step ? *options.fixed_step : options.h_init;
    double h = h_start;

    auto apply_due_events = [&]() {
        bool any = false;
        while (next_event < events.size() && std::abs(events[next_event].time - state.t) <= snap &&
               events[next_event].time <= t_end + snap) {
            const Event ev = events[next_event++];
            state = apply_event(*sys, state, ev, settings.newton, &event_calls);
            any = true;
        }
        if (any) {
            history.reset_on_event(state.y);
            ctl.reset();
            h = h_start;
            traj.append(make_row(state, 0.0));
        }
    };

    auto finish = [&]() {
        metrics.nonlinear_calls += event_calls.calls;
        out.final_state = state;
        return std::move(out);
    };

    try {
        apply_due_events();
    } catch (const Error& e) {
        metrics.diverged = true;
        metrics.diverged_reason = std::string("event re-solve failed: ") + e.what();
        return finish();
    }

    while (t_end - state.t > snap) {
        const double stop = next_event < events.size() ? std::min(events[next_event].time, t_end)
                                                       : t_end;
        double h_try = std::min(h, stop - state.t);
        bool lands = false;
        if (stop - (state.t + h_try) <= snap) {
            h_try = stop - state.t;
            lands = true;
        }

        const StepOutcome step =
            options.scheme.kind == SchemeKind::SimultaneousItm
                ? step_simultaneous_itm(*sys, state, h_try, settings)
                : step_partitioned(*sys, state, h_try, options.scheme, history, settings);

        metrics.nonlinear_calls += step.result.nonlinear_calls;
        metrics.recorrections += step.result.recorrections;
        metrics.step_records.push_back(
            {state.t, h_try, step.accepted(), step.result.local_error});

        if (step.accepted()) {
            ++metrics.accepted_steps;
            state.t = lands ? stop : state.t + h_try;
            state.x = step.result.x_corr;
            state.y = step.result.y_new;
            state.h_last = h_try;
            history.push_accepted(state.y, h_try);
            if (!settings.fixed_step) {
                ctl.accept(step.result.local_error);
            }
            traj.append(make_row(state, h_try));
            // A step shortened to land on a stop does not shrink the next one.
            h = lands && !settings.fixed_step ? std::max(step.h_next, h) : step.h_next;
            if (settings.fixed_step) {
                h = h_start;
            }
            try {
                apply_due_events();
            } catch (const Error& e) {
                metrics.diverged = true;
                metrics.diverged_reason = std::string("event re-solve failed: ") + e.what();
                return finish();
            }
        } else {
            ++metrics.rejected_steps;
            if (settings.fixed_step || h_try <= ctl.h_min * (1.0 + 1e-12)) {
                metrics.diverged = true;
                metrics.diverged_reason =
                    step.status == StepStatus::NewtonFailure
                        ? "Newton failure at minimum step size"
                        : "step size underflow at t = " + std::to_string(state.t);
                return finish();
            }
            h = std::max(step.h_next, ctl.h_min);
        }
    }
    return finish();
}

}  // namespace pcdae

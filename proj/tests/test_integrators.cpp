#include <doctest.h>

#include <cmath>

#include "pcdae/errors.hpp"
#include "pcdae/integrators.hpp"
#include "pcdae/io/convergence.hpp"
#include "pcdae/models/power_network.hpp"
#include "pcdae/models/scalar_linear.hpp"

using namespace pcdae;

namespace {

Vector scalar(double v) { return Vector::Constant(1, v); }

SystemState exact_state(const ModelInstance& m, double t) {
    const auto [x, y] = m.analytic(t);
    return {t, x, y, std::nullopt};
}

// Exact history ending at t: y(t - h), y(t).
AlgebraicHistory exact_history(const ModelInstance& m, double t, double h) {
    AlgebraicHistory hist(m.analytic(t - h).second);
    hist.push_accepted(m.analytic(t).second, h);
    return hist;
}

SimulationOptions options(SchemeKind kind, double t_end) {
    SimulationOptions o;
    o.scheme.kind = kind;
    o.t_end = t_end;
    return o;
}

}  // namespace

TEST_CASE("scheme names round-trip") {
    for (auto k : {SchemeKind::SimultaneousItm, SchemeKind::PartitionedHold,
                   SchemeKind::PartitionedPredict}) {
        CHECK(parse_scheme(to_string(k)) == k);
    }
    CHECK_THROWS_AS((void)parse_scheme("rk4"), ConfigError);
}

TEST_CASE("predict_fe examples") {
    CHECK(predict_fe(scalar(1.0), scalar(-1.0), 0.1)(0) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(predict_fe(scalar(2.5), scalar(0.0), 0.1)(0) == 2.5);
}

TEST_CASE("forward Euler global error halves with h") {
    auto fe_error = [](double h) {
        double x = 1.0;
        const int n = static_cast<int>(std::lround(1.0 / h));
        for (int k = 0; k < n; ++k) x = predict_fe(scalar(x), scalar(-x), h)(0);
        return std::abs(x - std::exp(-1.0));
    };
    const double ratio = fe_error(0.1) / fe_error(0.05);
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("correct_itm closed form on the linear test equation") {
    const LinearOde ode(-1.0);
    const Vector x_n = scalar(1.0);
    const Vector f_n = ode.f(0.0, x_n, Vector(0));
    const Vector x_pred = predict_fe(x_n, f_n, 0.1);
    const double expect = (1.0 - 0.05) / (1.0 + 0.05);  // 0.9047619...
    const auto conv = correct_itm(ode, 0.0, x_n, f_n, Vector(0), x_pred, 0.1,
                                  CorrectorMode::to_convergence());
    CHECK(conv.solution(0) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(std::abs(conv.solution(0) - 0.9047619047619047) <= 1e-12);

    const auto one = correct_itm(ode, 0.0, x_n, f_n, Vector(0), x_pred, 0.1,
                                 CorrectorMode::fixed(1));
    CHECK(one.report.iterations == 1);
    CHECK(one.solution(0) == doctest::Approx(expect).epsilon(1e-14));

    const auto three = correct_itm(ode, 0.0, x_n, f_n, Vector(0), x_pred, 0.1,
                                   CorrectorMode::fixed(3));
    CHECK(three.report.iterations == 3);
}

TEST_CASE("correct_itm with zero dynamics keeps x") {
    const LinearOde still(0.0);
    const Vector x_n = scalar(4.0);
    const Vector f_n = scalar(0.0);
    for (auto mode : {CorrectorMode::to_convergence(), CorrectorMode::fixed(2)}) {
        const auto r = correct_itm(still, 0.0, x_n, f_n, Vector(0), x_n, 0.1, mode);
        CHECK(r.solution(0) == 4.0);
    }
}

TEST_CASE("ITM corrector sensitivity to the algebraic estimate") {
    // x1 = [x_n + h/2 (f_n + b y_est)] / (1 - h a / 2), so
    // dx1 = (h/2) b / (1 - (h/2) a) * dy_est exactly on the affine model.
    const double a = -2.0;
    const double b = 1.0;
    const double c = 1.0;
    const ModelInstance m = build_scalar_linear(a, b, c, 1.0);
    for (double h : {0.01, 0.05, 0.1}) {
        const SystemState s = exact_state(m, 0.3);
        const Vector f_n = m.system->f(s.t, s.x, s.y);
        const Vector x_pred = predict_fe(s.x, f_n, h);
        const Vector y_exact = m.analytic(s.t + h).second;
        const Vector x_exact_y = correct_itm(*m.system, s.t, s.x, f_n, y_exact, x_pred, h,
                                             CorrectorMode::to_convergence())
                                     .solution;
        const Vector x_hold = correct_itm(*m.system, s.t, s.x, f_n, s.y, x_pred, h,
                                          CorrectorMode::to_convergence())
                                  .solution;
        const double dy = s.y(0) - y_exact(0);
        const double predicted = 0.5 * h * b / (1.0 - 0.5 * h * a) * dy;
        CHECK(std::abs((x_hold(0) - x_exact_y(0)) - predicted) <= 1e-15);
    }
}

TEST_CASE("step_simultaneous_itm on a pure ODE and the linear DAE") {
    StepSettings st;
    const ModelInstance ode = build_linear_ode(-1.0, 1.0);
    const StepOutcome o = step_simultaneous_itm(*ode.system, ode.initial, 0.1, st);
    CHECK(std::abs(o.result.x_corr(0) - 0.9047619047619047) <= 1e-12);
    CHECK(o.result.nonlinear_calls == 1);
    CHECK(o.result.x_pred(0) == doctest::Approx(0.9));

    const ModelInstance lin = build_scalar_linear(-2.0, 1.0, 1.0, 1.0);
    const StepOutcome d = step_simultaneous_itm(*lin.system, lin.initial, 0.1, st);
    const Vector f_n = lin.system->f(0.0, lin.initial.x, lin.initial.y);
    const double r_x = d.result.x_corr(0) - lin.initial.x(0) -
                       0.05 * (f_n(0) + lin.system->f(0.1, d.result.x_corr, d.result.y_new)(0));
    CHECK(std::abs(r_x) <= 1e-8);
    CHECK(inf_norm(lin.system->g(0.1, d.result.x_corr, d.result.y_new)) <= 1e-8);

    // Injecting the simultaneous y into the partitioned corrector reproduces it.
    const Vector x_part = correct_itm(*lin.system, 0.0, lin.initial.x, f_n, d.result.y_new,
                                      d.result.x_pred, 0.1, CorrectorMode::to_convergence())
                              .solution;
    CHECK(std::abs(x_part(0) - d.result.x_corr(0)) <= 1e-10);
}

TEST_CASE("partitioned estimate mismatch orders: extrapolation O(h^2), hold O(h)") {
    const ModelInstance m = build_scalar_linear(-2.0, 1.0, 1.0, 1.0);
    StepSettings st;
    st.fixed_step = true;
    const double t = 0.5;
    for (auto [kind, order] : {std::pair{SchemeKind::PartitionedPredict, 2.0},
                               std::pair{SchemeKind::PartitionedHold, 1.0}}) {
        SolverScheme scheme;
        scheme.kind = kind;
        std::vector<double> hs;
        std::vector<double> errs;
        for (double h : {0.02, 0.01, 0.005, 0.0025}) {
            const StepOutcome o = step_partitioned(*m.system, exact_state(m, t), h, scheme,
                                                   exact_history(m, t, h), st);
            hs.push_back(h);
            errs.push_back(inf_norm(o.result.y_est - o.result.y_new));
        }
        CHECK(fit_loglog_slope(hs, errs) == doctest::Approx(order).epsilon(0.2 / order));
    }
}

TEST_CASE("PartitionedHold re-corrects and counts each re-correction") {
    const ModelInstance m = build_scalar_linear(-2.0, 1.0, 1.0, 1.0);
    StepSettings st;
    st.controller.rtol = 0.1;  // keep the local error test out of the way
    st.controller.atol = 0.1;
    st.check.epsilon = 1e-4;
    SolverScheme hold;
    hold.kind = SchemeKind::PartitionedHold;
    const double h = 0.05;  // |y_{n+1} - y_n| ~ h |y'| >> epsilon
    const StepOutcome o =
        step_partitioned(*m.system, exact_state(m, 0.5), h, hold, exact_history(m, 0.5, h), st);
    CHECK(o.status == StepStatus::AlgebraicMismatch);
    CHECK(o.result.recorrections == 3);
    // One corrector and one algebraic solve per pass.
    CHECK(o.result.nonlinear_calls == 2 * (1 + 3));
    CHECK(o.h_next < h);

    st.check.epsilon = 1.0;
    const StepOutcome ok =
        step_partitioned(*m.system, exact_state(m, 0.5), h, hold, exact_history(m, 0.5, h), st);
    CHECK(ok.result.recorrections == 0);
    CHECK(ok.result.nonlinear_calls == 2);
}

TEST_CASE("simulate: equilibrium is held and h grows to h_max") {
    SmibParams p;
    p.with_fault = false;
    const ModelInstance m = build_smib(p);
    for (auto kind : {SchemeKind::SimultaneousItm, SchemeKind::PartitionedHold,
                      SchemeKind::PartitionedPredict}) {
        const SimulationResult r = simulate(*m.system, m.initial, options(kind, 5.0));
        CHECK_FALSE(r.metrics.diverged);
        CHECK(r.metrics.rejected_steps == 0);
        CHECK(inf_norm(r.final_state.x - m.initial.x) <= 1e-9);
        CHECK(inf_norm(r.final_state.y - m.initial.y) <= 1e-9);
        double h_largest = 0.0;
        for (const auto& rec : r.metrics.step_records) h_largest = std::max(h_largest, rec.h);
        CHECK(h_largest == doctest::Approx(PiController{}.h_max));
    }
}

TEST_CASE("simulate: t_end = t0 keeps only the initial row") {
    const ModelInstance m = build_smib();
    const SimulationResult r = simulate(*m.system, m.initial, options(SchemeKind::PartitionedPredict, 0.0));
    CHECK(r.trajectory.n_rows() == 1);
    CHECK(r.metrics.step_records.empty());
    CHECK(r.metrics.nonlinear_calls == 0);
    CHECK(r.metrics.counters_consistent());
}

TEST_CASE("simulate: the grid lands on events and t_end exactly") {
    const ModelInstance m = build_smib();
    const SimulationResult r =
        simulate(*m.system, m.initial, options(SchemeKind::PartitionedPredict, 1.0));
    REQUIRE_FALSE(r.metrics.diverged);
    const Trajectory& tr = r.trajectory;
    int at_on = 0;
    int at_off = 0;
    for (std::size_t i = 0; i < tr.n_rows(); ++i) {
        at_on += tr.time(i) == 0.5 ? 1 : 0;
        at_off += tr.time(i) == 0.6 ? 1 : 0;
        if (i > 0) {
            CHECK(tr.time(i) >= tr.time(i - 1));
            if (tr.time(i) == tr.time(i - 1)) {
                const double t = tr.time(i);
                CHECK((t == 0.5 || t == 0.6));
            }
        }
    }
    CHECK(at_on == 2);
    CHECK(at_off == 2);
    CHECK(tr.time(tr.n_rows() - 1) == 1.0);
    CHECK(r.final_state.t == 1.0);

    // The fault collapses the bus-3 voltage while the rotor angle stays continuous.
    for (std::size_t i = 1; i < tr.n_rows(); ++i) {
        if (tr.time(i) == 0.5 && tr.time(i - 1) == 0.5) {
            CHECK(tr.at(i, 2) == tr.at(i - 1, 2));
            CHECK(std::hypot(tr.at(i, 8), tr.at(i, 9)) < 1e-3);
            CHECK(std::hypot(tr.at(i - 1, 8), tr.at(i - 1, 9)) > 0.5);
        }
    }
}

TEST_CASE("simulate: determinism and empty event lists") {
    const ModelInstance m = build_smib();
    const auto o = options(SchemeKind::PartitionedHold, 1.0);
    const SimulationResult a = simulate(*m.system, m.initial, o);
    const SimulationResult b = simulate(*m.system, m.initial, o);
    CHECK(a.trajectory.values == b.trajectory.values);
    CHECK(a.metrics.nonlinear_calls == b.metrics.nonlinear_calls);
    CHECK(a.metrics.accepted_steps == b.metrics.accepted_steps);

    SmibParams p;
    p.with_fault = false;
    const ModelInstance quiet = build_smib(p);
    ModelInstance cleared = build_smib(p);
    cleared.system->set_events({});
    const SimulationResult q1 = simulate(*quiet.system, quiet.initial, o);
    const SimulationResult q2 = simulate(*cleared.system, cleared.initial, o);
    CHECK(q1.trajectory.values == q2.trajectory.values);
}

TEST_CASE("simulate: accepted steps are consistent and within tolerance on a smooth problem") {
    SmibParams p;
    p.with_fault = false;
    ModelInstance m = build_smib(p);
    m.initial.x(0) += 0.2;  // start off equilibrium to get a swing
    m.initial = consistent_initialize(*m.system, 0.0, m.initial.x, m.initial.y);
    for (auto kind : {SchemeKind::PartitionedHold, SchemeKind::PartitionedPredict}) {
        const SimulationResult r = simulate(*m.system, m.initial, options(kind, 2.0));
        REQUIRE_FALSE(r.metrics.diverged);
        CHECK(r.metrics.counters_consistent());
        const Trajectory& tr = r.trajectory;
        double worst_g = 0.0;
        for (std::size_t i = 0; i < tr.n_rows(); ++i) {
            const auto row = tr.row(i);
            Vector x(2);
            Vector y(6);
            for (int k = 0; k < 2; ++k) x(k) = row[2 + static_cast<std::size_t>(k)];
            for (int k = 0; k < 6; ++k) y(k) = row[4 + static_cast<std::size_t>(k)];
            worst_g = std::max(worst_g, inf_norm(m.system->g(row[0], x, y)));
        }
        CHECK(worst_g <= NewtonConfig{}.tol_residual);
        for (const auto& rec : r.metrics.step_records) {
            if (rec.accepted) CHECK(rec.error <= 1.0);
        }
    }
}

TEST_CASE("simulate: rejected steps retry with a strictly smaller h") {
    const ModelInstance m = build_smib();
    for (auto kind : {SchemeKind::SimultaneousItm, SchemeKind::PartitionedHold,
                      SchemeKind::PartitionedPredict}) {
        const SimulationResult r = simulate(*m.system, m.initial, options(kind, 1.0));
        const auto& recs = r.metrics.step_records;
        std::size_t rejected = 0;
        for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
            if (!recs[i].accepted) {
                ++rejected;
                CHECK(recs[i + 1].t == recs[i].t);
                CHECK(recs[i + 1].h < recs[i].h);
            }
        }
        CHECK(rejected == r.metrics.rejected_steps);
    }
}

TEST_CASE("simulate: underflow marks the run diverged with consistent counters") {
    const ModelInstance m = build_smib();
    SimulationOptions o = options(SchemeKind::PartitionedPredict, 1.0);
    o.step.controller.rtol = 1e-14;
    o.step.controller.atol = 1e-16;
    o.step.controller.h_min = 1e-4;
    const SimulationResult r = simulate(*m.system, m.initial, o);
    CHECK(r.metrics.diverged);
    CHECK_FALSE(r.metrics.diverged_reason.empty());
    CHECK(r.metrics.counters_consistent());
}

TEST_CASE("simulate: fixed-step mode accepts every step at the given size") {
    const ModelInstance m = build_linear_ode(-1.0, 1.0);
    SimulationOptions o = options(SchemeKind::SimultaneousItm, 1.0);
    o.fixed_step = 0.1;
    const SimulationResult r = simulate(*m.system, m.initial, o);
    CHECK(r.metrics.accepted_steps == 10);
    CHECK(r.metrics.rejected_steps == 0);
    CHECK(r.final_state.t == 1.0);
    CHECK(r.final_state.x(0) == doctest::Approx(std::pow(0.95 / 1.05, 10)).epsilon(1e-12));
}

TEST_CASE("simulate: ITM global error on x' = -x is second order") {
    const ModelInstance m = build_linear_ode(-1.0, 1.0);
    ConvergenceSpec spec;
    spec.scheme.kind = SchemeKind::SimultaneousItm;
    spec.steps = {0.1, 0.05, 0.025, 0.0125};
    const ConvergenceResult r = convergence_study(m, spec);
    CHECK(std::abs(r.slope - 2.0) <= 0.1);
}

TEST_CASE("scalar linear solutions match the analytic oracle at rtol 1e-8") {
    const ModelInstance m = build_scalar_linear(-2.0, 1.0, 1.0, 1.0);
    for (auto kind : {SchemeKind::SimultaneousItm, SchemeKind::PartitionedHold,
                      SchemeKind::PartitionedPredict}) {
        SimulationOptions o = options(kind, 1.0);
        o.step.controller.rtol = 1e-8;
        o.step.controller.atol = 1e-10;
        o.step.check.epsilon = 1e-6;
        const SimulationResult r = simulate(*m.system, m.initial, o);
        const double exact = std::exp(-1.0);
        CHECK(std::abs(r.final_state.x(0) - exact) / exact <= 1e-6);
    }
}

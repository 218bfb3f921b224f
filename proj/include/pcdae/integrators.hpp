#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pcdae/algebraic_estimate.hpp"
#include "pcdae/control.hpp"
#include "pcdae/dae.hpp"
#include "pcdae/nonlinear.hpp"
#include "pcdae/run_data.hpp"

namespace pcdae {

enum class SchemeKind {
    SimultaneousItm,     ///< stacked ITM Newton solve on (x, y)
    PartitionedHold,     ///< FE predictor, ITM corrector, y_est = y_n
    PartitionedPredict,  ///< FE predictor, ITM corrector, y_est extrapolated
};

[[nodiscard]] std::string_view to_string(SchemeKind kind) noexcept;

/// Parses the CLI spellings itm, pc-hold and pc-predict.
[[nodiscard]] SchemeKind parse_scheme(std::string_view name);

/// How far the ITM corrector is iterated.
struct CorrectorMode {
    /// 0 means iterate to convergence with the Newton tolerances.
    int fixed_iterations = 0;

    [[nodiscard]] static CorrectorMode to_convergence() noexcept { return {}; }
    [[nodiscard]] static CorrectorMode fixed(int iterations) noexcept { return {iterations}; }
    [[nodiscard]] bool converges() const noexcept { return fixed_iterations == 0; }
};

struct SolverScheme {
    SchemeKind kind = SchemeKind::PartitionedPredict;
    CorrectorMode corrector;
    /// Also run the algebraic consistency check for PartitionedPredict.
    bool check_predict = false;
};

struct StepResult {
    Vector x_pred;
    Vector x_corr;
    Vector y_est;
    Vector y_new;
    double local_error = 0.0;
    std::uint64_t nonlinear_calls = 0;
    std::uint64_t recorrections = 0;
};

enum class StepStatus {
    Accepted,
    ErrorTooLarge,
    AlgebraicMismatch,
    NewtonFailure,
};

struct StepOutcome {
    StepResult result;
    double h_next = 0.0;
    StepStatus status = StepStatus::Accepted;

    [[nodiscard]] bool accepted() const noexcept { return status == StepStatus::Accepted; }
};

/// Shared tuning for one step attempt.
struct StepSettings {
    PiController controller;
    AlgebraicCheck check;
    NewtonConfig newton;
    /// Accept every step and keep h; used by convergence studies.
    bool fixed_step = false;
};

/// Forward Euler: x_n + h f_n.
[[nodiscard]] Vector predict_fe(const Vector& x_n, const Vector& f_n, double h);

/// Solves x = x_n + h/2 (f_n + f(t_n + h, x, y_est)) starting from x_init,
/// with y_est held fixed.
[[nodiscard]] NewtonResult correct_itm(const DaeSystem& system, double t_n, const Vector& x_n,
                                       const Vector& f_n, const Vector& y_est,
                                       const Vector& x_init, double h, CorrectorMode mode,
                                       const NewtonConfig& cfg = {},
                                       SolveCounter* counter = nullptr);

/// One partitioned predictor-corrector attempt from `state` with step h.
[[nodiscard]] StepOutcome step_partitioned(const DaeSystem& system, const SystemState& state,
                                           double h, const SolverScheme& scheme,
                                           const AlgebraicHistory& history,
                                           const StepSettings& settings);

/// One simultaneous ITM attempt; x_pred holds the embedded FE prediction.
[[nodiscard]] StepOutcome step_simultaneous_itm(const DaeSystem& system,
                                                const SystemState& state, double h,
                                                const StepSettings& settings);

struct SimulationOptions {
    SolverScheme scheme;
    StepSettings step;
    double h_init = 1e-3;
    double t_end = 10.0;
    std::optional<double> fixed_step;
};

struct SimulationResult {
    Trajectory trajectory;
    RunMetrics metrics;
    SystemState final_state;
};

/// Integrates from `initial` to options.t_end, landing exactly on every event
/// time and on t_end. The caller's system is not modified; events act on a
/// private clone. Step underflow or a failed event re-solve ends the run with
/// metrics.diverged set and the partial trajectory. Events after t_end never
/// fire.
[[nodiscard]] SimulationResult simulate(const DaeSystem& system, const SystemState& initial,
                                        const SimulationOptions& options);

}  // namespace pcdae

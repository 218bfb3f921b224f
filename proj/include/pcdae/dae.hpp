#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcdae/linalg.hpp"
#include "pcdae/nonlinear.hpp"

namespace pcdae {

/// Sets one named model parameter to a value when an event fires.
struct ParameterAssignment {
    std::string key;
    double value = 0.0;
};

/// A scheduled disturbance. Events change model parameters only, never x.
struct Event {
    double time = 0.0;
    std::string label;
    std::vector<ParameterAssignment> assignments;
};

/// Semi-explicit DAE  x' = f(t, x, y),  0 = g(t, x, y).
///
/// Derived classes provide f and g. The four Jacobian blocks default to
/// central finite differences; built-in models override them with analytic
/// expressions. Parameters that events may touch are exposed through
/// set_parameter() under dotted keys.
class DaeSystem {
public:
    virtual ~DaeSystem() = default;

    [[nodiscard]] virtual std::size_t n_states() const = 0;
    [[nodiscard]] virtual std::size_t n_algebraic() const = 0;

    [[nodiscard]] virtual Vector f(double t, const Vector& x, const Vector& y) const = 0;
    [[nodiscard]] virtual Vector g(double t, const Vector& x, const Vector& y) const = 0;

    [[nodiscard]] virtual Matrix jac_fx(double t, const Vector& x, const Vector& y) const;
    [[nodiscard]] virtual Matrix jac_fy(double t, const Vector& x, const Vector& y) const;
    [[nodiscard]] virtual Matrix jac_gx(double t, const Vector& x, const Vector& y) const;
    [[nodiscard]] virtual Matrix jac_gy(double t, const Vector& x, const Vector& y) const;

    /// Labels for x followed by y.
    [[nodiscard]] virtual std::vector<std::string> variable_names() const;

    /// Throws ConfigError for keys the model does not know.
    virtual void set_parameter(std::string_view key, double value);
    [[nodiscard]] virtual double parameter(std::string_view key) const;

    [[nodiscard]] virtual std::unique_ptr<DaeSystem> clone() const = 0;

    [[nodiscard]] const std::vector<Event>& events() const noexcept { return events_; }

    /// Replaces the schedule; events are stably sorted by time.
    void set_events(std::vector<Event> events);

protected:
    DaeSystem() = default;
    DaeSystem(const DaeSystem&) = default;
    DaeSystem& operator=(const DaeSystem&) = default;

private:
    std::vector<Event> events_;
};

struct SystemState {
    double t = 0.0;
    Vector x;
    Vector y;
    std::optional<double> h_last;
};

/// Central-difference Jacobian blocks. The perturbation for entry v is
/// 1e-7 * |v| + 1e-7.
[[nodiscard]] Matrix fd_jac_fx(const DaeSystem& s, double t, const Vector& x, const Vector& y);
[[nodiscard]] Matrix fd_jac_fy(const DaeSystem& s, double t, const Vector& x, const Vector& y);
[[nodiscard]] Matrix fd_jac_gx(const DaeSystem& s, double t, const Vector& x, const Vector& y);
[[nodiscard]] Matrix fd_jac_gy(const DaeSystem& s, double t, const Vector& x, const Vector& y);

/// Largest block-relative deviation between analytic and finite-difference
/// Jacobians: max|A - F| / max(1, max|F|) per block.
struct JacobianCheck {
    double fx = 0.0;
    double fy = 0.0;
    double gx = 0.0;
    double gy = 0.0;

    [[nodiscard]] double worst() const noexcept;
};

[[nodiscard]] JacobianCheck check_jacobians(const DaeSystem& s, double t, const Vector& x,
                                            const Vector& y);

/// Solves g(t0, x0, y) = 0 for y starting from y_guess; x0 is returned unchanged.
[[nodiscard]] SystemState consistent_initialize(const DaeSystem& system, double t0,
                                                const Vector& x0, const Vector& y_guess,
                                                const NewtonConfig& cfg = {},
                                                SolveCounter* counter = nullptr);

/// Applies the event's parameter changes and re-solves y with x frozen.
/// The caller must reset any algebraic history afterwards.
[[nodiscard]] SystemState apply_event(DaeSystem& system, const SystemState& state,
                                      const Event& event, const NewtonConfig& cfg = {},
                                      SolveCounter* counter = nullptr);

}  // namespace pcdae

#include "pcdae/dae.hpp"

#include <algorithm>
#include <cmath>

#include "pcdae/errors.hpp"

namespace pcdae {

namespace {

double perturbation(double v) { return 1e-7 * std::abs(v) + 1e-7; }

// Central differences of fun(v) with respect to v.
template <class Fun>
Matrix central_difference(Fun&& fun, const Vector& v, Eigen::Index rows) {
    Matrix jac(rows, v.size());
    Vector work = v;
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        const double e = perturbation(v[j]);
        work[j] = v[j] + e;
        const Vector plus = fun(work);
        work[j] = v[j] - e;
        const Vector minus = fun(work);
        work[j] = v[j];
        jac.col(j) = (plus - minus) / (2.0 * e);
    }
    return jac;
}

double block_deviation(const Matrix& analytic, const Matrix& fd) {
    if (analytic.rows() != fd.rows() || analytic.cols() != fd.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    if (fd.size() == 0) {
        return 0.0;
    }
    const double scale = std::max(1.0, fd.cwiseAbs().maxCoeff());
    return (analytic - fd).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

Matrix fd_jac_fx(const DaeSystem& s, double t, const Vector& x, const Vector& y) {
    return central_difference([&](const Vector& v) { return s.f(t, v, y); }, x,
                              static_cast<Eigen::Index>(s.n_states()));
}

Matrix fd_jac_fy(const DaeSystem& s, double t, const Vector& x, const Vector& y) {
    return central_difference([&](const Vector& v) { return s.f(t, x, v); }, y,
                              static_cast<Eigen::Index>(s.n_states()));
}

Matrix fd_jac_gx(const DaeSystem& s, double t, const Vector& x, const Vector& y) {
    return central_difference([&](const Vector& v) { return s.g(t, v, y); }, x,
                              static_cast<Eigen::Index>(s.n_algebraic()));
}

Matrix fd_jac_gy(const DaeSystem& s, double t, const Vector& x, const Vector& y) {
    return central_difference([&](const Vector& v) { return s.g(t, x, v); }, y,
                              static_cast<Eigen::Index>(s.n_algebraic()));
}

Matrix DaeSystem::jac_fx(double t, const Vector& x, const Vector& y) const {
    return fd_jac_fx(*this, t, x, y);
}

Matrix DaeSystem::jac_fy(double t, const Vector& x, const Vector& y) const {
    return fd_jac_fy(*this, t, x, y);
}

Matrix DaeSystem::jac_gx(double t, const Vector& x, const Vector& y) const {
    return fd_jac_gx(*this, t, x, y);
}

Matrix DaeSystem::jac_gy(double t, const Vector& x, const Vector& y) const {
    return fd_jac_gy(*this, t, x, y);
}

std::vector<std::string> DaeSystem::variable_names() const {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n_states(); ++i) {
        names.push_back("x" + std::to_string(i));
    }
    for (std::size_t i = 0; i < n_algebraic(); ++i) {
        names.push_back("y" + std::to_string(i));
    }
    return names;
}

void DaeSystem::set_parameter(std::string_view key, double /*value*/) {
    throw ConfigError("unknown model parameter '" + std::string(key) + "'");
}

double DaeSystem::parameter(std::string_view key) const {
    throw ConfigError("unknown model parameter '" + std::string(key) + "'");
}

void DaeSystem::set_events(std::vector<Event> events) {
    std::stable_sort(events.begin(), events.end(),
                     [](const Event& a, const Event& b) { return a.time < b.time; });
    events_ = std::move(events);
}

double JacobianCheck::worst() const noexcept { return std::max({fx, fy, gx, gy}); }

JacobianCheck check_jacobians(const DaeSystem& s, double t, const Vector& x, const Vector& y) {
    JacobianCheck c;
    c.fx = block_deviation(s.jac_fx(t, x, y), fd_jac_fx(s, t, x, y));
    c.fy = block_deviation(s.jac_fy(t, x, y), fd_jac_fy(s, t, x, y));
    c.gx = block_deviation(s.jac_gx(t, x, y), fd_jac_gx(s, t, x, y));
    c.gy = block_deviation(s.jac_gy(t, x, y), fd_jac_gy(s, t, x, y));
    return c;
}

SystemState consistent_initialize(const DaeSystem& system, double t0, const Vector& x0,
                                  const Vector& y_guess, const NewtonConfig& cfg,
                                  SolveCounter* counter) {
    if (static_cast<std::size_t>(x0.size()) != system.n_states() ||
        static_cast<std::size_t>(y_guess.size()) != system.n_algebraic()) {
        throw Error("consistent_initialize: vector lengths do not match the system");
    }
    SystemState state{t0, x0, y_guess, std::nullopt};
    if (system.n_algebraic() == 0) {
        return state;
    }
    state.y = solve_algebraic(system, t0, x0, y_guess, cfg, counter).solution;
    return state;
}

SystemState apply_event(DaeSystem& system, const SystemState& state, const Event& event,
                        const NewtonConfig& cfg, SolveCounter* counter) {
    const double snap = 1e-12 * std::max(1.0, std::abs(event.time));
    if (std::abs(state.t - event.time) > snap) {
        throw Error("apply_event: state time does not match event '" + event.label + "'");
    }
    for (const auto& a : event.assignments) {
        system.set_parameter(a.key, a.value);
    }
    SystemState out = state;
    if (system.n_algebraic() > 0) {
        out.y = solve_algebraic(system, state.t, state.x, state.y, cfg, counter).solution;
    }
    return out;
}

}  // namespace pcdae

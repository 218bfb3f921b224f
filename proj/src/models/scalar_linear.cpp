#include "pcdae/models/scalar_linear.hpp"

#include <cmath>

#include "pcdae/errors.hpp"

namespace pcdae {

namespace {

Matrix scalar(double v) { return Matrix::Constant(1, 1, v); }

}  // namespace

Vector ScalarLinearDae::f(double, const Vector& x, const Vector& y) const {
    return Vector::Constant(1, a_ * x[0] + b_ * y[0]);
}

Vector ScalarLinearDae::g(double, const Vector& x, const Vector& y) const {
    return Vector::Constant(1, y[0] - c_ * x[0]);
}

Matrix ScalarLinearDae::jac_fx(double, const Vector&, const Vector&) const { return scalar(a_); }
Matrix ScalarLinearDae::jac_fy(double, const Vector&, const Vector&) const { return scalar(b_); }
Matrix ScalarLinearDae::jac_gx(double, const Vector&, const Vector&) const { return scalar(-c_); }
Matrix ScalarLinearDae::jac_gy(double, const Vector&, const Vector&) const { return scalar(1.0); }

void ScalarLinearDae::set_parameter(std::string_view key, double value) {
    if (key == "a") {
        a_ = value;
    } else if (key == "b") {
        b_ = value;
    } else if (key == "c") {
        c_ = value;
    } else {
        DaeSystem::set_parameter(key, value);
    }
}

double ScalarLinearDae::parameter(std::string_view key) const {
    if (key == "a") return a_;
    if (key == "b") return b_;
    if (key == "c") return c_;
    return DaeSystem::parameter(key);
}

std::unique_ptr<DaeSystem> ScalarLinearDae::clone() const {
    return std::make_unique<ScalarLinearDae>(*this);
}

Vector LinearOde::f(double, const Vector& x, const Vector&) const { return a_ * x; }

Vector LinearOde::g(double, const Vector&, const Vector&) const { return Vector(0); }

Matrix LinearOde::jac_fx(double, const Vector&, const Vector&) const { return scalar(a_); }
Matrix LinearOde::jac_fy(double, const Vector&, const Vector&) const { return Matrix(1, 0); }
Matrix LinearOde::jac_gx(double, const Vector&, const Vector&) const { return Matrix(0, 1); }
Matrix LinearOde::jac_gy(double, const Vector&, const Vector&) const { return Matrix(0, 0); }

std::unique_ptr<DaeSystem> LinearOde::clone() const { return std::make_unique<LinearOde>(*this); }

ModelInstance build_scalar_linear(double a, double b, double c, double x0) {
    ModelInstance m;
    m.system = std::make_unique<ScalarLinearDae>(a, b, c);
    m.initial = SystemState{0.0, Vector::Constant(1, x0), Vector::Constant(1, c * x0), {}};
    const double rate = a + b * c;
    m.analytic = [=](double t) {
        const double x = x0 * std::exp(rate * t);
        return std::pair{Vector::Constant(1, x), Vector::Constant(1, c * x)};
    };
    return m;
}

ModelInstance build_linear_ode(double a, double x0) {
    ModelInstance m;
    m.system = std::make_unique<LinearOde>(a);
    m.initial = SystemState{0.0, Vector::Constant(1, x0), Vector(0), {}};
    m.analytic = [=](double t) {
        return std::pair{Vector::Constant(1, x0 * std::exp(a * t)), Vector(0)};
    };
    return m;
}

}  // namespace pcdae

#pragma once

#include "pcdae/models/model.hpp"

namespace pcdae {

/// x' = a x + b y,  0 = y - c x.  Exact solution x0 exp((a + b c) t).
class ScalarLinearDae final : public DaeSystem {
public:
    ScalarLinearDae(double a, double b, double c) : a_(a), b_(b), c_(c) {}

    [[nodiscard]] std::size_t n_states() const override { return 1; }
    [[nodiscard]] std::size_t n_algebraic() const override { return 1; }

    [[nodiscard]] Vector f(double t, const Vector& x, const Vector& y) const override;
    [[nodiscard]] Vector g(double t, const Vector& x, const Vector& y) const override;
    [[nodiscard]] Matrix jac_fx(double t, const Vector& x, const Vector& y) const override;
    [[nodiscard]] Matrix jac_fy(double t, const Vector& x, const Vector& y) const override;
    [[nodiscard]] Matrix jac_gx(double t, const Vector& x, const Vector& y) const override;
    [[nodiscard]] Matrix jac_gy(double t, const Vector& x, const Vector& y) const override;

    [[nodiscard]] std::vector<std::string> variable_names() const override { return {"x", "y"}; }
    void set_parameter(std::string_view key, double value) override;
    [[nodiscard]] double parameter(std::string_view key) const override;
    [[nodiscard]] std::unique_ptr<DaeSystem> clone() const override;

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] double c() const noexcept { return c_; }

private:
    double a_;
    double b_;
    double c_;
};

/// Pure ODE x' = a x with no algebraic part.
class LinearOde final : public DaeSystem {
public:
    explicit LinearOde(double a) : a_(a) {}

    [[nodiscard]] std::size_t n_states() const override { return 1; }
    [[nodiscard]] std::size_t n_algebraic() const override { return 0; }
    [[nodiscard]] Vector f(double t, const Vector& x, const Vector& y) const override;
    [[nodiscard]] Vector g(double t, const Vector& x, const Vector& y) const override;
    [[nodiscard]] Matrix jac_fx(double t, const Vector& x, const Vector& y) const override;
    [[nodiscard]] Matrix jac_fy(double t, const Vector& x, const Vector& y) const override;
    [[nodiscard]] Matrix jac_gx(double t, const Vector& x, const Vector& y) const override;
    [[nodiscard]] Matrix jac_gy(double t, const Vector& x, const Vector& y) const override;
    [[nodiscard]] std::vector<std::string> variable_names() const override { return {"x"}; }
    [[nodiscard]] std::unique_ptr<DaeSystem> clone() const override;

private:
    double a_;
};

[[nodiscard]] ModelInstance build_scalar_linear(double a, double b, double c, double x0);
[[nodiscard]] ModelInstance build_linear_ode(double a, double x0);

}  // namespace pcdae

#include <doctest.h>

#include <cmath>

#include "pcdae/errors.hpp"
#include "pcdae/linalg.hpp"
#include "pcdae/models/scalar_linear.hpp"
#include "pcdae/nonlinear.hpp"

using namespace pcdae;

namespace {

Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out(i++) = x;
    return out;
}

}  // namespace

TEST_CASE("solve_linear on identity, diagonal and permuted systems") {
    CHECK(solve_linear(Matrix::Identity(3, 3), vec({1, 2, 3})) == vec({1, 2, 3}));

    Matrix d(2, 2);
    d << 2, 0, 0, 4;
    CHECK(solve_linear(d, vec({2, 8})) == vec({1, 2}));

    Matrix p(2, 2);
    p << 0, 1, 1, 0;
    CHECK(solve_linear(p, vec({5, 7})) == vec({7, 5}));
}

TEST_CASE("solve_linear residual bound on a random well-conditioned matrix") {
    std::srand(7);
    const Matrix a = Matrix::Random(12, 12) + 12.0 * Matrix::Identity(12, 12);
    const Vector b = Vector::Random(12);
    const Vector z = solve_linear(a, b);
    CHECK(inf_norm(a * z - b) <= 1e-10 * (1.0 + inf_norm(b)));
}

TEST_CASE("solve_linear rejects singular and mismatched input") {
    Matrix s(2, 2);
    s << 1, 2, 2, 4;
    CHECK_THROWS_AS((void)solve_linear(s, vec({1, 1})), SingularJacobian);
    CHECK_THROWS_AS((void)solve_linear(Matrix::Identity(2, 3), vec({1, 1})), Error);
    CHECK_THROWS_AS((void)solve_linear(Matrix::Identity(2, 2), vec({1, 1, 1})), Error);
}

TEST_CASE("newton_solve: affine residual converges in one update") {
    SolveCounter calls;
    auto r = [](const Vector& z) { return Vector(z.array() - 5.0); };
    auto j = [](const Vector&) { return Matrix(Matrix::Identity(1, 1)); };
    const auto res = newton_solve(r, j, vec({0.0}), {}, &calls);
    CHECK(res.report.converged);
    CHECK(res.report.iterations == 1);
    CHECK(res.solution(0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(calls.calls == 1);
}

TEST_CASE("newton_solve: z^2 - 4 from 3 follows the hand-iterated sequence") {
    // Hand iteration: 3 -> 2.1667 -> 2.0064 -> 2.00001 -> 2.
    auto r = [](const Vector& z) { return Vector(z.array().square() - 4.0); };
    auto j = [](const Vector& z) { return Matrix(Matrix::Constant(1, 1, 2.0 * z(0))); };
    const auto res = newton_solve(r, j, vec({3.0}));
    CHECK(res.report.converged);
    CHECK(res.report.iterations <= 6);
    CHECK(std::abs(res.solution(0) - 2.0) <= 1e-8);
    CHECK(res.report.final_residual <= NewtonConfig{}.tol_residual);

    NewtonConfig one;
    one.max_iter = 1;
    CHECK_THROWS_AS((void)newton_solve(r, j, vec({3.0}), one), NewtonDivergence);
    const auto first = newton_fixed_iterations(r, j, vec({3.0}), 1);
    CHECK(first.solution(0) == doctest::Approx(13.0 / 6.0));
    const auto second = newton_fixed_iterations(r, j, vec({3.0}), 2);
    CHECK(second.solution(0) == doctest::Approx(2.00641025641).epsilon(1e-10));
}

TEST_CASE("newton_solve: no real root diverges") {
    auto r = [](const Vector& z) { return Vector(z.array().square() + 1.0); };
    auto j = [](const Vector& z) { return Matrix(Matrix::Constant(1, 1, 2.0 * z(0))); };
    SolveCounter calls;
    CHECK_THROWS_AS((void)newton_solve(r, j, vec({1.0}), {}, &calls), NewtonDivergence);
    CHECK(calls.calls == 1);
}

TEST_CASE("newton_solve: residual sequence is non-increasing under damping") {
    // atan has a narrow Newton basin; undamped Newton from 3 overshoots.
    auto r = [](const Vector& z) {
        Vector out(1);
        out(0) = std::atan(z(0));
        return out;
    };
    auto j = [](const Vector& z) {
        return Matrix(Matrix::Constant(1, 1, 1.0 / (1.0 + z(0) * z(0))));
    };
    const auto res = newton_solve(r, j, vec({3.0}));
    CHECK(res.report.converged);
    CHECK(std::abs(res.solution(0)) <= 1e-8);

    std::vector<double> trace;
    NewtonConfig cfg;
    cfg.residual_trace = &trace;
    (void)newton_solve(r, j, vec({3.0}), cfg);
    REQUIRE(trace.size() >= 3);
    for (std::size_t k = 1; k < trace.size(); ++k) {
        CHECK(trace[k] <= trace[k - 1]);
    }
}

TEST_CASE("newton_solve: empty system, min_iter and singular Jacobian") {
    SolveCounter calls;
    auto r = [](const Vector& z) { return z; };
    auto j = [](const Vector& z) { return Matrix(Matrix::Identity(z.size(), z.size())); };
    const auto empty = newton_solve(r, j, Vector(0), {}, &calls);
    CHECK(empty.report.converged);
    CHECK(empty.report.iterations == 0);
    CHECK(calls.calls == 1);

    NewtonConfig forced;
    forced.min_iter = 1;
    const auto at_root = newton_solve(r, j, vec({0.0}), forced);
    CHECK(at_root.report.iterations == 1);
    CHECK(newton_solve(r, j, vec({0.0})).report.iterations == 0);

    auto flat = [](const Vector&) { return Matrix(Matrix::Zero(1, 1)); };
    CHECK_THROWS_AS((void)newton_solve(r, flat, vec({1.0})), SingularJacobian);
}

TEST_CASE("NewtonConfig validation") {
    NewtonConfig c;
    CHECK_NOTHROW(c.validate());
    c.tol_residual = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.max_iter = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.tol_step = -1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("solve_algebraic on the scalar linear DAE and a pure ODE") {
    const ScalarLinearDae sys(-1.0, 0.5, 2.0);
    SolveCounter calls;
    const auto r = solve_algebraic(sys, 0.0, vec({3.0}), vec({0.0}), {}, &calls);
    CHECK(r.solution(0) == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(r.report.iterations == 1);
    CHECK(calls.calls == 1);

    const LinearOde ode(-1.0);
    const auto e = solve_algebraic(ode, 0.0, vec({1.0}), Vector(0));
    CHECK(e.solution.size() == 0);
    CHECK(e.report.iterations == 0);
}

#pragma once

#include <Eigen/Dense>

namespace pcdae {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Infinity norm of a vector; 0 for an empty vector.
[[nodiscard]] double inf_norm(const Vector& v);

/// Induced infinity norm (max absolute row sum).
[[nodiscard]] double matrix_inf_norm(const Matrix& a);

/// Dense LU factorization with row pivoting.
///
/// Factorization throws SingularJacobian when a pivot magnitude falls below
/// 1e-14 * ||A||_inf. An empty matrix factorizes trivially.
class LuFactorization {
public:
    explicit LuFactorization(Matrix a);

    [[nodiscard]] Vector solve(const Vector& b) const;
    [[nodiscard]] Eigen::Index size() const noexcept { return lu_.rows(); }

private:
    Matrix lu_;
    Eigen::VectorXi perm_;
};

/// Solves A z = b by row-pivoted elimination.
[[nodiscard]] Vector solve_linear(const Matrix& a, const Vector& b);

}  // namespace pcdae

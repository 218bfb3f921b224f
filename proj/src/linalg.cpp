#include "pcdae/linalg.hpp"

#include <cmath>
#include <utility>

#include "pcdae/errors.hpp"

namespace pcdae {

double inf_norm(const Vector& v) {
    return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

double matrix_inf_norm(const Matrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().rowwise().sum().maxCoeff();
}

LuFactorization::LuFactorization(Matrix a) : lu_(std::move(a)), perm_(lu_.rows()) {
    if (lu_.rows() != lu_.cols()) {
        throw Error("LU factorization requires a square matrix");
    }
    const Eigen::Index n = lu_.rows();
    const double threshold = 1e-14 * matrix_inf_norm(lu_);
    for (Eigen::Index i = 0; i < n; ++i) {
        perm_[i] = static_cast<int>(i);
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        Eigen::Index pivot = k;
        double best = std::abs(lu_(k, k));
        for (Eigen::Index i = k + 1; i < n; ++i) {
            if (std::abs(lu_(i, k)) > best) {
                best = std::abs(lu_(i, k));
                pivot = i;
            }
        }
        if (!(best > threshold) || best == 0.0) {
            throw SingularJacobian("pivot " + std::to_string(best) + " in column " +
                                   std::to_string(k) + " below singularity threshold");
        }
        if (pivot != k) {
            lu_.row(k).swap(lu_.row(pivot));
            std::swap(perm_[k], perm_[pivot]);
        }
        for (Eigen::Index i = k + 1; i < n; ++i) {
            const double m = lu_(i, k) / lu_(k, k);
            lu_(i, k) = m;
            if (m != 0.0) {
                lu_.row(i).tail(n - k - 1) -= m * lu_.row(k).tail(n - k - 1);
            }
        }
    }
}

Vector LuFactorization::solve(const Vector& b) const {
    const Eigen::Index n = lu_.rows();
    if (b.size() != n) {
        throw Error("right-hand side length does not match matrix size");
    }
    Vector z(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double s = b[perm_[i]];
        for (Eigen::Index j = 0; j < i; ++j) {
            s -= lu_(i, j) * z[j];
        }
        z[i] = s;
    }
    for (Eigen::Index i = n - 1; i >= 0; --i) {
        double s = z[i];
        for (Eigen::Index j = i + 1; j < n; ++j) {
            s -= lu_(i, j) * z[j];
        }
        z[i] = s / lu_(i, i);
    }
    return z;
}

Vector solve_linear(const Matrix& a, const Vector& b) {
    if (a.rows() != b.size()) {
        throw Error("solve_linear: dimension mismatch");
    }
    return LuFactorization(a).solve(b);
}

}  // namespace pcdae

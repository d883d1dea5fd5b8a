#pragma once

#include <cmath>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace crackgen {

template <typename Scalar>
struct PcgResult {
    int iterations = 0;
    Scalar residual = 0;  // ||b - A x|| / ||b||
    bool converged = false;
};

/// Jacobi-preconditioned conjugate gradients for symmetric positive-definite A.
/// `x` holds the initial guess on entry and the solution on exit.
template <typename Scalar, int Options, typename Index>
PcgResult<Scalar> pcg(const Eigen::SparseMatrix<Scalar, Options, Index>& A,
                      const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b,
                      Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x, Scalar rel_tol, int max_iters) {
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    PcgResult<Scalar> result;
    const Scalar b_norm = b.norm();
    if (x.size() != b.size()) x = Vector::Zero(b.size());
    if (b_norm == Scalar(0)) {
        x.setZero();
        result.converged = true;
        return result;
    }

    const Vector inv_diag = A.diagonal().cwiseInverse();
    Vector r = b - A * x;
    Vector z = inv_diag.cwiseProduct(r);
    Vector p = z;
    Vector q(b.size());
    Scalar rz = r.dot(z);

    result.residual = r.norm() / b_norm;
    while (result.residual > rel_tol && result.iterations < max_iters) {
        q.noalias() = A * p;
        const Scalar alpha = rz / p.dot(q);
        x += alpha * p;
        r -= alpha * q;
        ++result.iterations;
        // refresh the recursive residual now and then to curb drift
        if (result.iterations % 50 == 0) r = b - A * x;
        result.residual = r.norm() / b_norm;
        z = inv_diag.cwiseProduct(r);
        const Scalar rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    result.residual = (b - A * x).norm() / b_norm;
    result.converged = result.residual <= rel_tol;
    return result;
}

}  // namespace crackgen

#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

namespace qcl {

/// Eigendecomposition of a real symmetric matrix (LAPACK dsyevd), eigenvalues
/// ascending. Throws SolverError on failure.
void symmetric_eigen(const Eigen::MatrixXd& a, Eigen::VectorXd& eigenvalues,
                     Eigen::MatrixXd& eigenvectors);

/// Full SVD a = U diag(s) V^T with singular values descending (LAPACK dgesdd).
void full_svd(const Eigen::MatrixXd& a, Eigen::MatrixXd& u, Eigen::VectorXd& s,
              Eigen::MatrixXd& v);

struct LanczosOptions {
    int max_iterations = 400;
    double tolerance = 1e-11;   // residual norm relative to the matrix scale
    std::uint64_t seed = 0x9d2c5680u;  // start vector when none is supplied
};

struct LanczosResult {
    double eigenvalue = 0.0;
    Eigen::VectorXd eigenvector;
    int iterations = 0;
    bool converged = false;
};

/// Lowest eigenpair of a symmetric operator given by `apply`, with full
/// reorthogonalization against the Krylov basis and against `deflate`.
/// `start` may be empty, in which case a seeded random start vector is used.
LanczosResult lanczos_lowest(std::size_t dim,
                             const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
                             const Eigen::VectorXd& start,
                             const std::vector<Eigen::VectorXd>& deflate = {},
                             const LanczosOptions& opts = {});

}  // namespace qcl

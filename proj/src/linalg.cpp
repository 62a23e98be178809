#include "qcl/linalg.hpp"

#include <lapacke.h>

#include <Eigen/Dense>
#include <cmath>

#include "qcl/common.hpp"
#include "qcl/rng.hpp"

namespace qcl {

void symmetric_eigen(const Eigen::MatrixXd& a, Eigen::VectorXd& eigenvalues,
                     Eigen::MatrixXd& eigenvectors) {
    const auto n = static_cast<lapack_int>(a.rows());
    eigenvectors = a;
    eigenvalues.resize(n);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, eigenvectors.data(), n,
                                           eigenvalues.data());
    if (info != 0) throw SolverError("dsyevd failed, info=" + std::to_string(info));
}

void full_svd(const Eigen::MatrixXd& a, Eigen::MatrixXd& u, Eigen::VectorXd& s,
              Eigen::MatrixXd& v) {
    const auto m = static_cast<lapack_int>(a.rows());
    const auto n = static_cast<lapack_int>(a.cols());
    const lapack_int k = std::min(m, n);
    Eigen::MatrixXd work = a;
    u.resize(m, k);
    s.resize(k);
    Eigen::MatrixXd vt(k, n);
    const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'S', m, n, work.data(), m, s.data(),
                                           u.data(), m, vt.data(), k);
    if (info != 0) throw SolverError("dgesdd failed, info=" + std::to_string(info));
    v = vt.transpose();
}

LanczosResult lanczos_lowest(std::size_t dim,
                             const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
                             const Eigen::VectorXd& start,
                             const std::vector<Eigen::VectorXd>& deflate,
                             const LanczosOptions& opts) {
    const auto n = static_cast<Eigen::Index>(dim);
    const int m_max = std::min<int>(opts.max_iterations, static_cast<int>(dim));

    const auto project_out = [&](Eigen::VectorXd& v) {
        for (const auto& d : deflate) v -= d.dot(v) * d;
    };

    Eigen::VectorXd q;
    if (start.size() == n && start.norm() > 0) {
        q = start;
    } else {
        q.resize(n);
        auto rng = RngStream::derive(opts.seed, dim);
        for (Eigen::Index i = 0; i < n; ++i) q(i) = rng.next_gaussian();
    }
    project_out(q);
    if (q.norm() < 1e-14) {  // start vector lay inside the deflated space
        auto rng = RngStream::derive(opts.seed ^ 0x5bd1e995u, dim);
        for (Eigen::Index i = 0; i < n; ++i) q(i) = rng.next_gaussian();
        project_out(q);
    }
    q.normalize();

    std::vector<Eigen::VectorXd> basis;
    basis.reserve(static_cast<std::size_t>(m_max));
    std::vector<double> alpha, beta;  // tridiagonal entries
    Eigen::VectorXd w(n), ritz_small;
    Eigen::MatrixXd tri_vecs;
    double scale = 1.0;

    LanczosResult res;
    for (int it = 0; it < m_max; ++it) {
        basis.push_back(q);
        apply(q, w);
        project_out(w);
        const double a = q.dot(w);
        alpha.push_back(a);
        // Full reorthogonalization, twice for numerical safety.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) w -= b.dot(w) * b;
            project_out(w);
        }

        const int m = static_cast<int>(alpha.size());
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            tri(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < m) {
                tri(i, i + 1) = beta[static_cast<std::size_t>(i)];
                tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
            }
        }
        Eigen::VectorXd evals;
        symmetric_eigen(tri, evals, tri_vecs);
        ritz_small = tri_vecs.col(0);
        res.eigenvalue = evals(0);
        scale = std::max({scale, std::abs(evals(0)), std::abs(evals(m - 1))});

        const double b_next = w.norm();
        // Residual of the lowest Ritz pair: |beta_m * last component|.
        const double residual = b_next * std::abs(ritz_small(m - 1));
        if (residual <= opts.tolerance * scale || b_next < 1e-14 * scale || m == n) {
            res.converged = true;
            res.iterations = m;
            break;
        }
        beta.push_back(b_next);
        q = w / b_next;
        res.iterations = m;
    }

    res.eigenvector.setZero(n);
    for (std::size_t i = 0; i < basis.size(); ++i)
        res.eigenvector += ritz_small(static_cast<Eigen::Index>(i)) * basis[i];
    res.eigenvector.normalize();
    return res;
}

}  // namespace qcl

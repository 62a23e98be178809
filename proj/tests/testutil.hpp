#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qcl/model.hpp"
#include "qcl/qcorr.hpp"

namespace qcl::test {

inline ChainSpec xy_spec(int n, double gamma, Boundary boundary = Boundary::periodic) {
    ChainSpec s;
    s.n_sites = n;
    s.gamma = gamma;
    s.boundary = boundary;
    s.kind = ModelKind::xy;
    return s;
}

inline ChainSpec xyz_spec(int n, double gamma, double delta) {
    ChainSpec s;
    s.n_sites = n;
    s.gamma = gamma;
    s.delta = delta;
    s.boundary = Boundary::open;
    s.kind = ModelKind::xyz;
    return s;
}

inline TwoSiteState bell_phi_plus() {
    TwoSiteState st;
    st.rho.setZero();
    st.rho(0, 0) = st.rho(3, 3) = st.rho(0, 3) = st.rho(3, 0) = 0.5;
    return st;
}

inline TwoSiteState werner(double p) {
    TwoSiteState st = bell_phi_plus();
    st.rho = p * st.rho + (1.0 - p) * 0.25 * Eigen::Matrix4cd::Identity();
    return st;
}

inline TwoSiteState product_state(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
    Eigen::Vector4cd psi;
    psi << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
    TwoSiteState st;
    st.rho = psi * psi.adjoint();
    return st;
}

/// Trace distance between two density matrices.
inline double trace_distance(const Eigen::Matrix4cd& a, const Eigen::Matrix4cd& b) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(a - b, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace qcl::test

#include "qcl/qcorr.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcl/common.hpp"

namespace qcl {

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::Vector3d;
using cd = std::complex<double>;

const double kLog2 = std::numbers::ln2;

Matrix2cd pauli(int a) {
    Matrix2cd m = Matrix2cd::Zero();
    switch (a) {
        case 0: m << 1, 0, 0, 1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, cd(0, -1), cd(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

Matrix4cd kron2(const Matrix2cd& a, const Matrix2cd& b) {
    Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

/// Bloch decomposition rho = 1/4 [I + r.sigma (x) I + I (x) s.sigma + sum_ab t_ab sa (x) sb].
struct BlochForm {
    Vector3d r = Vector3d::Zero();
    Vector3d s = Vector3d::Zero();
    Eigen::Matrix3d t = Eigen::Matrix3d::Zero();
};

BlochForm bloch_form(const Matrix4cd& rho) {
    BlochForm f;
    for (int a = 1; a <= 3; ++a) {
        f.r(a - 1) = (rho * kron2(pauli(a), pauli(0))).trace().real();
        f.s(a - 1) = (rho * kron2(pauli(0), pauli(a))).trace().real();
        for (int b = 1; b <= 3; ++b)
            f.t(a - 1, b - 1) = (rho * kron2(pauli(a), pauli(b))).trace().real();
    }
    return f;
}

double qubit_entropy_from_bloch_norm(double q) {
    q = std::min(q, 1.0);
    return binary_entropy_bits(0.5 * (1.0 + q));
}

/// Average conditional entropy of the unmeasured party after projecting the
/// measured party onto +/- axis(theta, phi).
double conditional_entropy(const BlochForm& f, MeasuredParty party, double theta, double phi) {
    const Vector3d axis(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                        std::cos(theta));
    // Measuring the first party conditions the second on (s +/- t^T n);
    // measuring the second conditions the first on (r +/- t n).
    const Vector3d& meas = (party == MeasuredParty::first) ? f.r : f.s;
    const Vector3d& rest = (party == MeasuredParty::first) ? f.s : f.r;
    const Vector3d tn = (party == MeasuredParty::first) ? Vector3d(f.t.transpose() * axis)
                                                        : Vector3d(f.t * axis);
    double total = 0.0;
    for (int sign = -1; sign <= 1; sign += 2) {
        const double p = 0.5 * (1.0 + sign * meas.dot(axis));
        if (p <= 0.0) continue;
        const Vector3d q = (rest + sign * tn) / (2.0 * p);
        total += p * qubit_entropy_from_bloch_norm(q.norm());
    }
    return total;
}

}  // namespace

void TwoSiteState::validate() const {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw SolverError("two-site state is not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-10 || std::abs(rho.trace().imag()) > 1e-10)
        throw SolverError("two-site state does not have unit trace");
    Eigen::SelfAdjointEigenSolver<Matrix4cd> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw SolverError("two-site state has a negative eigenvalue beyond tolerance");
}

TwoSiteState two_site_state_from_correlators(double mz_i, double mz_j, double txx, double tyy,
                                             double tzz, int site_i, int site_j) {
    TwoSiteState st;
    st.site_i = site_i;
    st.site_j = site_j;
    Matrix4cd m = kron2(pauli(0), pauli(0));
    m += mz_i * kron2(pauli(3), pauli(0));
    m += mz_j * kron2(pauli(0), pauli(3));
    m += txx * kron2(pauli(1), pauli(1));
    m += tyy * kron2(pauli(2), pauli(2));
    m += tzz * kron2(pauli(3), pauli(3));
    st.rho = 0.25 * m;
    st.validate();
    return st;
}

Matrix2cd partial_trace_second(const Matrix4cd& rho) {
    Matrix2cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
    return out;
}

Matrix2cd partial_trace_first(const Matrix4cd& rho) {
    Matrix2cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out(i, j) = rho(i, j) + rho(i + 2, j + 2);
    return out;
}

double off_x_norm(const Matrix4cd& rho) {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j || i + j == 3) continue;
            worst = std::max(worst, std::abs(rho(i, j)));
        }
    return worst;
}

double binary_entropy_bits(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return -(x * std::log(x) + (1.0 - x) * std::log(1.0 - x)) / kLog2;
}

double von_neumann_entropy_bits(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
        const double p = es.eigenvalues()(k);
        if (p > 1e-12) s -= p * std::log(p) / kLog2;
    }
    return s;
}

double concurrence(const TwoSiteState& state) {
    state.validate();
    const Matrix4cd yy = kron2(pauli(2), pauli(2));
    const Matrix4cd rho_tilde = yy * state.rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Matrix4cd> es(state.rho * rho_tilde, false);
    std::array<double, 4> lambda{};
    for (int k = 0; k < 4; ++k) lambda[static_cast<std::size_t>(k)] =
        std::sqrt(std::max(0.0, es.eigenvalues()(k).real()));
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

double mutual_information(const TwoSiteState& state) {
    state.validate();
    return von_neumann_entropy_bits(partial_trace_second(state.rho)) +
           von_neumann_entropy_bits(partial_trace_first(state.rho)) -
           von_neumann_entropy_bits(state.rho);
}

bool xstate_closed_form_valid(const TwoSiteState& state, double tol) {
    if (off_x_norm(state.rho) > tol) return false;
    const BlochForm f = bloch_form(state.rho);
    return std::abs(f.t(0, 0)) >= std::abs(f.t(1, 1)) - 1e-12;
}

DiscordResult discord_xstate_closed_form(const TwoSiteState& state, MeasuredParty measured_party) {
    if (!xstate_closed_form_valid(state))
        throw std::invalid_argument("closed-form discord requires an X state with |Txx| >= |Tyy|");
    const BlochForm f = bloch_form(state.rho);
    const double m_other = (measured_party == MeasuredParty::first) ? f.s(2) : f.r(2);
    const double txx = f.t(0, 0);
    const double p = std::min(1.0, std::sqrt(m_other * m_other + txx * txx));

    DiscordResult res;
    res.method = DiscordMethod::xstate_closed_form;
    res.mutual_information = mutual_information(state);
    res.classical_correlation =
        binary_entropy_bits(0.5 * (1.0 + m_other)) - binary_entropy_bits(0.5 * (1.0 + p));
    res.discord = res.mutual_information - res.classical_correlation;
    res.theta = 0.5 * std::numbers::pi;  // x-basis projectors
    res.phi = 0.0;
    return res;
}

DiscordResult discord_numeric(const TwoSiteState& state, const DiscordOptions& opts) {
    state.validate();
    const BlochForm f = bloch_form(state.rho);
    const auto energy = [&](double theta, double phi) {
        return conditional_entropy(f, opts.measured_party, theta, phi);
    };

    double best_e = std::numeric_limits<double>::infinity();
    double best_theta = 0.0, best_phi = 0.0;
    const auto consider = [&](double theta, double phi) {
        const double e = energy(theta, phi);
        if (e < best_e) {
            best_e = e;
            best_theta = theta;
            best_phi = phi;
        }
    };

    // Coarse grid; the x-, y- and z-axis measurements are always included
    // since one of them is optimal for the X states arising here.
    consider(0.5 * std::numbers::pi, 0.0);
    consider(0.5 * std::numbers::pi, 0.5 * std::numbers::pi);
    consider(0.0, 0.0);
    for (int it = 0; it < opts.grid_theta; ++it) {
        const double theta = std::numbers::pi * (it + 0.5) / opts.grid_theta;
        for (int ip = 0; ip < opts.grid_phi; ++ip)
            consider(theta, 2.0 * std::numbers::pi * ip / opts.grid_phi);
    }

    // Local pattern search with a shrinking window.
    double w_theta = std::numbers::pi / opts.grid_theta;
    double w_phi = 2.0 * std::numbers::pi / opts.grid_phi;
    double prev = best_e;
    for (int round = 0; round < 80; ++round) {
        const double t0 = best_theta, p0 = best_phi;
        for (int dt = -2; dt <= 2; ++dt)
            for (int dp = -2; dp <= 2; ++dp) {
                if (dt == 0 && dp == 0) continue;
                consider(t0 + 0.5 * w_theta * dt, p0 + 0.5 * w_phi * dp);
            }
        w_theta *= 0.5;
        w_phi *= 0.5;
        if (prev - best_e < opts.refine_tol && w_theta < 1e-6) break;
        prev = best_e;
    }

    const double s_other = (opts.measured_party == MeasuredParty::first)
                               ? von_neumann_entropy_bits(partial_trace_first(state.rho))
                               : von_neumann_entropy_bits(partial_trace_second(state.rho));

    DiscordResult res;
    res.method = DiscordMethod::numeric_minimization;
    res.mutual_information = mutual_information(state);
    res.classical_correlation = s_other - best_e;
    res.discord = res.mutual_information - res.classical_correlation;
    res.theta = best_theta;
    res.phi = best_phi;
    return res;
}

DiscordResult discord_auto(const TwoSiteState& state, MeasuredParty measured_party) {
    if (xstate_closed_form_valid(state)) return discord_xstate_closed_form(state, measured_party);
    DiscordOptions opts;
    opts.measured_party = measured_party;
    return discord_numeric(state, opts);
}

MonogamyReport monogamy_witness(const std::vector<double>& pairwise_discords, int nodal_site) {
    if (pairwise_discords.empty())
        throw std::invalid_argument("monogamy witness needs at least one pairwise discord");
    for (double d : pairwise_discords)
        if (!(d >= 0.0 && d <= 1.0))
            throw std::invalid_argument("pairwise discords must lie in [0, 1]");
    MonogamyReport rep;
    rep.nodal_site = nodal_site;
    rep.pairwise_discords = pairwise_discords;
    rep.sum = pairwise_sum(pairwise_discords);
    rep.witness_violated = rep.sum > 1.0;
    return rep;
}

}  // namespace qcl

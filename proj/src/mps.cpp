#include "qcl/mps.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iostream>

#include "qcl/common.hpp"
#include "qcl/linalg.hpp"
#include "qcl/rng.hpp"

namespace qcl {

namespace {

using Eigen::Matrix2d;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr int kMpoWidth = 5;

Matrix2d op_identity() { return Matrix2d::Identity(); }
Matrix2d op_sx() {
    Matrix2d m;
    m << 0, 1, 1, 0;
    return m;
}
// i * sigma_y; the pairing sigma_y sigma_y = -(i sy)(i sy) keeps everything real.
Matrix2d op_isy() {
    Matrix2d m;
    m << 0, 1, -1, 0;
    return m;
}
Matrix2d op_sz() {
    Matrix2d m;
    m << 1, 0, 0, -1;
    return m;
}

struct MpoEntry {
    int row, col;
    Matrix2d op;
};
using MpoSite = std::vector<MpoEntry>;

/// Nearest-neighbor MPO, bond dimension 5. Channel 4 is "nothing placed",
/// channel 0 "finished"; channels 1..3 carry X, iY, Z awaiting a partner.
std::vector<MpoSite> build_mpo(const Realization& r) {
    const int n = r.spec.n_sites;
    const double k = r.spec.kappa;
    const double g = r.spec.gamma;
    std::vector<MpoSite> mpo(static_cast<std::size_t>(n));
    for (int p = 0; p < n; ++p) {
        MpoSite& w = mpo[static_cast<std::size_t>(p)];
        w.push_back({0, 0, op_identity()});
        w.push_back({1, 0, op_sx()});
        w.push_back({2, 0, op_isy()});
        w.push_back({3, 0, op_sz()});
        w.push_back({4, 0, -0.5 * k * r.fields(p) * op_sz()});
        if (p + 1 < n) {
            const double j = r.couplings(p);
            w.push_back({4, 1, 0.25 * k * j * (1.0 + g) * op_sx()});
            w.push_back({4, 2, -0.25 * k * j * (1.0 - g) * op_isy()});
            if (r.spec.delta != 0.0) w.push_back({4, 3, 0.25 * k * r.spec.delta * op_sz()});
        }
        w.push_back({4, 4, op_identity()});
    }
    return mpo;
}

/// Environment: one (bra x ket) matrix per MPO channel.
using Env = std::array<MatrixXd, kMpoWidth>;

Env left_boundary() {
    Env e;
    for (auto& m : e) m = MatrixXd::Zero(1, 1);
    e[4](0, 0) = 1.0;
    return e;
}

Env right_boundary() {
    Env e;
    for (auto& m : e) m = MatrixXd::Zero(1, 1);
    e[0](0, 0) = 1.0;
    return e;
}

Env advance_left(const Env& l, const SiteTensor& a, const MpoSite& w) {
    const Eigen::Index d = a.cols();
    Env out;
    for (auto& m : out) m = MatrixXd::Zero(d, d);
    for (const auto& entry : w) {
        if (l[static_cast<std::size_t>(entry.row)].size() == 0) continue;
        for (int sp = 0; sp < 2; ++sp)
            for (int s = 0; s < 2; ++s) {
                const double c = entry.op(sp, s);
                if (c == 0.0) continue;
                out[static_cast<std::size_t>(entry.col)].noalias() +=
                    c * (a.m[sp].transpose() * l[static_cast<std::size_t>(entry.row)] * a.m[s]);
            }
    }
    return out;
}

Env advance_right(const Env& r, const SiteTensor& a, const MpoSite& w) {
    const Eigen::Index d = a.rows();
    Env out;
    for (auto& m : out) m = MatrixXd::Zero(d, d);
    for (const auto& entry : w) {
        for (int sp = 0; sp < 2; ++sp)
            for (int s = 0; s < 2; ++s) {
                const double c = entry.op(sp, s);
                if (c == 0.0) continue;
                out[static_cast<std::size_t>(entry.row)].noalias() +=
                    c * (a.m[sp] * r[static_cast<std::size_t>(entry.col)] * a.m[s].transpose());
            }
    }
    return out;
}

/// Two-site wavefunction, one (chi_l x chi_r) block per physical pair.
struct Theta {
    std::array<MatrixXd, 4> blk;  // index s1 * 2 + s2
    Eigen::Index rows() const { return blk[0].rows(); }
    Eigen::Index cols() const { return blk[0].cols(); }
};

VectorXd pack(const Theta& t) {
    const Eigen::Index sz = t.rows() * t.cols();
    VectorXd v(4 * sz);
    for (int s = 0; s < 4; ++s)
        std::memcpy(v.data() + s * sz, t.blk[static_cast<std::size_t>(s)].data(),
                    sizeof(double) * static_cast<std::size_t>(sz));
    return v;
}

Theta unpack(const VectorXd& v, Eigen::Index rows, Eigen::Index cols) {
    Theta t;
    const Eigen::Index sz = rows * cols;
    for (int s = 0; s < 4; ++s) {
        t.blk[static_cast<std::size_t>(s)].resize(rows, cols);
        std::memcpy(t.blk[static_cast<std::size_t>(s)].data(), v.data() + s * sz,
                    sizeof(double) * static_cast<std::size_t>(sz));
    }
    return t;
}

/// Combined two-site MPO blocks O[b_l][b_r] as 4x4 matrices over (s1 s2).
using TwoSiteBlocks = std::vector<std::tuple<int, int, Eigen::Matrix4d>>;

TwoSiteBlocks combine_mpo(const MpoSite& w1, const MpoSite& w2) {
    std::array<std::array<Eigen::Matrix4d, kMpoWidth>, kMpoWidth> acc{};
    std::array<std::array<bool, kMpoWidth>, kMpoWidth> used{};
    for (const auto& e1 : w1)
        for (const auto& e2 : w2) {
            if (e1.col != e2.row) continue;
            Eigen::Matrix4d k;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    k.block<2, 2>(2 * i, 2 * j) = e1.op(i, j) * e2.op;
            auto& slot = acc[static_cast<std::size_t>(e1.row)][static_cast<std::size_t>(e2.col)];
            if (used[static_cast<std::size_t>(e1.row)][static_cast<std::size_t>(e2.col)])
                slot += k;
            else
                slot = k;
            used[static_cast<std::size_t>(e1.row)][static_cast<std::size_t>(e2.col)] = true;
        }
    TwoSiteBlocks out;
    for (int bl = 0; bl < kMpoWidth; ++bl)
        for (int br = 0; br < kMpoWidth; ++br)
            if (used[static_cast<std::size_t>(bl)][static_cast<std::size_t>(br)])
                out.emplace_back(bl, br, acc[static_cast<std::size_t>(bl)][static_cast<std::size_t>(br)]);
    return out;
}

void apply_effective(const Env& l, const Env& r, const TwoSiteBlocks& blocks, const Theta& in,
                     Theta& out) {
    for (auto& m : out.blk) m = MatrixXd::Zero(in.rows(), in.cols());
    std::array<MatrixXd, 4> left_applied;
    for (const auto& [bl, br, op] : blocks) {
        const MatrixXd& lm = l[static_cast<std::size_t>(bl)];
        const MatrixXd& rm = r[static_cast<std::size_t>(br)];
        for (int s = 0; s < 4; ++s) left_applied[static_cast<std::size_t>(s)].noalias() =
            lm * in.blk[static_cast<std::size_t>(s)] * rm.transpose();
        for (int sp = 0; sp < 4; ++sp)
            for (int s = 0; s < 4; ++s) {
                const double c = op(sp, s);
                if (c == 0.0) continue;
                out.blk[static_cast<std::size_t>(sp)].noalias() +=
                    c * left_applied[static_cast<std::size_t>(s)];
            }
    }
}

struct SplitResult {
    SiteTensor left, right;
    double discarded = 0.0;
};

/// SVD split of theta across the bond; `to_right` keeps the weight on the
/// right tensor (left becomes an isometry) and vice versa.
SplitResult split_theta(const Theta& t, int chi_max, double cutoff, bool to_right) {
    const Eigen::Index chi_l = t.rows(), chi_r = t.cols();
    MatrixXd m(2 * chi_l, 2 * chi_r);
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
            m.block(s1 * chi_l, s2 * chi_r, chi_l, chi_r) = t.blk[static_cast<std::size_t>(2 * s1 + s2)];

    MatrixXd u, v;
    VectorXd s;
    full_svd(m, u, s, v);

    const double total = s.squaredNorm();
    Eigen::Index keep = 1;
    double kept = s(0) * s(0);
    for (Eigen::Index i = 1; i < s.size() && i < chi_max; ++i) {
        if (total - kept <= cutoff * total) break;
        kept += s(i) * s(i);
        keep = i + 1;
    }
    SplitResult res;
    res.discarded = total > 0 ? std::max(0.0, (total - kept) / total) : 0.0;

    VectorXd s_kept = s.head(keep);
    s_kept /= s_kept.norm();  // keep the state normalized after truncation

    const MatrixXd u_k = u.leftCols(keep);
    const MatrixXd v_k = v.leftCols(keep);
    for (int s1 = 0; s1 < 2; ++s1) {
        if (to_right) {
            res.left.m[s1] = u_k.middleRows(s1 * chi_l, chi_l);
            res.right.m[s1] =
                s_kept.asDiagonal() * v_k.middleRows(s1 * chi_r, chi_r).transpose();
        } else {
            res.left.m[s1] = u_k.middleRows(s1 * chi_l, chi_l) * s_kept.asDiagonal();
            res.right.m[s1] = v_k.middleRows(s1 * chi_r, chi_r).transpose();
        }
    }
    return res;
}

MpsState product_state_up(int n) {
    MpsState st;
    st.tensors.resize(static_cast<std::size_t>(n));
    for (auto& t : st.tensors) {
        t.m[0] = MatrixXd::Ones(1, 1);
        t.m[1] = MatrixXd::Zero(1, 1);
    }
    st.canonical_center = 0;
    return st;
}

MpsState random_state(int n, int chi, std::uint64_t seed) {
    MpsState st;
    st.tensors.resize(static_cast<std::size_t>(n));
    auto rng = RngStream::derive(seed, 0xD1CEu);
    Eigen::Index left = 1;
    for (int p = 0; p < n; ++p) {
        const Eigen::Index right =
            (p == n - 1) ? 1 : std::min<Eigen::Index>(chi, std::min(left * 2, Eigen::Index(1) << std::min(30, n - 1 - p)));
        auto& t = st.tensors[static_cast<std::size_t>(p)];
        for (auto& m : t.m) {
            m.resize(left, right);
            for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.next_gaussian();
        }
        left = right;
    }
    st.canonical_center = 0;
    return st;
}

/// Moves the center one site without truncation.
void shift_center_right(MpsState& st, int p) {
    auto& a = st.tensors[static_cast<std::size_t>(p)];
    const Eigen::Index chi_l = a.rows(), chi_r = a.cols();
    MatrixXd m(2 * chi_l, chi_r);
    m.topRows(chi_l) = a.m[0];
    m.bottomRows(chi_l) = a.m[1];
    MatrixXd u, v;
    VectorXd s;
    full_svd(m, u, s, v);
    const Eigen::Index k = s.size();
    a.m[0] = u.topRows(chi_l).leftCols(k);
    a.m[1] = u.bottomRows(chi_l).leftCols(k);
    const MatrixXd carry = s.asDiagonal() * v.leftCols(k).transpose();
    auto& b = st.tensors[static_cast<std::size_t>(p + 1)];
    b.m[0] = carry * b.m[0];
    b.m[1] = carry * b.m[1];
    st.canonical_center = p + 1;
}

void shift_center_left(MpsState& st, int p) {
    auto& a = st.tensors[static_cast<std::size_t>(p)];
    const Eigen::Index chi_l = a.rows(), chi_r = a.cols();
    MatrixXd m(chi_l, 2 * chi_r);
    m.leftCols(chi_r) = a.m[0];
    m.rightCols(chi_r) = a.m[1];
    MatrixXd u, v;
    VectorXd s;
    full_svd(m, u, s, v);
    const Eigen::Index k = s.size();
    a.m[0] = v.topRows(chi_r).leftCols(k).transpose();
    a.m[1] = v.bottomRows(chi_r).leftCols(k).transpose();
    const MatrixXd carry = u.leftCols(k) * s.asDiagonal();
    auto& b = st.tensors[static_cast<std::size_t>(p - 1)];
    b.m[0] = b.m[0] * carry;
    b.m[1] = b.m[1] * carry;
    st.canonical_center = p - 1;
}

}  // namespace

void mps_canonicalize(MpsState& st, int center) {
    if (center < 0 || center >= st.n()) throw std::invalid_argument("canonical center out of range");
    while (st.canonical_center < center) shift_center_right(st, st.canonical_center);
    while (st.canonical_center > center) shift_center_left(st, st.canonical_center);
}

double mps_norm(const MpsState& state) {
    MatrixXd e = MatrixXd::Ones(1, 1);
    for (const auto& t : state.tensors)
        e = (t.m[0].transpose() * e * t.m[0] + t.m[1].transpose() * e * t.m[1]).eval();
    return std::sqrt(e(0, 0));
}

double mps_site_expectation(const MpsState& state, int site, const Matrix2d& op) {
    MpsState work = state;
    mps_canonicalize(work, site);
    const auto& t = work.tensors[static_cast<std::size_t>(site)];
    double val = 0.0;
    for (int sp = 0; sp < 2; ++sp)
        for (int s = 0; s < 2; ++s) {
            if (op(sp, s) == 0.0) continue;
            val += op(sp, s) * (t.m[sp].transpose() * t.m[s]).trace();
        }
    return val;
}

MpsState dmrg_ground_state(const Realization& r, const DmrgConfig& cfg) {
    r.spec.validate();
    if (r.spec.boundary != Boundary::open)
        throw std::invalid_argument("dmrg_ground_state requires an open chain");
    if (cfg.chi_max < 2) throw std::invalid_argument("chi_max must be >= 2");
    if (cfg.n_sweeps < 1) throw std::invalid_argument("n_sweeps must be >= 1");
    const int n = r.spec.n_sites;
    const auto mpo = build_mpo(r);

    MpsState st = (cfg.warmup == DmrgWarmup::growth)
                      ? product_state_up(n)
                      : random_state(n, std::min(8, cfg.chi_max), cfg.init_seed);
    mps_canonicalize(st, 0);
    // Normalize the center tensor.
    {
        auto& t0 = st.tensors[0];
        const double nm = std::sqrt(t0.m[0].squaredNorm() + t0.m[1].squaredNorm());
        t0.m[0] /= nm;
        t0.m[1] /= nm;
    }

    // Environment stacks: lenv[p] covers sites < p, renv[p] covers sites > p.
    std::vector<Env> lenv(static_cast<std::size_t>(n)), renv(static_cast<std::size_t>(n));
    lenv[0] = left_boundary();
    renv[static_cast<std::size_t>(n - 1)] = right_boundary();
    for (int p = n - 1; p >= 1; --p)
        renv[static_cast<std::size_t>(p - 1)] =
            advance_right(renv[static_cast<std::size_t>(p)], st.tensors[static_cast<std::size_t>(p)],
                          mpo[static_cast<std::size_t>(p)]);

    std::vector<TwoSiteBlocks> blocks(static_cast<std::size_t>(n - 1));
    for (int p = 0; p + 1 < n; ++p)
        blocks[static_cast<std::size_t>(p)] =
            combine_mpo(mpo[static_cast<std::size_t>(p)], mpo[static_cast<std::size_t>(p + 1)]);

    double last_energy = std::numeric_limits<double>::quiet_NaN();
    double sweep_truncation = 0.0;

    const auto optimize_bond = [&](int p, bool to_right) {
        auto& a = st.tensors[static_cast<std::size_t>(p)];
        auto& b = st.tensors[static_cast<std::size_t>(p + 1)];
        Theta theta;
        for (int s1 = 0; s1 < 2; ++s1)
            for (int s2 = 0; s2 < 2; ++s2)
                theta.blk[static_cast<std::size_t>(2 * s1 + s2)] = a.m[s1] * b.m[s2];

        const Eigen::Index rows = theta.rows(), cols = theta.cols();
        const Env& l = lenv[static_cast<std::size_t>(p)];
        const Env& rr = renv[static_cast<std::size_t>(p + 1)];
        const auto& blk = blocks[static_cast<std::size_t>(p)];

        LanczosOptions lopts;
        lopts.max_iterations = cfg.lanczos_max_iter;
        lopts.tolerance = cfg.lanczos_tol;
        Theta scratch;
        const auto apply = [&](const VectorXd& x, VectorXd& y) {
            const Theta tx = unpack(x, rows, cols);
            apply_effective(l, rr, blk, tx, scratch);
            y = pack(scratch);
        };
        const LanczosResult res =
            lanczos_lowest(static_cast<std::size_t>(4 * rows * cols), apply, pack(theta), {}, lopts);

        const Theta ground = unpack(res.eigenvector, rows, cols);
        SplitResult split = split_theta(ground, cfg.chi_max, cfg.svd_cutoff, to_right);
        sweep_truncation += split.discarded;
        a = split.left;
        b = split.right;
        if (to_right) {
            lenv[static_cast<std::size_t>(p + 1)] =
                advance_left(lenv[static_cast<std::size_t>(p)], a, mpo[static_cast<std::size_t>(p)]);
            st.canonical_center = p + 1;
        } else {
            renv[static_cast<std::size_t>(p)] = advance_right(
                renv[static_cast<std::size_t>(p + 1)], b, mpo[static_cast<std::size_t>(p + 1)]);
            st.canonical_center = p;
        }
        return res.eigenvalue;
    };

    bool reached_tol = false;
    for (int sweep = 0; sweep < cfg.n_sweeps; ++sweep) {
        sweep_truncation = 0.0;
        double e = last_energy;
        for (int p = 0; p + 2 < n; ++p) optimize_bond(p, true);
        for (int p = n - 2; p >= 0; --p) e = optimize_bond(p, false);
        st.sweep_energies.push_back(e);
        st.truncation_error = sweep_truncation;
        if (sweep > 0 && std::abs(e - last_energy) < cfg.energy_tol) {
            last_energy = e;
            reached_tol = true;
            break;
        }
        last_energy = e;
    }
    st.energy = last_energy;

    if (!reached_tol && st.sweep_energies.size() >= 2) {
        const auto k = st.sweep_energies.size();
        const double e_prev = st.sweep_energies[k - 2], e_last = st.sweep_energies[k - 1];
        if (std::abs(e_last - e_prev) >= cfg.energy_tol)
            throw SolverError("dmrg did not converge: last sweep energies " +
                              std::to_string(e_prev) + ", " + std::to_string(e_last));
    }
    if (st.truncation_error > cfg.truncation_threshold)
        throw SolverError("dmrg truncation " + std::to_string(st.truncation_error) +
                          " exceeds budget at chi_max=" + std::to_string(cfg.chi_max));
    return st;
}

TwoSiteState mps_two_site_rdm(const MpsState& state, int i, int j, int margin) {
    const int n = state.n();
    if (!(0 <= i && i < j && j < n)) throw std::invalid_argument("site pair out of range");
    if (margin < 0) margin = n / 4;
    if (std::min(i, n - 1 - j) < margin)
        throw std::invalid_argument("site pair too close to the open boundary (margin " +
                                    std::to_string(margin) + ")");

    MpsState work = state;
    mps_canonicalize(work, i);

    // E[s1][s1'] over the bond right of i, then traced through to j.
    std::array<std::array<MatrixXd, 2>, 2> e;
    const auto& ti = work.tensors[static_cast<std::size_t>(i)];
    for (int s = 0; s < 2; ++s)
        for (int sp = 0; sp < 2; ++sp)
            e[static_cast<std::size_t>(s)][static_cast<std::size_t>(sp)] =
                ti.m[s].transpose() * ti.m[sp];
    for (int k = i + 1; k < j; ++k) {
        const auto& tk = work.tensors[static_cast<std::size_t>(k)];
        for (int s = 0; s < 2; ++s)
            for (int sp = 0; sp < 2; ++sp)
                e[static_cast<std::size_t>(s)][static_cast<std::size_t>(sp)] =
                    (tk.m[0].transpose() * e[static_cast<std::size_t>(s)][static_cast<std::size_t>(sp)] * tk.m[0] +
                     tk.m[1].transpose() * e[static_cast<std::size_t>(s)][static_cast<std::size_t>(sp)] * tk.m[1])
                        .eval();
    }

    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    const auto& tj = work.tensors[static_cast<std::size_t>(j)];
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2)
            for (int sp1 = 0; sp1 < 2; ++sp1)
                for (int sp2 = 0; sp2 < 2; ++sp2)
                    rho(2 * s1 + s2, 2 * sp1 + sp2) =
                        (tj.m[s2].transpose() *
                         e[static_cast<std::size_t>(s1)][static_cast<std::size_t>(sp1)] * tj.m[sp2])
                            .trace();

    // Parity projection to X form (the Hamiltonian conserves parity; any
    // residual here is truncation error or a symmetry-broken MPS).
    TwoSiteState out;
    out.site_i = i;
    out.site_j = j;
    out.x_projection_residual = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a != b && a + b != 3)
                out.x_projection_residual = std::max(out.x_projection_residual, std::abs(rho(a, b)));
    if (out.x_projection_residual > 1e-8)
        std::cerr << "mps_two_site_rdm: zeroing off-X weight " << out.x_projection_residual
                  << " for pair (" << i << "," << j << ")\n";
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a != b && a + b != 3) rho(a, b) = 0.0;
    rho = 0.5 * (rho + rho.transpose()).eval();

    out.rho = rho.cast<std::complex<double>>();
    out.validate();
    return out;
}

void save_mps(const MpsState& state, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    const char magic[8] = {'Q', 'C', 'L', 'M', 'P', 'S', '0', '1'};
    out.write(magic, 8);
    const auto write_u32 = [&](std::uint32_t v) { out.write(reinterpret_cast<const char*>(&v), 4); };
    const auto write_f64 = [&](double v) { out.write(reinterpret_cast<const char*>(&v), 8); };
    write_u32(1);  // version
    write_u32(static_cast<std::uint32_t>(state.n()));
    write_u32(static_cast<std::uint32_t>(state.canonical_center));
    write_f64(state.energy);
    write_f64(state.truncation_error);
    for (const auto& t : state.tensors) {
        write_u32(static_cast<std::uint32_t>(t.rows()));
        write_u32(static_cast<std::uint32_t>(t.cols()));
        for (const auto& m : t.m)
            out.write(reinterpret_cast<const char*>(m.data()),
                      static_cast<std::streamsize>(sizeof(double)) * m.size());
    }
    if (!out) throw ConfigError("short write to " + path);
}

MpsState load_mps(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, "QCLMPS01", 8) != 0)
        throw ConfigError(path + " is not an MPS checkpoint");
    const auto read_u32 = [&] {
        std::uint32_t v = 0;
        in.read(reinterpret_cast<char*>(&v), 4);
        return v;
    };
    const auto read_f64 = [&] {
        double v = 0;
        in.read(reinterpret_cast<char*>(&v), 8);
        return v;
    };
    const std::uint32_t version = read_u32();
    if (version != 1) throw ConfigError("unsupported MPS checkpoint version");
    MpsState st;
    const std::uint32_t n = read_u32();
    st.canonical_center = static_cast<int>(read_u32());
    st.energy = read_f64();
    st.truncation_error = read_f64();
    st.tensors.resize(n);
    for (auto& t : st.tensors) {
        const std::uint32_t rows = read_u32(), cols = read_u32();
        for (auto& m : t.m) {
            m.resize(rows, cols);
            in.read(reinterpret_cast<char*>(m.data()),
                    static_cast<std::streamsize>(sizeof(double)) * m.size());
        }
    }
    if (!in) throw ConfigError("truncated MPS checkpoint " + path);
    return st;
}

}  // namespace qcl

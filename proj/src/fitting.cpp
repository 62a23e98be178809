#include "qcl/fitting.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcl/quench.hpp"

namespace qcl {

namespace {

struct Points {
    std::vector<double> r, y, w;  // abscissa, value, least-squares weight
};

/// Residuals and Jacobian for parameters p = (a, b, k), model y = a + b e^{-k r}
/// (the pure model pins a = 0 and skips its column).
void residuals(const Points& pts, const Eigen::Vector3d& p, bool with_offset, Eigen::VectorXd& res,
               Eigen::MatrixXd& jac) {
    const auto n = static_cast<Eigen::Index>(pts.r.size());
    const int n_par = with_offset ? 3 : 2;
    res.resize(n);
    jac.resize(n, n_par);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double e = std::exp(-p(2) * pts.r[static_cast<std::size_t>(i)]);
        const double sw = std::sqrt(pts.w[static_cast<std::size_t>(i)]);
        const double model = (with_offset ? p(0) : 0.0) + p(1) * e;
        res(i) = sw * (pts.y[static_cast<std::size_t>(i)] - model);
        int c = 0;
        if (with_offset) jac(i, c++) = -sw;
        jac(i, c++) = -sw * e;
        jac(i, c) = sw * p(1) * pts.r[static_cast<std::size_t>(i)] * e;
    }
}

/// Slope of a least-squares line through (x, y).
bool linear_fit(const std::vector<double>& x, const std::vector<double>& y, double& slope,
                double& intercept, double& r_squared) {
    const auto n = static_cast<double>(x.size());
    if (x.size() < 2) return false;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-300) return false;
    slope = (n * sxy - sx * sy) / denom;
    intercept = (sy - slope * sx) / n;
    const double ss_tot = syy - sy * sy / n;
    double ss_res = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = y[i] - (intercept + slope * x[i]);
        ss_res += d * d;
    }
    r_squared = (ss_tot > 0) ? 1.0 - ss_res / ss_tot : 1.0;
    return true;
}

Eigen::Vector3d initial_guess(const Points& pts, bool with_offset) {
    const std::size_t n = pts.r.size();
    double a = 0.0;
    if (with_offset) {
        const std::size_t tail = std::max<std::size_t>(1, n / 4);
        for (std::size_t i = n - tail; i < n; ++i) a += pts.y[i];
        a /= static_cast<double>(tail);
    }
    double b = pts.y.front() - a;
    if (b == 0.0) b = 1e-6;

    // Log-linear regression of (y - a) for the rate; fall back to 1 when too
    // few points sit above the offset.
    std::vector<double> xs, ls;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = (pts.y[i] - a) * (b > 0 ? 1.0 : -1.0);
        if (v > 1e-300) {
            xs.push_back(pts.r[i]);
            ls.push_back(std::log(v));
        }
    }
    double slope = -1.0, icpt = 0.0, r2 = 0.0;
    double k = 1.0;
    if (linear_fit(xs, ls, slope, icpt, r2) && slope < -1e-12) k = -slope;
    return {a, b, k};
}

DecayFit lm_fit(const Points& pts, DecayModel model, const FitOptions& opts) {
    const bool with_offset = model == DecayModel::offset_exponential;
    DecayFit fit;
    fit.model = model;

    Eigen::Vector3d p = initial_guess(pts, with_offset);
    Eigen::VectorXd res;
    Eigen::MatrixXd jac;
    residuals(pts, p, with_offset, res, jac);
    double cost = res.squaredNorm();

    double lambda = 1e-3;
    int iterations = 0;
    double grad_norm = 0.0;
    for (; iterations < opts.max_iterations; ++iterations) {
        const Eigen::MatrixXd jtj = jac.transpose() * jac;
        const Eigen::VectorXd jtr = jac.transpose() * res;
        grad_norm = jtr.cwiseAbs().maxCoeff();
        if (grad_norm < opts.gradient_tol) break;

        Eigen::MatrixXd damped = jtj;
        damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
        const Eigen::VectorXd step = damped.ldlt().solve(-jtr);

        Eigen::Vector3d trial = p;
        int c = 0;
        if (with_offset) trial(0) += step(c++);
        trial(1) += step(c++);
        trial(2) += step(c);

        Eigen::VectorXd res_trial;
        Eigen::MatrixXd jac_trial;
        residuals(pts, trial, with_offset, res_trial, jac_trial);
        const double cost_trial = res_trial.squaredNorm();
        if (cost_trial < cost) {
            p = trial;
            res.swap(res_trial);
            jac.swap(jac_trial);
            cost = cost_trial;
            lambda = std::max(lambda * 0.3, 1e-12);
        } else {
            lambda *= 4.0;
            if (lambda > 1e12) break;
        }
    }

    fit.a = with_offset ? p(0) : 0.0;
    fit.b = p(1);
    fit.residual_norm = std::sqrt(cost);
    fit.gradient_norm = grad_norm;
    fit.n_points_used = static_cast<int>(pts.r.size());
    const bool rate_ok = p(2) > 0.0 && std::isfinite(p(2));
    if (grad_norm < opts.gradient_tol && rate_ok) {
        fit.xi = 1.0 / p(2);
        fit.converged = true;
        fit.status = FitStatus::converged;
    } else {
        fit.status = FitStatus::no_convergence;
        if (rate_ok) fit.xi = 1.0 / p(2);
    }
    return fit;
}

}  // namespace

DecayFit fit_decay_points(const std::vector<double>& rs, const std::vector<double>& ys,
                          const std::vector<double>& sigmas, DecayModel model,
                          const FitOptions& opts) {
    if (rs.size() != ys.size() || (!sigmas.empty() && sigmas.size() != ys.size()))
        throw std::invalid_argument("fit_decay: mismatched input lengths");

    DecayFit fit;
    fit.model = model;

    // Default window [1, r_max]: r_max is the last r whose value stays above
    // both the zero threshold and three standard errors (tail noise would
    // otherwise dominate the fit).
    double lo = 1.0, hi = -std::numeric_limits<double>::infinity();
    if (opts.range) {
        lo = opts.range->first;
        hi = opts.range->second;
    } else {
        for (std::size_t i = 0; i < rs.size(); ++i) {
            const double sigma = sigmas.empty() ? 0.0 : sigmas[i];
            if (ys[i] > std::max(opts.zero_threshold, 3.0 * sigma)) hi = std::max(hi, rs[i]);
        }
    }
    fit.fit_range = {lo, hi};

    Points pts;
    double y_min = std::numeric_limits<double>::infinity(), y_max = -y_min;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rs[i] < lo || rs[i] > hi) continue;
        if (model == DecayModel::pure_exponential && ys[i] < opts.zero_threshold) continue;
        pts.r.push_back(rs[i]);
        pts.y.push_back(ys[i]);
        double w = 1.0;
        if (opts.weighting == FitWeighting::inverse_variance && !sigmas.empty()) {
            const double floor = 1e-12 + 1e-12 * std::abs(ys[i]);
            const double s = std::max(sigmas[i], floor);
            w = 1.0 / (s * s);
        }
        pts.w.push_back(w);
        y_min = std::min(y_min, ys[i]);
        y_max = std::max(y_max, ys[i]);
    }

    const std::size_t needed = (model == DecayModel::pure_exponential) ? 3 : 4;
    if (pts.r.empty()) {
        fit.status = FitStatus::all_below_threshold;
        return fit;
    }
    if (y_max - y_min < opts.flat_threshold) {
        // A flat series has no finite decay length; report the flag instead
        // of a fabricated xi.
        fit.status = FitStatus::flat_series;
        fit.a = 0.5 * (y_max + y_min);
        fit.n_points_used = static_cast<int>(pts.r.size());
        return fit;
    }
    if (pts.r.size() < needed) {
        fit.status = FitStatus::too_few_points;
        fit.n_points_used = static_cast<int>(pts.r.size());
        return fit;
    }

    DecayFit out = lm_fit(pts, model, opts);
    out.fit_range = fit.fit_range;
    return out;
}

DecayFit fit_decay(const QuenchSeries& series, DecayModel model, const FitOptions& opts) {
    std::vector<double> rs, ys, sigmas;
    rs.reserve(series.distances.size());
    for (std::size_t i = 0; i < series.distances.size(); ++i) {
        rs.push_back(static_cast<double>(series.distances[i]));
        ys.push_back(series.mean(static_cast<Eigen::Index>(i)));
        sigmas.push_back(series.std_error(static_cast<Eigen::Index>(i)));
    }
    return fit_decay_points(rs, ys, sigmas, model, opts);
}

ScalingFit fit_scaling(const std::vector<double>& xs, const std::vector<double>& ys,
                       std::string quantity_transform) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_scaling: mismatched lengths");
    if (xs.size() < 3) throw std::invalid_argument("fit_scaling needs at least three pairs");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw std::invalid_argument("fit_scaling requires positive inputs");
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    double slope = 0, icpt = 0, r2 = 0;
    if (!linear_fit(lx, ly, slope, icpt, r2))
        throw std::invalid_argument("fit_scaling: degenerate abscissa");
    ScalingFit fit;
    fit.exponent = slope;
    fit.prefactor = std::exp(icpt);
    fit.r_squared = r2;
    fit.quantity_transform = std::move(quantity_transform);
    return fit;
}

}  // namespace qcl

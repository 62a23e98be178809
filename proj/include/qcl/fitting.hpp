#pragma once

#include <Eigen/Core>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qcl {

struct QuenchSeries;  // quench.hpp

enum class DecayModel { pure_exponential, offset_exponential };
enum class FitWeighting { uniform, inverse_variance };

enum class FitStatus {
    converged,
    flat_series,           // max - min below the flatness threshold; xi diverges
    all_below_threshold,   // nothing above the zero threshold to fit
    too_few_points,
    no_convergence,
};

/// y(r) = c0 exp(-r/xi) for the pure model (a = 0, b = c0), or
/// y(r) = a + b exp(-r/xi) for the offset model.
struct DecayFit {
    DecayModel model = DecayModel::pure_exponential;
    double a = 0.0;
    double b = 0.0;
    double xi = std::numeric_limits<double>::quiet_NaN();
    double residual_norm = 0.0;
    std::pair<double, double> fit_range{0.0, 0.0};
    bool converged = false;
    FitStatus status = FitStatus::no_convergence;
    int n_points_used = 0;
    double gradient_norm = 0.0;
};

struct FitOptions {
    std::optional<std::pair<double, double>> range;  // default: [1, last r above noise]
    FitWeighting weighting = FitWeighting::uniform;
    double zero_threshold = 1e-6;  // pure model drops points below this
    double flat_threshold = 1e-6;  // max - min below this flags a flat series
    int max_iterations = 200;
    double gradient_tol = 1e-10;
};

/// Damped Gauss-Newton least squares on the chosen decay model. Initial
/// guess: a = tail mean, b = first point minus a, xi from a log-linear
/// regression of (y - a).
DecayFit fit_decay(const QuenchSeries& series, DecayModel model, const FitOptions& opts = {});

/// Same fit on raw (r, y, sigma) triples.
DecayFit fit_decay_points(const std::vector<double>& rs, const std::vector<double>& ys,
                          const std::vector<double>& sigmas, DecayModel model,
                          const FitOptions& opts = {});

struct ScalingFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
    std::string quantity_transform;  // description of what was regressed
};

/// Log-log linear regression y = prefactor * x^exponent; all inputs must be
/// positive and at least three pairs are required.
ScalingFit fit_scaling(const std::vector<double>& xs, const std::vector<double>& ys,
                       std::string quantity_transform = {});

}  // namespace qcl

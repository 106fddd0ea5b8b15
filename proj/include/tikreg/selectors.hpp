#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tikreg/tikhonov.hpp"

namespace tikreg {

enum class Method { chi2, upre, gcv, mdp, lcurve };

Method method_from_string(const std::string& name);
std::string method_name(Method m);

enum class SelectionStatus {
    ok,
    no_root_clamped_max_reg,
    no_root_clamped_min_reg,
    flat_objective,
    no_corner,
};

std::string status_name(SelectionStatus s);

struct SelectionResult {
    double alpha = 0.0;
    double sigmaL = 0.0;
    Method method = Method::chi2;
    int iterations = 0;
    bool converged = false;
    SelectionStatus status = SelectionStatus::ok;
    std::vector<std::pair<double, double>> objective_trace;
};

struct NonConvergence : Error {
    using Error::Error;
};

struct Chi2Config {
    double theta = 0.95;       // confidence level for the stopping tolerance
    int max_newton_iters = 50;
    std::optional<Index> dof_override;  // filtered case: r kept terms and r dof
    double rank_threshold = 1.4901161193847656e-8;  // sqrt(machine eps), relative gamma cutoff
    bool dynamic_dof = false;  // cap dof by the significant-gamma count
    std::optional<double> tol_override;  // replaces z_{theta/2} sqrt(2 dof)
};

// Stopping tolerance used by the chi^2 root finder for a given dof count.
double chi2_tolerance(double theta, Index dof);

// Newton root finder for ||k(sigmaL)||^2 = dof with a backtracked step and a
// bisection bracket as fallback. A missing root is reported through the
// status field with sigmaL clamped at the far end of its range.
SelectionResult select_chi2(const BandSpectrum& b, const Chi2Config& cfg = {});

// Grid minimizers; ties break toward larger alpha. Grids are sorted
// internally so the result does not depend on the order given.
SelectionResult select_upre(const BandSpectrum& b, const std::vector<double>& grid);
SelectionResult select_gcv(const BandSpectrum& b, const std::vector<double>& grid);

// Interpolates the weighted residual against log(alpha) to the target
// rho * delta, clamping with a flag when the target is out of range.
SelectionResult select_mdp(const BandSpectrum& b, double rho, double delta,
                           const std::vector<double>& grid);

// Maximum-curvature corner of the log-log residual/seminorm curve by
// three-point finite differences, endpoints dropped.
SelectionResult select_lcurve(const BandSpectrum& b, const std::vector<double>& grid);

// Log-spaced alpha grid spanning [max(gamma_min, 1e-6 gamma_max), gamma_max]
// over the finite nonzero band.
std::vector<double> alpha_grid(const BandSpectrum& b, int count = 1000);

}  // namespace tikreg

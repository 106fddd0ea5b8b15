#include "tikreg/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tikreg/kernels.hpp"
#include "tikreg/stats.hpp"

namespace tikreg {

Method method_from_string(const std::string& name) {
    if (name == "chi2") return Method::chi2;
    if (name == "upre") return Method::upre;
    if (name == "gcv") return Method::gcv;
    if (name == "mdp") return Method::mdp;
    if (name == "lcurve" || name == "lc") return Method::lcurve;
    throw ConfigError("unknown selector: " + name);
}

std::string method_name(Method m) {
    switch (m) {
        case Method::chi2: return "chi2";
        case Method::upre: return "upre";
        case Method::gcv: return "gcv";
        case Method::mdp: return "mdp";
        case Method::lcurve: return "lcurve";
    }
    return "?";
}

std::string status_name(SelectionStatus s) {
    switch (s) {
        case SelectionStatus::ok: return "ok";
        case SelectionStatus::no_root_clamped_max_reg: return "no-root-clamped-max-reg";
        case SelectionStatus::no_root_clamped_min_reg: return "no-root-clamped-min-reg";
        case SelectionStatus::flat_objective: return "flat-objective";
        case SelectionStatus::no_corner: return "no-corner";
    }
    return "?";
}

double chi2_tolerance(double theta, Index dof) {
    if (!(theta > 0.0 && theta < 1.0)) throw Error("chi2_tolerance: theta outside (0,1)");
    if (dof < 1) throw Error("chi2_tolerance: dof must be positive");
    return normal_quantile(0.5 * (1.0 + theta)) * std::sqrt(2.0 * static_cast<double>(dof));
}

namespace {

std::vector<double> sorted_grid(std::vector<double> g, const char* who) {
    if (g.empty()) throw Error(std::string(who) + ": empty grid");
    for (double a : g)
        if (!(a > 0.0) || !std::isfinite(a)) throw Error(std::string(who) + ": grid values must be positive");
    std::sort(g.begin(), g.end());
    return g;
}

// Argmin with ties resolved toward larger alpha on an ascending grid.
std::size_t argmin_prefer_last(const std::vector<double>& vals) {
    std::size_t idx = 0;
    double best = vals[0];
    for (std::size_t i = 1; i < vals.size(); ++i) {
        if (vals[i] <= best) {
            best = vals[i];
            idx = i;
        }
    }
    return idx;
}

bool flat_range(const std::vector<double>& vals) {
    double lo = vals[0], hi = vals[0];
    for (double v : vals) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return (hi - lo) < 1e-12 * (1.0 + std::abs(lo));
}

SelectionResult grid_result(Method m, const std::vector<double>& g, const std::vector<double>& vals,
                            std::size_t idx, SelectionStatus status) {
    SelectionResult out;
    out.method = m;
    out.alpha = g[idx];
    out.sigmaL = 1.0 / out.alpha;
    out.iterations = static_cast<int>(g.size());
    out.status = status;
    out.converged = (status == SelectionStatus::ok || status == SelectionStatus::flat_objective);
    out.objective_trace.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out.objective_trace.emplace_back(g[i], vals[i]);
    return out;
}

struct DofPlan {
    Index dof = 0;
    Index keep = 0;  // kept band terms fed to the filtered functional
};

DofPlan resolve_dof(const BandSpectrum& b, const Chi2Config& cfg) {
    const Index band = b.band();
    DofPlan plan;
    if (cfg.dof_override) {
        if (*cfg.dof_override < 1 || *cfg.dof_override > band)
            throw InvalidTruncation("select_chi2: dof override outside [1, band]");
        plan.dof = plan.keep = *cfg.dof_override;
        return plan;
    }
    const Index dof0 = b.m + b.p - b.n;
    if (dof0 < 1) throw Error("select_chi2: m + p - n must be positive");
    if (!cfg.dynamic_dof) {
        plan.dof = dof0;
        plan.keep = band;
        return plan;
    }
    const double gmax = band > 0 ? b.gamma.maxCoeff() : 0.0;
    Index significant = 0;
    for (Index j = 0; j < band; ++j)
        if (b.gamma(j) > cfg.rank_threshold * gmax) ++significant;
    plan.dof = std::max<Index>(1, std::min(dof0, significant));
    plan.keep = std::min(band, plan.dof);
    return plan;
}

}  // namespace

SelectionResult select_chi2(const BandSpectrum& b, const Chi2Config& cfg) {
    const Index band = b.band();
    const DofPlan plan = resolve_dof(b, cfg);
    const double dof = static_cast<double>(plan.dof);
    const double tol = cfg.tol_override ? *cfg.tol_override : chi2_tolerance(cfg.theta, plan.dof);

    // Value of the (possibly filtered) functional; the energy beyond the
    // computed columns belongs to the unfiltered functional only.
    auto k2 = [&](double sigma) {
        double v = chi2_functional(b, sigma, plan.keep).value;
        if (plan.keep == band) v += b.tail_energy();
        return v;
    };

    SelectionResult out;
    out.method = Method::chi2;

    double gamma_hi = 0.0, gamma_lo = std::numeric_limits<double>::infinity();
    for (Index j = band - plan.keep; j < band; ++j) {
        if (b.gamma(j) > 0.0) {
            gamma_hi = std::max(gamma_hi, b.gamma(j));
            gamma_lo = std::min(gamma_lo, b.gamma(j));
        }
    }
    if (!(gamma_hi > 0.0)) throw Error("select_chi2: no positive band values");
    gamma_lo = std::max(gamma_lo, 1e-12 * gamma_hi);
    const double sigma_lo = 1e-9 / gamma_hi;
    const double sigma_hi = 1e9 / gamma_lo;

    double total = b.s_band.tail(plan.keep).squaredNorm();
    if (plan.keep == band) total += b.tail_energy();
    if (total < dof - tol) {
        out.sigmaL = sigma_lo;  // maximal regularization
        out.alpha = 1.0 / out.sigmaL;
        out.status = SelectionStatus::no_root_clamped_max_reg;
        return out;
    }
    {
        const double e_hi = k2(sigma_hi) - dof;
        if (e_hi > tol) {
            out.sigmaL = sigma_hi;  // minimal regularization
            out.alpha = 1.0 / out.sigmaL;
            out.status = SelectionStatus::no_root_clamped_min_reg;
            return out;
        }
    }

    // Initial guess from a one-term model with the geometric-mean gamma.
    double log_sum = 0.0;
    Index pos = 0;
    for (Index j = band - plan.keep; j < band; ++j)
        if (b.gamma(j) > 0.0) {
            log_sum += std::log(b.gamma(j));
            ++pos;
        }
    const double gbar = std::exp(log_sum / static_cast<double>(pos));
    double sigma = (total > dof) ? std::sqrt(total / dof - 1.0) / gbar : 1.0 / gbar;
    sigma = std::clamp(sigma, sigma_lo, sigma_hi);

    double bracket_lo = sigma_lo;  // largest sigma seen with k2 >= dof
    double bracket_hi = sigma_hi;  // smallest sigma seen with k2 < dof
    double err = k2(sigma) - dof;
    for (int iter = 1; iter <= cfg.max_newton_iters; ++iter) {
        out.objective_trace.emplace_back(sigma, err + dof);
        if (err >= 0.0)
            bracket_lo = std::max(bracket_lo, sigma);
        else
            bracket_hi = std::min(bracket_hi, sigma);
        if (std::abs(err) <= tol) {
            out.sigmaL = sigma;
            out.alpha = 1.0 / sigma;
            out.iterations = iter;
            out.converged = true;
            return out;
        }
        const double ly2 = seminorm2(b, sigma, plan.keep);
        bool stepped = false;
        if (ly2 > 0.0) {
            double beta = 1.0;
            for (int half = 0; half < 30; ++half) {
                double cand = sigma * (1.0 + beta * 0.5 * (sigma * sigma / ly2) * err);
                if (cand > 0.0) {
                    cand = std::clamp(cand, sigma_lo, sigma_hi);
                    const double cand_err = k2(cand) - dof;
                    if (std::abs(cand_err) <= std::abs(err)) {
                        sigma = cand;
                        err = cand_err;
                        stepped = true;
                        break;
                    }
                }
                beta *= 0.5;
            }
        }
        if (!stepped) {
            sigma = std::sqrt(bracket_lo * bracket_hi);
            err = k2(sigma) - dof;
        }
    }
    throw NonConvergence("select_chi2: Newton did not converge within the iteration limit");
}

SelectionResult select_upre(const BandSpectrum& b, const std::vector<double>& grid) {
    auto g = sorted_grid(grid, "select_upre");
    auto vals = kernels::map_grid(g, [&](double a) { return upre_objective(b, 1.0 / a); });
    const std::size_t idx = argmin_prefer_last(vals);
    const SelectionStatus status = flat_range(vals) ? SelectionStatus::flat_objective : SelectionStatus::ok;
    return grid_result(Method::upre, g, vals, idx, status);
}

SelectionResult select_gcv(const BandSpectrum& b, const std::vector<double>& grid) {
    auto g = sorted_grid(grid, "select_gcv");
    long skipped = 0;
    auto vals = kernels::map_grid(g, [&](double a) {
        const double t = influence_trace(b, 1.0 / a);
        if (t == 0.0) return std::numeric_limits<double>::infinity();
        return residual_norm2(b, 1.0 / a) / (t * t);
    });
    for (double v : vals)
        if (std::isinf(v)) ++skipped;
    if (skipped == static_cast<long>(vals.size())) throw Error("select_gcv: trace vanished on the whole grid");
    if (skipped > 0)
        std::fprintf(stderr, "select_gcv: skipped %ld grid points with zero trace\n", skipped);
    const std::size_t idx = argmin_prefer_last(vals);
    const SelectionStatus status = flat_range(vals) ? SelectionStatus::flat_objective : SelectionStatus::ok;
    return grid_result(Method::gcv, g, vals, idx, status);
}

SelectionResult select_mdp(const BandSpectrum& b, double rho, double delta,
                           const std::vector<double>& grid) {
    if (!(rho > 0.0 && rho <= 1.0)) throw Error("select_mdp: rho outside (0, 1]");
    if (!(delta > 0.0)) throw Error("select_mdp: delta must be positive");
    auto g = sorted_grid(grid, "select_mdp");
    const double target = rho * delta;
    auto vals = kernels::map_grid(g, [&](double a) { return residual_norm2(b, 1.0 / a); });

    SelectionResult out;
    out.method = Method::mdp;
    out.iterations = static_cast<int>(g.size());
    out.objective_trace.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out.objective_trace.emplace_back(g[i], vals[i]);

    // The residual grows with alpha, so the crossing bracket is unique.
    if (target < vals.front()) {
        out.alpha = g.front();
        out.status = SelectionStatus::no_root_clamped_min_reg;
    } else if (target > vals.back()) {
        out.alpha = g.back();
        out.status = SelectionStatus::no_root_clamped_max_reg;
    } else {
        std::size_t i = 0;
        while (i + 1 < g.size() && vals[i + 1] < target) ++i;
        if (vals[i + 1] > vals[i]) {
            const double t = (target - vals[i]) / (vals[i + 1] - vals[i]);
            out.alpha = std::exp(std::log(g[i]) + t * (std::log(g[i + 1]) - std::log(g[i])));
        } else {
            out.alpha = g[i + 1];
        }
        out.status = SelectionStatus::ok;
        out.converged = true;
    }
    out.sigmaL = 1.0 / out.alpha;
    return out;
}

SelectionResult select_lcurve(const BandSpectrum& b, const std::vector<double>& grid) {
    auto g = sorted_grid(grid, "select_lcurve");
    if (g.size() < 5) throw Error("select_lcurve: need at least 5 grid points");

    const std::size_t count = g.size();
    std::vector<double> xs(count), ys(count), ts(count);
    auto safe_log = [](double v) { return 0.5 * std::log(std::max(v, 1e-300)); };
    std::vector<double> ns = kernels::map_grid(g, [&](double a) { return residual_norm2(b, 1.0 / a); });
    std::vector<double> sn = kernels::map_grid(g, [&](double a) { return seminorm2(b, 1.0 / a); });
    for (std::size_t i = 0; i < count; ++i) {
        ts[i] = std::log(g[i]);
        xs[i] = safe_log(ns[i]);
        ys[i] = safe_log(sn[i]);
    }

    // Signed curvature of the parametric curve; endpoints are dropped. A
    // corner turns the tangent from "down" to "right", which is positive
    // with this orientation.
    double best_curv = -std::numeric_limits<double>::infinity();
    std::size_t best_idx = 0;
    std::vector<double> curvature(count, 0.0);
    for (std::size_t k = 1; k + 1 < count; ++k) {
        const double h1 = ts[k] - ts[k - 1];
        const double h2 = ts[k + 1] - ts[k];
        const double denom = h1 * h2 * (h1 + h2);
        const double xp = (h1 * h1 * xs[k + 1] - h2 * h2 * xs[k - 1] + (h2 * h2 - h1 * h1) * xs[k]) / denom;
        const double yp = (h1 * h1 * ys[k + 1] - h2 * h2 * ys[k - 1] + (h2 * h2 - h1 * h1) * ys[k]) / denom;
        const double xpp = 2.0 * (h1 * xs[k + 1] + h2 * xs[k - 1] - (h1 + h2) * xs[k]) / denom;
        const double ypp = 2.0 * (h1 * ys[k + 1] + h2 * ys[k - 1] - (h1 + h2) * ys[k]) / denom;
        const double speed2 = xp * xp + yp * yp;
        if (speed2 <= 0.0) continue;
        const double curv = (xp * ypp - yp * xpp) / std::pow(speed2, 1.5);
        curvature[k] = curv;
        if (curv >= best_curv) {
            best_curv = curv;
            best_idx = k;
        }
    }

    SelectionResult out;
    out.method = Method::lcurve;
    out.iterations = static_cast<int>(count);
    out.objective_trace.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.objective_trace.emplace_back(g[i], curvature[i]);
    if (best_curv <= 0.0) {
        out.alpha = g[count / 2];
        out.status = SelectionStatus::no_corner;
    } else {
        out.alpha = g[best_idx];
        out.status = SelectionStatus::ok;
        out.converged = true;
    }
    out.sigmaL = 1.0 / out.alpha;
    return out;
}

std::vector<double> alpha_grid(const BandSpectrum& b, int count) {
    if (count < 1) throw Error("alpha_grid: count must be positive");
    double gmax = 0.0, gmin = std::numeric_limits<double>::infinity();
    for (Index j = 0; j < b.band(); ++j) {
        const double g = b.gamma(j);
        if (g > 0.0 && std::isfinite(g)) {
            gmax = std::max(gmax, g);
            gmin = std::min(gmin, g);
        }
    }
    if (!(gmax > 0.0)) throw Error("alpha_grid: no finite nonzero band values");
    const double lo = std::max(gmin, 1e-6 * gmax);
    const double hi = gmax;
    std::vector<double> g(static_cast<std::size_t>(count));
    if (count == 1) {
        g[0] = std::sqrt(lo * hi);
        return g;
    }
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int k = 0; k < count; ++k)
        g[static_cast<std::size_t>(k)] =
            std::exp(llo + (lhi - llo) * static_cast<double>(k) / static_cast<double>(count - 1));
    return g;
}

}  // namespace tikreg

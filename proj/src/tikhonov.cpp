#include "tikreg/tikhonov.hpp"

#include <Eigen/Cholesky>
#include <cmath>

namespace tikreg {

Matrix ProblemInstance::weighted_forward() const { return wd.asDiagonal() * G; }

Vector ProblemInstance::weighted_residual() const {
    Vector r = d_obs;
    if (m0.size() > 0) r -= G * m0;
    return wd.asDiagonal() * r;
}

void ProblemInstance::validate() const {
    if (G.rows() < 1 || G.cols() < 1) throw DimensionMismatch("problem: empty forward operator");
    if (d_obs.size() != G.rows()) throw DimensionMismatch("problem: data length != m");
    if (wd.size() != G.rows()) throw DimensionMismatch("problem: weighting length != m");
    if (L.cols() != G.cols()) throw DimensionMismatch("problem: regularizer column count != n");
    if (m0.size() != 0 && m0.size() != G.cols()) throw DimensionMismatch("problem: reference length != n");
    if (!(wd.minCoeff() > 0.0)) throw Error("problem: weighting must be positive");
    if (!all_finite(G) || !all_finite(d_obs) || !all_finite(L)) throw Error("problem: non-finite entries");
}

namespace {

Index resolve_trunc(Index band, Index r, const char* who) {
    if (r == kFullBand) return band;
    if (r < 0 || r > band) throw InvalidTruncation(std::string(who) + ": truncation outside [0, band]");
    return r;
}

void require_sigma(double sigmaL, const char* who) {
    if (!(sigmaL > 0.0)) throw Error(std::string(who) + ": sigmaL must be positive");
}

}  // namespace

RegularizedSolution solve_spectral(const GsvdFactors& f, const SpectralCoefficients& c,
                                   double sigmaL, Index r, const Vector& m0) {
    require_sigma(sigmaL, "solve_spectral");
    if (c.s.size() != f.m) throw DimensionMismatch("solve_spectral: coefficients misaligned");
    const Index band = f.band_size();
    const Index keep = resolve_trunc(band, r, "solve_spectral");
    const double s2 = sigmaL * sigmaL;

    Vector y = Vector::Zero(f.n);
    for (Index j = band - keep; j < band; ++j) {
        const double nu = f.nu(j);
        const double mu = f.mu(f.q + j);
        if (!(nu > 0.0)) throw DivisionDegenerate("solve_spectral: zero nu on a kept band column");
        const double coeff = nu * s2 / (nu * nu * s2 + mu * mu);
        y += (coeff * c.s(j)) * f.Z.col(f.q + j);
    }
    for (Index j = band; j < f.m; ++j) y += c.s(j) * f.Z.col(f.q + j);

    RegularizedSolution sol;
    sol.y = std::move(y);
    sol.m = (m0.size() > 0) ? Vector(m0 + sol.y) : sol.y;
    sol.sigmaL = sigmaL;
    sol.alpha = 1.0 / sigmaL;
    sol.truncation = keep;
    return sol;
}

RegularizedSolution solve_spectral(const SvdFactors& f, const SpectralCoefficients& c,
                                   double sigmaL, Index r, const Vector& m0) {
    require_sigma(sigmaL, "solve_spectral");
    const Index k = std::min(f.m, f.n);
    if (c.s.size() != k) throw DimensionMismatch("solve_spectral: coefficients misaligned");
    const Index keep = resolve_trunc(k, r, "solve_spectral");
    const double s2 = sigmaL * sigmaL;

    Vector y = Vector::Zero(f.n);
    for (Index j = k - keep; j < k; ++j) {
        const double sv = f.sigma(k - 1 - j);  // ascending band index -> SVD column
        const double coeff = sv * s2 / (sv * sv * s2 + 1.0);
        y += (coeff * c.s(j)) * f.V.col(k - 1 - j);
    }

    RegularizedSolution sol;
    sol.y = std::move(y);
    sol.m = (m0.size() > 0) ? Vector(m0 + sol.y) : sol.y;
    sol.sigmaL = sigmaL;
    sol.alpha = 1.0 / sigmaL;
    sol.truncation = keep;
    return sol;
}

RegularizedSolution solve_direct(const ProblemInstance& prob, double alpha) {
    prob.validate();
    if (!(alpha > 0.0)) throw Error("solve_direct: alpha must be positive");
    const Matrix gt = prob.weighted_forward();
    const Vector rt = prob.weighted_residual();

    Matrix normal = gt.transpose() * gt + (alpha * alpha) * (prob.L.transpose() * prob.L);
    const Vector rhs = gt.transpose() * rt;

    Eigen::LDLT<Matrix> ldlt(normal);
    if (ldlt.info() != Eigen::Success) throw SingularSystem("solve_direct: factorization failed");
    Vector y = ldlt.solve(rhs);
    const double resid = (normal * y - rhs).norm();
    const double scale = normal.norm() * y.norm() + rhs.norm();
    if (!all_finite(y) || (scale > 0.0 && resid > 1e-6 * scale))
        throw SingularSystem("solve_direct: regularized normal matrix is numerically singular");

    RegularizedSolution sol;
    sol.m = (prob.m0.size() > 0) ? Vector(prob.m0 + y) : y;
    sol.y = std::move(y);
    sol.alpha = alpha;
    sol.sigmaL = 1.0 / alpha;
    sol.truncation = kFullBand;
    return sol;
}

double residual_norm2(const BandSpectrum& b, double sigmaL, Index r) {
    require_sigma(sigmaL, "residual_norm2");
    const Index band = b.band();
    const Index keep = resolve_trunc(band, r, "residual_norm2");
    const double s2 = sigmaL * sigmaL;
    double acc = 0.0;
    for (Index j = 0; j < band - keep; ++j) acc += b.s_band(j) * b.s_band(j);
    for (Index j = band - keep; j < band; ++j) {
        const double g = b.gamma(j);
        const double shat = b.s_band(j) / (g * g * s2 + 1.0);
        acc += shat * shat;
    }
    return acc + b.tail_energy();
}

double influence_trace(const BandSpectrum& b, double sigmaL, Index r) {
    require_sigma(sigmaL, "influence_trace");
    const Index band = b.band();
    const Index keep = resolve_trunc(band, r, "influence_trace");
    double acc = static_cast<double>(b.m + b.p - b.n - keep);
    const double s2 = sigmaL * sigmaL;
    for (Index j = band - keep; j < band; ++j) {
        const double g = b.gamma(j);
        acc += 1.0 / (g * g * s2 + 1.0);
    }
    return acc;
}

double seminorm2(const BandSpectrum& b, double sigmaL, Index r) {
    require_sigma(sigmaL, "seminorm2");
    const Index band = b.band();
    const Index keep = resolve_trunc(band, r, "seminorm2");
    const double s2 = sigmaL * sigmaL;
    double acc = 0.0;
    for (Index j = band - keep; j < band; ++j) {
        const double g = b.gamma(j);
        const double denom = g * g * s2 + 1.0;
        acc += g * g * b.s_band(j) * b.s_band(j) / (denom * denom);
    }
    return s2 * s2 * acc;
}

Chi2Eval chi2_functional(const BandSpectrum& b, double sigmaL, Index r) {
    require_sigma(sigmaL, "chi2_functional");
    const Index band = b.band();
    const Index keep = resolve_trunc(band, r, "chi2_functional");
    const double s2 = sigmaL * sigmaL;
    Chi2Eval out;
    for (Index j = band - keep; j < band; ++j) {
        const double g = b.gamma(j);
        const double denom = g * g * s2 + 1.0;
        const double ss = b.s_band(j) * b.s_band(j);
        out.value += ss / denom;
        out.derivative += g * g * ss / (denom * denom);
    }
    out.derivative *= -2.0 * sigmaL;
    return out;
}

double upre_objective(const BandSpectrum& b, double sigmaL, Index r) {
    require_sigma(sigmaL, "upre_objective");
    const Index band = b.band();
    const Index keep = resolve_trunc(band, r, "upre_objective");
    const double s2 = sigmaL * sigmaL;
    double acc = 0.0;
    for (Index j = band - keep; j < band; ++j) {
        const double g = b.gamma(j);
        const double inv = 1.0 / (g * g * s2 + 1.0);
        const double shat = b.s_band(j) * inv;
        acc += shat * shat - 2.0 * inv;
    }
    return acc;
}

}  // namespace tikreg

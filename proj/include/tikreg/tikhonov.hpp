#pragma once

#include "tikreg/gsvd.hpp"

namespace tikreg {

// A weighted linear inverse problem. wd holds the diagonal of W_d, the
// inverse square root of the data covariance; all shipped generators
// produce diagonal weightings.
struct ProblemInstance {
    Matrix G;      // m x n forward operator
    Vector d_obs;  // observed data
    Vector wd;     // diagonal of W_d
    Matrix L;      // p x n regularizer
    Vector m0;     // reference model

    // Populated by the generators alongside the observed data.
    Vector m_exact;
    Vector d_clean;

    Index m() const { return G.rows(); }
    Index n() const { return G.cols(); }
    Matrix weighted_forward() const;   // W_d G
    Vector weighted_residual() const;  // W_d (d_obs - G m0)
    void validate() const;
};

struct RegularizedSolution {
    Vector y;  // shifted solution
    Vector m;  // m0 + y
    double alpha = 0.0;
    double sigmaL = 0.0;
    Index truncation = 0;
};

// Pass for the truncation argument to keep the whole finite band.
inline constexpr Index kFullBand = -1;

// Solution assembled from spectral data: filtered band plus the untouched
// infinite-gamma block. m0 may be empty, in which case m == y.
RegularizedSolution solve_spectral(const GsvdFactors& f, const SpectralCoefficients& c,
                                   double sigmaL, Index r = kFullBand, const Vector& m0 = Vector());
RegularizedSolution solve_spectral(const SvdFactors& f, const SpectralCoefficients& c,
                                   double sigmaL, Index r = kFullBand, const Vector& m0 = Vector());

// Dense cross-check: assembles the regularized normal equations with the
// white-noise convention for the penalty weight and solves them directly.
RegularizedSolution solve_direct(const ProblemInstance& prob, double alpha);

// Scalar functionals of sigmaL evaluated from the band spectrum in O(band)
// per call. r counts kept band terms, as for filter_factors.
double residual_norm2(const BandSpectrum& b, double sigmaL, Index r = kFullBand);   // N
double influence_trace(const BandSpectrum& b, double sigmaL, Index r = kFullBand);  // T
double seminorm2(const BandSpectrum& b, double sigmaL, Index r = kFullBand);        // ||L y||^2

struct Chi2Eval {
    double value = 0.0;       // ||k(sigmaL)||^2 over the kept band
    double derivative = 0.0;  // d/d sigmaL, always <= 0
};
Chi2Eval chi2_functional(const BandSpectrum& b, double sigmaL, Index r = kFullBand);

// Shifted predictive-risk objective; shares its argmin with the unshifted
// residual + trace form.
double upre_objective(const BandSpectrum& b, double sigmaL, Index r = kFullBand);

}  // namespace tikreg

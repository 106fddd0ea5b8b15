#pragma once

#include "tikreg/types.hpp"

namespace tikreg {

// Joint decomposition of a stacked pair with A (m x n, m <= n) and B (p x n),
// both of full row rank and the stack [A; B] of full column rank n:
//
//   A = U * Yt * X^T,   Yt = [ 0_{m x q} | diag(nu) ]          (m x n)
//   B = V * Mt * X^T,   Mt = [ diag(mu)  | 0_{p x (n-p)} ]     (p x n)
//
// where q = n - m, U (m x m) and V (p x p) are orthogonal, X (n x n) is
// invertible and Z = X^{-T}. Column i of X (1-based) carries the generalized
// value gamma_i = nu_i / mu_i:
//
//   i in [1, q]   : gamma = 0        (nu = 0, mu = 1)
//   i in (q, p]   : gamma finite, ascending; nu^2 + mu^2 = 1
//   i in (p, n]   : gamma infinite   (nu = 1, mu = 0)
//
// so the spectrum splits into exactly q zero, m+p-n finite nonzero and n-p
// infinite values. Column j of U pairs with column q+j of X. Infinite values
// are stored as IEEE +inf sentinels; arithmetic downstream branches on the
// index partition and touches only nu and mu.
struct GsvdFactors {
    Matrix U;  // m x m
    Matrix V;  // p x p
    Matrix X;  // n x n
    Matrix Z;  // n x n, columns z_i build solutions

    Vector nu;     // size m: logical indices q+1..n (band, then exact ones)
    Vector mu;     // size p: logical indices 1..p (exact ones, then band)
    Vector gamma;  // size n

    Index m = 0, n = 0, p = 0, q = 0;

    Index band_size() const { return p - q; }
    bool gamma_infinite(Index col0) const { return col0 >= p; }
};

// Built by a QR factorization of the stack followed by an SVD of the top
// block of Q, with columns permuted to the ascending ordering above.
GsvdFactors compute_gsvd(const Matrix& a, const Matrix& b);

struct SvdFactors {
    Matrix U;      // m x m
    Matrix V;      // n x n
    Vector sigma;  // min(m, n), nonincreasing
    Index m = 0, n = 0;
};

SvdFactors compute_svd(const Matrix& a);

// Projected data aligned with the ascending-gamma column convention:
// s_j = u^T rt for the u paired with logical column q+j. Stored for the
// min(m, n) columns that carry data; rnorm2 keeps the total energy so the
// part outside the computed columns (m > n) stays available.
struct SpectralCoefficients {
    Vector s;
    double rnorm2 = 0.0;
};

SpectralCoefficients spectral_coefficients(const GsvdFactors& f, const Vector& rt);
SpectralCoefficients spectral_coefficients(const SvdFactors& f, const Vector& rt);

// Tikhonov filter factors for the logical columns q+1..q+min(m,n): zero on
// the truncated low end of the band, gamma^2 / (gamma^2 + sigmaL^-2) on the
// kept band, one on the infinite-gamma block. r counts kept band terms.
Vector filter_factors(const GsvdFactors& f, double sigmaL, Index r);
Vector filter_factors(const SvdFactors& f, double sigmaL, Index r);

// The alpha-independent slice of a factorization that every scalar
// functional and selector consumes: the finite band (ascending), its
// coefficients, the pass-through coefficients and the total data energy.
struct BandSpectrum {
    Index m = 0, n = 0, p = 0, q = 0;
    Vector gamma;   // ascending finite band, size p - q
    Vector s_band;  // aligned with gamma
    Vector s_pass;  // infinite-gamma block coefficients
    double rnorm2 = 0.0;

    Index band() const { return gamma.size(); }

    // Residual energy outside the computed columns; nonzero only when m > n.
    double tail_energy() const;
};

BandSpectrum make_band(const GsvdFactors& f, const SpectralCoefficients& c);
BandSpectrum make_band(const SvdFactors& f, const SpectralCoefficients& c);

// Factors of [c*A; B] derived from factors of [A; B] by renormalizing each
// column pair; U and V are unchanged. Lets one decomposition serve several
// scalar data weightings.
GsvdFactors reweight_data(const GsvdFactors& f, double c);
SvdFactors reweight_data(const SvdFactors& f, double c);

}  // namespace tikreg

#include "tikreg/gsvd.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace tikreg {

namespace {

constexpr double kRankTol = 1e-12;
const double kEps = std::numeric_limits<double>::epsilon();

// Two-pass Gram-Schmidt cleanup of the nearly orthogonal columns of B,
// processed in order of decreasing norm. Directions with tiny norm are noise
// dominated; orthogonalizing them against the well-determined earlier
// columns keeps V orthonormal without disturbing the reconstruction, whose
// contribution from those columns is scaled by the same tiny mu.
Matrix orthonormalize_columns(const Matrix& b) {
    const Index p = b.cols();
    Matrix v(b.rows(), p);
    for (Index i = 0; i < p; ++i) {
        Vector w = b.col(i);
        for (int pass = 0; pass < 2; ++pass) {
            if (i > 0) w -= v.leftCols(i) * (v.leftCols(i).transpose() * w);
        }
        double norm = w.norm();
        if (norm > 1e3 * kEps * std::sqrt(static_cast<double>(b.rows()))) {
            v.col(i) = w / norm;
            continue;
        }
        // Degenerate direction: rebuild from the canonical basis.
        Index best = 0;
        double best_norm = -1.0;
        for (Index e = 0; e < b.rows(); ++e) {
            Vector cand = Vector::Unit(b.rows(), e);
            if (i > 0) cand -= v.leftCols(i) * (v.leftCols(i).transpose() * cand);
            if (cand.norm() > best_norm) {
                best_norm = cand.norm();
                best = e;
            }
        }
        Vector cand = Vector::Unit(b.rows(), best);
        for (int pass = 0; pass < 2; ++pass)
            if (i > 0) cand -= v.leftCols(i) * (v.leftCols(i).transpose() * cand);
        v.col(i) = cand / cand.norm();
    }
    return v;
}

}  // namespace

GsvdFactors compute_gsvd(const Matrix& a, const Matrix& b) {
    const Index m = a.rows(), n = a.cols(), p = b.rows();
    if (m < 1 || n < 1 || p < 1) throw DimensionMismatch("compute_gsvd: empty block");
    if (b.cols() != n) throw DimensionMismatch("compute_gsvd: column counts differ");
    if (m > n || p > n || m + p < n)
        throw DimensionMismatch("compute_gsvd: need m <= n, p <= n, m + p >= n");
    if (!all_finite(a) || !all_finite(b)) throw Error("compute_gsvd: non-finite input");

    const Index q = n - m;
    const Index band = m + p - n;

    Matrix stack(m + p, n);
    stack.topRows(m) = a;
    stack.bottomRows(p) = b;

    Eigen::HouseholderQR<Matrix> qr(stack);
    Matrix qthin = qr.householderQ() * Matrix::Identity(m + p, n);
    Matrix r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();

    {
        Eigen::BDCSVD<Matrix> rsvd(r);
        const Vector& sv = rsvd.singularValues();
        if (sv(n - 1) < kRankTol * sv(0))
            throw RankDeficient("compute_gsvd: stacked pair is numerically column rank deficient");
    }

    Eigen::BDCSVD<Matrix> svd(qthin.topRows(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) throw DecompositionFailure("compute_gsvd: SVD failed");
    Vector sig = svd.singularValues().cwiseMin(1.0).cwiseMax(0.0);

    GsvdFactors f;
    f.m = m;
    f.n = n;
    f.p = p;
    f.q = q;

    // Column permutation to the ascending convention: the n - m right
    // singular vectors beyond the diagonal go first (zero gammas), then the
    // m singular directions reversed so the n - p exact ones land last.
    Matrix w(n, n);
    for (Index j = 0; j < q; ++j) w.col(j) = svd.matrixV().col(m + j);
    for (Index j = 0; j < m; ++j) w.col(q + j) = svd.matrixV().col(m - 1 - j);

    f.U.resize(m, m);
    for (Index j = 0; j < m; ++j) f.U.col(j) = svd.matrixU().col(m - 1 - j);

    f.nu.resize(m);
    for (Index j = 0; j < m; ++j) f.nu(j) = sig(m - 1 - j);
    for (Index j = band; j < m; ++j) f.nu(j) = 1.0;
    for (Index j = 0; j < band; ++j) {
        if (f.nu(j) <= kRankTol)
            throw RankDeficient("compute_gsvd: first block is numerically row rank deficient");
        if ((1.0 - f.nu(j)) * (1.0 + f.nu(j)) <= 64.0 * kEps)
            throw RankDeficient("compute_gsvd: second block is numerically row rank deficient");
    }

    f.mu.resize(p);
    for (Index i = 0; i < q; ++i) f.mu(i) = 1.0;
    for (Index i = q; i < p; ++i) {
        const double nu = f.nu(i - q);
        f.mu(i) = std::sqrt((1.0 - nu) * (1.0 + nu));
    }

    f.gamma.resize(n);
    for (Index i = 0; i < q; ++i) f.gamma(i) = 0.0;
    for (Index i = q; i < p; ++i) f.gamma(i) = f.nu(i - q) / f.mu(i);
    for (Index i = p; i < n; ++i) f.gamma(i) = std::numeric_limits<double>::infinity();

    f.X = r.transpose() * w;
    f.Z = r.triangularView<Eigen::Upper>().solve(w);
    f.V = orthonormalize_columns(qthin.bottomRows(p) * w.leftCols(p));
    return f;
}

SvdFactors compute_svd(const Matrix& a) {
    if (a.rows() < 1 || a.cols() < 1) throw DimensionMismatch("compute_svd: empty matrix");
    if (!all_finite(a)) throw Error("compute_svd: non-finite input");
    Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) throw DecompositionFailure("compute_svd: SVD failed");
    SvdFactors f;
    f.m = a.rows();
    f.n = a.cols();
    f.U = svd.matrixU();
    f.V = svd.matrixV();
    f.sigma = svd.singularValues();
    return f;
}

SpectralCoefficients spectral_coefficients(const GsvdFactors& f, const Vector& rt) {
    if (rt.size() != f.m) throw DimensionMismatch("spectral_coefficients: data length != m");
    SpectralCoefficients c;
    c.s = f.U.transpose() * rt;
    c.rnorm2 = rt.squaredNorm();
    return c;
}

SpectralCoefficients spectral_coefficients(const SvdFactors& f, const Vector& rt) {
    if (rt.size() != f.m) throw DimensionMismatch("spectral_coefficients: data length != m");
    const Index k = std::min(f.m, f.n);
    SpectralCoefficients c;
    c.s.resize(k);
    for (Index j = 0; j < k; ++j) c.s(j) = f.U.col(k - 1 - j).dot(rt);
    c.rnorm2 = rt.squaredNorm();
    return c;
}

namespace {

Vector band_filter(const Vector& gamma, Index total, double sigmaL, Index r) {
    const Index band = gamma.size();
    if (sigmaL <= 0.0) throw Error("filter_factors: sigmaL must be positive");
    if (r < 0 || r > band) throw InvalidTruncation("filter_factors: truncation exceeds band size");
    Vector f = Vector::Ones(total);
    for (Index j = 0; j < band - r; ++j) f(j) = 0.0;
    for (Index j = band - r; j < band; ++j) {
        const double g2s2 = gamma(j) * sigmaL * gamma(j) * sigmaL;
        f(j) = g2s2 / (g2s2 + 1.0);
    }
    return f;
}

}  // namespace

Vector filter_factors(const GsvdFactors& f, double sigmaL, Index r) {
    return band_filter(f.gamma.segment(f.q, f.band_size()), f.m, sigmaL, r);
}

Vector filter_factors(const SvdFactors& f, double sigmaL, Index r) {
    const Index k = std::min(f.m, f.n);
    Vector asc(k);
    for (Index j = 0; j < k; ++j) asc(j) = f.sigma(k - 1 - j);
    return band_filter(asc, k, sigmaL, r);
}

double BandSpectrum::tail_energy() const {
    if (m <= n) return 0.0;
    return std::max(0.0, rnorm2 - s_band.squaredNorm() - s_pass.squaredNorm());
}

BandSpectrum make_band(const GsvdFactors& f, const SpectralCoefficients& c) {
    if (c.s.size() != f.m) throw DimensionMismatch("make_band: coefficients misaligned");
    BandSpectrum b;
    b.m = f.m;
    b.n = f.n;
    b.p = f.p;
    b.q = f.q;
    b.gamma = f.gamma.segment(f.q, f.band_size());
    b.s_band = c.s.head(f.band_size());
    b.s_pass = c.s.tail(f.m - f.band_size());
    b.rnorm2 = c.rnorm2;
    return b;
}

BandSpectrum make_band(const SvdFactors& f, const SpectralCoefficients& c) {
    const Index k = std::min(f.m, f.n);
    if (c.s.size() != k) throw DimensionMismatch("make_band: coefficients misaligned");
    BandSpectrum b;
    b.m = f.m;
    b.n = f.n;
    b.p = f.n;
    b.q = f.n - k;
    b.gamma.resize(k);
    for (Index j = 0; j < k; ++j) b.gamma(j) = f.sigma(k - 1 - j);
    b.s_band = c.s;
    b.s_pass.resize(0);
    b.rnorm2 = c.rnorm2;
    return b;
}

GsvdFactors reweight_data(const GsvdFactors& f, double c) {
    if (!(c > 0.0)) throw Error("reweight_data: weight must be positive");
    GsvdFactors g = f;
    for (Index i = 0; i < f.n; ++i) {
        const double nu = (i < f.q) ? 0.0 : f.nu(i - f.q);
        const double mu = (i < f.p) ? f.mu(i) : 0.0;
        const double h = std::hypot(c * nu, mu);
        if (i >= f.q) g.nu(i - f.q) = c * nu / h;
        if (i < f.p) g.mu(i) = mu / h;
        g.X.col(i) *= h;
        g.Z.col(i) /= h;
        if (i >= f.q && i < f.p) g.gamma(i) = g.nu(i - f.q) / g.mu(i);
    }
    return g;
}

SvdFactors reweight_data(const SvdFactors& f, double c) {
    if (!(c > 0.0)) throw Error("reweight_data: weight must be positive");
    SvdFactors g = f;
    g.sigma *= c;
    return g;
}

}  // namespace tikreg

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tikreg/tikhonov.hpp"

namespace tikreg {

struct StationInsideCell : Error {
    using Error::Error;
};

// Subsurface discretization for the 2D gravity problem: a single row of
// surface stations above a regular grid of cells. Cell j = row * n_cols + col
// with row 0 the shallowest layer; densities are in g/cm^3.
struct Grid2D {
    Index n_cols = 0;
    Index n_rows = 0;
    double cell_width = 0.0;   // meters
    double cell_height = 0.0;  // meters
    std::vector<double> station_x;  // meters at the surface z = 0, strictly increasing

    Index cells() const { return n_cols * n_rows; }
    Index stations() const { return static_cast<Index>(station_x.size()); }
    double cell_x_left(Index col) const { return static_cast<double>(col) * cell_width; }
    double cell_z_top(Index row) const { return static_cast<double>(row) * cell_height; }
    double cell_depth(Index j) const {  // cell-center depth
        return cell_z_top(j / n_cols) + 0.5 * cell_height;
    }
    void validate() const;
};

// 50 stations at cell centers over 50 x 5 square cells of 10 m.
Grid2D default_gravity2d_grid();

// Rectangular unit-density body (60 m x 30 m) against a zero background.
Vector gravity2d_model(const Grid2D& grid);

struct NoiseSpec {
    enum class Kind { uniform_max, mixed };
    Kind kind = Kind::uniform_max;
    double eta = 0.0;                  // uniform-max level
    double eta1 = 0.0, eta2 = 0.0;     // mixed levels
    std::uint64_t seed = 0;
    int copies = 1;
};

struct NoisyEnsemble {
    std::vector<Vector> copies;
    Vector wd;  // diagonal data weighting implied by the noise model
};

// 1D gravity surveying convolution on [0,1] with midpoint quadrature; the
// kernel is depth * (depth^2 + (s-t)^2)^(-3/2). The inverse_depth_scaling
// flag switches the leading factor to 1/depth.
ProblemInstance gravity1d(Index n, double depth = 0.75, bool inverse_depth_scaling = false);
double gravity1d_kernel(double s, double t, double depth, bool inverse_depth_scaling = false);

Vector downsample_stride(const Vector& d, Index stride);
Matrix downsample_stride_rows(const Matrix& a, Index stride);
Vector downsample_prefix(const Vector& d, Index count);
Matrix downsample_prefix_rows(const Matrix& a, Index count);

struct TomoPhantom {
    double a1 = 1.0, x1 = 0.35, y1 = 0.60, w1 = 0.12;
    double a2 = 0.6, x2 = 0.70, y2 = 0.30, w2 = 0.08;
    double value(double x, double y) const;
};

// Random straight rays through an n_side x n_side unit square; each row of G
// holds the exact intersection lengths with the traversed cells.
ProblemInstance tomo(Index n_side, Index m_rays, std::uint64_t seed,
                     const TomoPhantom& phantom = {});

// Vertical gravity (mGal) at the origin station from a prism of unit density
// contrast (1 g/cm^3) with corner offsets x1 < x2 (horizontal) and
// 0 <= z1 < z2 (depth), all in meters.
double prism_gravity(double x1, double x2, double z1, double z2);

// Forward operator: entry (i, j) is the response at station i to unit
// density in cell j. The serial twin is the reference the tests compare
// against.
Matrix gravity2d_forward(const Grid2D& grid);
Matrix gravity2d_forward_serial(const Grid2D& grid);

// order 0 -> identity, 1 -> forward differences, 2 -> second differences.
Matrix derivative_operator(Index n, int order);

NoisyEnsemble add_noise_uniform(const Vector& d, double eta, std::uint64_t seed, int copies);
NoisyEnsemble add_noise_mixed(const Vector& d, double eta1, double eta2, std::uint64_t seed,
                              int copies);

// Directory bundle: G.mtx, m_exact.csv, d_clean.csv, d_noisy_<c>.csv, wd.csv
// and a flat key-value meta file.
void write_bundle(const std::string& dir, const ProblemInstance& p,
                  const std::vector<Vector>& noisy_copies,
                  const std::map<std::string, std::string>& meta);
ProblemInstance read_bundle(const std::string& dir);

}  // namespace tikreg

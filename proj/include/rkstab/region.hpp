#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "rkstab/polynomial.hpp"
#include "rkstab/stability.hpp"
#include "rkstab/tableau.hpp"

namespace rkstab {

/// Rectangular complex-plane window with an inclusive node grid.
struct ComplexWindow {
  double re_min = -6.0;
  double re_max = 2.0;
  double im_min = -4.0;
  double im_max = 4.0;
  int nx = 801;
  int ny = 801;
};

void validate(const ComplexWindow& w);

/// Node coordinate lo + idx*(hi-lo)/(n-1), computed in the affine form
/// (lo*(n-1-idx) + hi*idx)/(n-1) so that symmetric windows produce exactly
/// mirrored nodes and a doubled grid reproduces the coarse nodes exactly.
double grid_coord(double lo, double hi, int n, int idx);
Complex window_node(const ComplexWindow& w, int ix, int iy);

/// Region of absolute stability |p(z)| <= 1 sampled on a window grid, plus
/// boundary polylines extracted by marching squares on |p(z)| - 1 with a
/// per-vertex bisection refinement to | |p| - 1 | <= tol::boundary.
struct StabilityRegion {
  ComplexWindow window;
  std::vector<double> modulus;  // |p(z)| per node, row-major over (ix, iy)
  std::vector<std::uint8_t> inside;
  std::vector<std::vector<Complex>> boundary;

  double modulus_at(int ix, int iy) const;
  bool inside_at(int ix, int iy) const;
};

/// Ties |p(z)| = 1 count as inside (the region is closed). A constant
/// polynomial p = [1] yields an all-inside grid with an empty boundary.
StabilityRegion scan(const Polynomial& p, const ComplexWindow& w);

/// Largest beta >= 0 with |p(x)| <= 1 for all x in [-beta, 0], located by
/// outward 0.1-stepping and bisection to 1e-8. Requires p(0) = 1.
double real_axis_limit(const Polynomial& p);

/// Largest beta >= 0 with |p(iy)| <= 1 for all y in [0, beta]; zero when the
/// polynomial leaves the region immediately above the origin.
double imag_axis_limit(const Polynomial& p);

/// Largest h >= 0 with |p(h*lambda)| <= 1 for every spectrum value, by
/// geometric bracket growth from h = 1 and bisection to relative 1e-8.
/// Spectrum values must have nonpositive real part.
double max_stable_step(const Polynomial& p, const std::vector<Complex>& spectrum);

/// Stable real-axis step per parallel flux sweep: real_axis_limit of the
/// scheme's stability polynomial divided by m+1 sweeps.
double sweep_efficiency(const PCScheme& scheme);

/// CSV grid dump: header re,im,abs_r,inside; one row per node, row-major;
/// floats with 17 significant digits.
void write_region_csv(const StabilityRegion& region, const std::filesystem::path& path);

/// CSV boundary dump: header polyline_id,re,im.
void write_boundary_csv(const StabilityRegion& region, const std::filesystem::path& path);

/// SVG boundary: one path per polyline, 1 user unit per axis unit, viewBox
/// matching the window (imaginary axis points up).
void write_region_svg(const StabilityRegion& region, const std::filesystem::path& path);

}  // namespace rkstab

#include "rkstab/region.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <limits>
#include <unordered_map>

#include "rkstab/tolerances.hpp"

namespace rkstab {

namespace {

constexpr double kAxisBisectTol = 1e-8;
constexpr double kStepOut = 0.1;
constexpr double kSearchCap = 1e5;

// Beyond this radius |p| > 1 holds for sure (Cauchy-style bound).
double crossing_bound(const Polynomial& p) {
  const auto& c = p.coeffs();
  const double lead = std::abs(c.back());
  double sum = 1.0;
  for (size_t k = 0; k + 1 < c.size(); ++k) sum += std::abs(c[k]);
  return std::max(1.0, sum / lead) + 1.0;
}

double require_unit_at_origin(const Polynomial& p, const char* who) {
  const double p0 = p.eval(0.0);
  if (std::abs(p0 - 1.0) > 1e-12)
    throw std::invalid_argument(std::string(who) + ": requires p(0) = 1");
  return p0;
}

}  // namespace

void validate(const ComplexWindow& w) {
  if (!(w.re_min < w.re_max) || !(w.im_min < w.im_max))
    throw ValidationError("window: re_min < re_max and im_min < im_max required");
  if (w.nx < 2 || w.ny < 2)
    throw ValidationError("window: grid resolution must be at least 2 x 2");
}

double grid_coord(double lo, double hi, int n, int idx) {
  return (lo * (n - 1 - idx) + hi * idx) / (n - 1);
}

Complex window_node(const ComplexWindow& w, int ix, int iy) {
  return {grid_coord(w.re_min, w.re_max, w.nx, ix),
          grid_coord(w.im_min, w.im_max, w.ny, iy)};
}

double StabilityRegion::modulus_at(int ix, int iy) const {
  return modulus[static_cast<size_t>(ix) * window.ny + iy];
}

bool StabilityRegion::inside_at(int ix, int iy) const {
  return inside[static_cast<size_t>(ix) * window.ny + iy] != 0;
}

namespace {

// Bisect |p| - 1 along the straight segment [za, zb] with f(za) <= 0 < f(zb);
// returns the inside-side point once | |p| - 1 | <= tol::boundary.
Complex refine_crossing(const Polynomial& p, Complex za, Complex zb, double fa) {
  for (int iter = 0; iter < 60; ++iter) {
    if (std::abs(fa) <= 0.5 * tol::boundary) break;
    const Complex zm = 0.5 * (za + zb);
    const double fm = std::abs(p.eval(zm)) - 1.0;
    if (fm <= 0.0) {
      za = zm;
      fa = fm;
    } else {
      zb = zm;
    }
  }
  return za;
}

struct BoundaryBuilder {
  const Polynomial& p;
  const StabilityRegion& region;
  std::unordered_map<std::uint64_t, int> edge_vertex;
  std::vector<Complex> vertices;
  std::vector<std::array<int, 2>> segments;

  BoundaryBuilder(const Polynomial& poly, const StabilityRegion& r) : p(poly), region(r) {}

  double field(int ix, int iy) const { return region.modulus_at(ix, iy) - 1.0; }

  // Crossing vertex on the edge from node (ix, iy) toward +re (horizontal)
  // or +im (vertical); cached so neighbouring cells share vertices exactly.
  int edge_point(int ix, int iy, bool horizontal) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(iy) * region.window.nx + ix) * 2 + (horizontal ? 1 : 0);
    const auto it = edge_vertex.find(key);
    if (it != edge_vertex.end()) return it->second;

    const int jx = horizontal ? ix + 1 : ix;
    const int jy = horizontal ? iy : iy + 1;
    Complex za = window_node(region.window, ix, iy);
    Complex zb = window_node(region.window, jx, jy);
    double fa = field(ix, iy);
    double fb = field(jx, jy);
    if (fa > 0.0) {
      std::swap(za, zb);
      std::swap(fa, fb);
    }
    const int id = static_cast<int>(vertices.size());
    vertices.push_back(refine_crossing(p, za, zb, fa));
    edge_vertex.emplace(key, id);
    return id;
  }

  void add_segment(int a, int b) { segments.push_back({a, b}); }

  void process_cell(int ix, int iy) {
    const bool in0 = region.inside_at(ix, iy);          // bottom-left
    const bool in1 = region.inside_at(ix + 1, iy);      // bottom-right
    const bool in2 = region.inside_at(ix + 1, iy + 1);  // top-right
    const bool in3 = region.inside_at(ix, iy + 1);      // top-left
    const int code = (in0 ? 1 : 0) | (in1 ? 2 : 0) | (in2 ? 4 : 0) | (in3 ? 8 : 0);
    if (code == 0 || code == 15) return;

    const auto bottom = [&] { return edge_point(ix, iy, true); };
    const auto top = [&] { return edge_point(ix, iy + 1, true); };
    const auto left = [&] { return edge_point(ix, iy, false); };
    const auto right = [&] { return edge_point(ix + 1, iy, false); };

    switch (code) {
      case 1:  add_segment(left(), bottom()); break;
      case 2:  add_segment(bottom(), right()); break;
      case 3:  add_segment(left(), right()); break;
      case 4:  add_segment(right(), top()); break;
      case 6:  add_segment(bottom(), top()); break;
      case 7:  add_segment(left(), top()); break;
      case 8:  add_segment(top(), left()); break;
      case 9:  add_segment(bottom(), top()); break;
      case 11: add_segment(right(), top()); break;
      case 12: add_segment(left(), right()); break;
      case 13: add_segment(bottom(), right()); break;
      case 14: add_segment(left(), bottom()); break;
      case 5:
      case 10: {
        // Saddle: resolve with the field value at the cell centre.
        const Complex centre = 0.25 * (window_node(region.window, ix, iy) +
                                       window_node(region.window, ix + 1, iy) +
                                       window_node(region.window, ix + 1, iy + 1) +
                                       window_node(region.window, ix, iy + 1));
        const bool centre_inside = std::abs(p.eval(centre)) <= 1.0;
        const bool diagonal_connected = (code == 5) == centre_inside;
        if (code == 5) {
          if (diagonal_connected) {
            add_segment(left(), top());
            add_segment(bottom(), right());
          } else {
            add_segment(left(), bottom());
            add_segment(right(), top());
          }
        } else {
          if (diagonal_connected) {
            add_segment(bottom(), right());
            add_segment(top(), left());
          } else {
            add_segment(left(), bottom());
            add_segment(right(), top());
          }
        }
        break;
      }
      default: break;
    }
  }

  std::vector<std::vector<Complex>> chain() const {
    std::vector<std::vector<int>> incident(vertices.size());
    for (size_t sid = 0; sid < segments.size(); ++sid) {
      incident[static_cast<size_t>(segments[sid][0])].push_back(static_cast<int>(sid));
      incident[static_cast<size_t>(segments[sid][1])].push_back(static_cast<int>(sid));
    }
    std::vector<char> used(segments.size(), 0);

    const auto take_next = [&](int vertex) -> int {
      for (int sid : incident[static_cast<size_t>(vertex)]) {
        if (used[static_cast<size_t>(sid)]) continue;
        used[static_cast<size_t>(sid)] = 1;
        return segments[static_cast<size_t>(sid)][0] == vertex
                   ? segments[static_cast<size_t>(sid)][1]
                   : segments[static_cast<size_t>(sid)][0];
      }
      return -1;
    };

    std::vector<std::vector<Complex>> polylines;
    for (size_t sid = 0; sid < segments.size(); ++sid) {
      if (used[sid]) continue;
      used[sid] = 1;
      std::deque<int> path{segments[sid][0], segments[sid][1]};
      while (true) {
        const int next = take_next(path.back());
        if (next < 0) break;
        path.push_back(next);
        if (next == path.front()) break;  // closed loop
      }
      if (path.front() != path.back()) {
        while (true) {
          const int next = take_next(path.front());
          if (next < 0) break;
          path.push_front(next);
        }
      }
      std::vector<Complex> line;
      line.reserve(path.size());
      for (int vid : path) line.push_back(vertices[static_cast<size_t>(vid)]);
      polylines.push_back(std::move(line));
    }
    return polylines;
  }
};

}  // namespace

StabilityRegion scan(const Polynomial& p, const ComplexWindow& w) {
  validate(w);
  StabilityRegion region;
  region.window = w;
  region.modulus.resize(static_cast<size_t>(w.nx) * w.ny);
  region.inside.resize(static_cast<size_t>(w.nx) * w.ny);

  // Pure per-node evaluation: any partition across workers would give
  // bit-identical results; evaluated sequentially here.
  for (int ix = 0; ix < w.nx; ++ix) {
    for (int iy = 0; iy < w.ny; ++iy) {
      const double m = std::abs(p.eval(window_node(w, ix, iy)));
      const size_t idx = static_cast<size_t>(ix) * w.ny + iy;
      region.modulus[idx] = m;
      region.inside[idx] = m <= 1.0 ? 1 : 0;
    }
  }

  BoundaryBuilder builder(p, region);
  for (int ix = 0; ix + 1 < w.nx; ++ix)
    for (int iy = 0; iy + 1 < w.ny; ++iy) builder.process_cell(ix, iy);
  region.boundary = builder.chain();
  return region;
}

namespace {

// Largest t >= 0 with |p(z(x))| <= 1 for all x in [0, t] along a parametrized
// ray, by outward stepping and bisection. Steps densely out to kSearchCap,
// then geometrically up to cap (beyond which |p| > 1 is guaranteed).
template <typename Eval>
double ray_limit(Eval&& modulus_minus_one, double step, double cap) {
  double stable = 0.0;
  double probe = step;
  while (modulus_minus_one(probe) <= 0.0) {
    stable = probe;
    if (probe > kSearchCap) step *= 2.0;
    probe += step;
    if (probe > cap) return std::numeric_limits<double>::infinity();
  }
  while (probe - stable > kAxisBisectTol) {
    const double mid = 0.5 * (stable + probe);
    if (mid <= stable || mid >= probe) break;
    if (modulus_minus_one(mid) <= 0.0)
      stable = mid;
    else
      probe = mid;
  }
  return stable;
}

}  // namespace

double real_axis_limit(const Polynomial& p) {
  require_unit_at_origin(p, "real_axis_limit");
  if (p.degree() < 1) return std::numeric_limits<double>::infinity();
  return ray_limit([&](double t) { return std::abs(p.eval(-t)) - 1.0; }, kStepOut,
                   crossing_bound(p));
}

double imag_axis_limit(const Polynomial& p) {
  require_unit_at_origin(p, "imag_axis_limit");
  if (p.degree() < 1) return std::numeric_limits<double>::infinity();
  return ray_limit([&](double t) { return std::abs(p.eval(Complex(0.0, t))) - 1.0; },
                   kStepOut, crossing_bound(p));
}

double max_stable_step(const Polynomial& p, const std::vector<Complex>& spectrum) {
  require_unit_at_origin(p, "max_stable_step");
  if (spectrum.empty()) throw ValidationError("max_stable_step: empty spectrum");
  for (Complex lambda : spectrum)
    if (lambda.real() > 0.0)
      throw ValidationError("max_stable_step: spectrum value with positive real part");

  const auto worst = [&](double h) {
    double value = -std::numeric_limits<double>::infinity();
    for (Complex lambda : spectrum)
      value = std::max(value, std::abs(p.eval(h * lambda)) - 1.0);
    return value;
  };

  double lo, hi;
  if (worst(1.0) <= 0.0) {
    lo = 1.0;
    hi = 2.0;
    while (worst(hi) <= 0.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e12) return std::numeric_limits<double>::infinity();
    }
  } else {
    hi = 1.0;
    lo = 0.5;
    while (worst(lo) > 0.0) {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-300) return 0.0;
    }
  }
  while (hi - lo > 1e-8 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (worst(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

double sweep_efficiency(const PCScheme& scheme) {
  validate(scheme);
  return real_axis_limit(pc_stability_polynomial(scheme)) / (scheme.corrections + 1);
}

void write_region_csv(const StabilityRegion& region, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write region file: " + path.string());
  out << "re,im,abs_r,inside\n";
  char line[128];
  for (int ix = 0; ix < region.window.nx; ++ix) {
    for (int iy = 0; iy < region.window.ny; ++iy) {
      const Complex z = window_node(region.window, ix, iy);
      std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%d\n", z.real(), z.imag(),
                    region.modulus_at(ix, iy), region.inside_at(ix, iy) ? 1 : 0);
      out << line;
    }
  }
}

void write_boundary_csv(const StabilityRegion& region, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write boundary file: " + path.string());
  out << "polyline_id,re,im\n";
  char line[96];
  for (size_t id = 0; id < region.boundary.size(); ++id) {
    for (Complex z : region.boundary[id]) {
      std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g\n", id, z.real(), z.imag());
      out << line;
    }
  }
}

void write_region_svg(const StabilityRegion& region, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write SVG file: " + path.string());
  const ComplexWindow& w = region.window;
  const double width = w.re_max - w.re_min;
  const double height = w.im_max - w.im_min;
  char buf[96];
  // SVG y points down, so plot (re, -im).
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"";
  std::snprintf(buf, sizeof(buf), "%.6g %.6g %.6g %.6g", w.re_min, -w.im_max, width, height);
  out << buf << "\">\n";
  for (const auto& line : region.boundary) {
    if (line.empty()) continue;
    out << "  <path fill=\"none\" stroke=\"black\" stroke-width=\"" << width * 0.004
        << "\" d=\"";
    const bool closed = line.size() > 2 && std::abs(line.front() - line.back()) == 0.0;
    const size_t count = closed ? line.size() - 1 : line.size();
    for (size_t i = 0; i < count; ++i) {
      std::snprintf(buf, sizeof(buf), "%c%.8g %.8g", i == 0 ? 'M' : 'L', line[i].real(),
                    -line[i].imag());
      out << (i == 0 ? "" : " ") << buf;
    }
    if (closed) out << " Z";
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace rkstab

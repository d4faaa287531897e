#pragma once

// Shared oracles and instance generators for the test suites. Oracles use
// direct definitions (pointwise maxima, quadrature, monotone chain, support
// functions) rather than the library's algorithms.

#include "probhull/dual_envelope.hpp"
#include "probhull/hull_pipeline.hpp"
#include "probhull/max1d.hpp"
#include "probhull/prob_model.hpp"
#include "probhull/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace testsupport
{
inline double UpperEnvelopeAt(std::span<probhull::DualLine const> lines, double x)
{
  double best = -std::numeric_limits<double>::infinity();
  for (auto const & l : lines) best = std::max(best, l.a * x + l.b);
  return best;
}

inline double LowerEnvelopeAt(std::span<probhull::DualLine const> lines, double x)
{
  double best = std::numeric_limits<double>::infinity();
  for (auto const & l : lines) best = std::min(best, l.a * x + l.b);
  return best;
}

inline double Cross(probhull::Point2 const & o, probhull::Point2 const & a,
                    probhull::Point2 const & b)
{
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline std::vector<int> SortedByXY(std::vector<probhull::Point2> const & pts)
{
  std::vector<int> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) {
    return pts[i].x != pts[j].x ? pts[i].x < pts[j].x : pts[i].y < pts[j].y;
  });
  return idx;
}

// Upper hull by increasing x, collinear mid-edge points dropped.
inline std::vector<int> UpperHullOracle(std::vector<probhull::Point2> const & pts)
{
  std::vector<int> h;
  for (int i : SortedByXY(pts)) {
    while (h.size() >= 2 && Cross(pts[h[h.size() - 2]], pts[h.back()], pts[i]) >= 0) h.pop_back();
    h.push_back(i);
  }
  return h;
}

inline std::vector<int> LowerHullOracle(std::vector<probhull::Point2> const & pts)
{
  std::vector<int> h;
  for (int i : SortedByXY(pts)) {
    while (h.size() >= 2 && Cross(pts[h[h.size() - 2]], pts[h.back()], pts[i]) <= 0) h.pop_back();
    h.push_back(i);
  }
  return h;
}

// CCW cycle starting at the lexicographically smallest point.
inline std::vector<int> HullOracle(std::vector<probhull::Point2> const & pts)
{
  if (pts.size() <= 1) return pts.empty() ? std::vector<int>{} : std::vector<int>{0};
  std::vector<int> const lower = LowerHullOracle(pts);
  std::vector<int> const upper = UpperHullOracle(pts);
  std::vector<int> cycle = lower;
  for (std::size_t k = upper.size() - 1; k-- > 1;) cycle.push_back(upper[k]);
  return cycle;
}

// Mass an isotropic normal puts on a centered disk, by midpoint quadrature on
// a sigma/200 grid.
inline double DiskMassOracle(double sigma, double radius)
{
  double const h = sigma / 200.0;
  int const m = static_cast<int>(std::ceil(radius / h));
  double const r2 = radius * radius;
  double const inv = 1.0 / (2.0 * sigma * sigma);
  double sum = 0.0;
  for (int i = -m; i < m; ++i) {
    double const x = (i + 0.5) * h;
    for (int j = -m; j < m; ++j) {
      double const y = (j + 0.5) * h;
      double const q = x * x + y * y;
      if (q <= r2) sum += std::exp(-q * inv);
    }
  }
  return sum * h * h * inv / std::numbers::pi;
}

// Simpson integration of the standard normal density.
inline double NormalCdfOracle(double z)
{
  double const a = std::abs(z);
  int const n = 4000;  // even
  double const h = a / n;
  auto density = [](double t) { return std::exp(-0.5 * t * t); };
  double s = density(0.0) + density(a);
  for (int k = 1; k < n; ++k) s += (k % 2 == 1 ? 4.0 : 2.0) * density(k * h);
  double const integral = s * h / 3.0 / std::sqrt(2.0 * std::numbers::pi);
  return z >= 0.0 ? 0.5 + integral : 0.5 - integral;
}

inline double PolygonArea(std::vector<probhull::Point2> const & poly)
{
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    auto const & a = poly[i];
    auto const & b = poly[(i + 1) % poly.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * std::abs(twice);
}

inline double PolygonPerimeter(std::vector<probhull::Point2> const & poly)
{
  if (poly.size() < 2) return 0.0;
  double p = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    p += probhull::Distance(poly[i], poly[(i + 1) % poly.size()]);
  return p;
}

inline double SegmentDistance(probhull::Point2 const & a, probhull::Point2 const & b,
                              probhull::Point2 const & q)
{
  double const ex = b.x - a.x;
  double const ey = b.y - a.y;
  double const len2 = ex * ex + ey * ey;
  double t = len2 > 0.0 ? ((q.x - a.x) * ex + (q.y - a.y) * ey) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(q.x - (a.x + t * ex), q.y - (a.y + t * ey));
}

inline bool PointInConvexPolygon(std::vector<probhull::Point2> const & poly,
                                 probhull::Point2 const & q)
{
  if (poly.size() < 3) return false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (Cross(poly[i], poly[(i + 1) % poly.size()], q) < 0.0) return false;
  }
  return true;
}

// Hull region of equal-radius disks is the Minkowski sum of the center hull
// with a disk: area and containment have simple closed forms.
inline double EqualRadiusAreaOracle(std::vector<probhull::Point2> const & hull_ccw, double r)
{
  return PolygonArea(hull_ccw) + PolygonPerimeter(hull_ccw) * r +
         std::numbers::pi * r * r;
}

inline bool EqualRadiusContainsOracle(std::vector<probhull::Point2> const & hull_ccw, double r,
                                      probhull::Point2 const & q)
{
  if (PointInConvexPolygon(hull_ccw, q)) return true;
  if (hull_ccw.size() == 1) return probhull::Distance(hull_ccw[0], q) <= r;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull_ccw.size(); ++i)
    best = std::min(best, SegmentDistance(hull_ccw[i], hull_ccw[(i + 1) % hull_ccw.size()], q));
  return best <= r;
}

// Signed margin of q against conv(disks) via the support function over a fine
// direction grid: negative inside, positive outside; |margin| below the grid's
// resolution is a boundary call.
inline double SupportMarginOracle(std::span<probhull::Disk const> disks,
                                  probhull::Point2 const & q, int dirs = 20000)
{
  double margin = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < dirs; ++k) {
    double const t = 2.0 * std::numbers::pi * k / dirs;
    double const ux = std::cos(t);
    double const uy = std::sin(t);
    double h = -std::numeric_limits<double>::infinity();
    for (auto const & d : disks) h = std::max(h, d.center.x * ux + d.center.y * uy + d.radius);
    margin = std::max(margin, q.x * ux + q.y * uy - h);
  }
  return margin;
}

// Dense polygonization of a hull region boundary (arcs subdivided), for
// area cross-checks independent of the circular-segment formula.
inline std::vector<probhull::Point2> PolygonizeRegion(probhull::HullRegion const & region,
                                                      int steps_per_turn = 16384)
{
  std::vector<probhull::Point2> out;
  for (auto const & e : region.elements) {
    if (auto const * arc = std::get_if<probhull::HullArc>(&e)) {
      auto const & d = region.disks[static_cast<std::size_t>(arc->disk)];
      double const span = arc->end_angle - arc->start_angle;
      int const m = std::max(2, static_cast<int>(span / (2.0 * std::numbers::pi) * steps_per_turn));
      for (int k = 0; k < m; ++k) {
        double const t = arc->start_angle + span * k / m;
        out.push_back({d.center.x + d.radius * std::cos(t), d.center.y + d.radius * std::sin(t)});
      }
      out.push_back({d.center.x + d.radius * std::cos(arc->end_angle),
                     d.center.y + d.radius * std::sin(arc->end_angle)});
    } else {
      out.push_back(std::get<probhull::HullSegment>(e).p1);
    }
  }
  return out;
}

// Random points with distinct x-coordinates (minimum gap enforced by retry).
inline std::vector<probhull::ProbPoint> RandomPoints(probhull::RandomStream & rs, int n,
                                                     double sigma_lo, double sigma_hi,
                                                     double span = 1.0, double x_gap = 1e-6)
{
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<probhull::ProbPoint> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      probhull::ProbPoint p;
      p.id = "p" + std::to_string(i);
      p.mean = {span * rs.NextUnit(), span * rs.NextUnit()};
      p.sigma = sigma_lo + (sigma_hi - sigma_lo) * rs.NextUnit();
      points.push_back(std::move(p));
    }
    std::vector<double> xs;
    for (auto const & p : points) xs.push_back(p.mean.x);
    std::sort(xs.begin(), xs.end());
    bool ok = true;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      if (xs[i + 1] - xs[i] < x_gap) ok = false;
    }
    if (ok) return points;
  }
  throw std::runtime_error("could not draw points with distinct x");
}

// Points whose beta disks are pairwise disjoint with a multiplicative margin.
inline std::vector<probhull::ProbPoint> SeparatedPoints(probhull::RandomStream & rs, int n,
                                                        probhull::Confidence phi, double span,
                                                        double sigma_lo, double sigma_hi,
                                                        double margin = 1.05)
{
  double const min_dist = 2.0 * probhull::BetaRadius(sigma_hi, phi) * margin;
  std::vector<probhull::ProbPoint> points;
  points.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 20000 && !placed; ++attempt) {
      probhull::Point2 const c{span * rs.NextUnit(), span * rs.NextUnit()};
      bool ok = true;
      for (auto const & p : points) {
        if (probhull::Distance(p.mean, c) < min_dist || std::abs(p.mean.x - c.x) < 1e-6) ok = false;
      }
      if (!ok) continue;
      probhull::ProbPoint p;
      p.id = "p" + std::to_string(i);
      p.mean = c;
      p.sigma = sigma_lo + (sigma_hi - sigma_lo) * rs.NextUnit();
      points.push_back(std::move(p));
      placed = true;
    }
    if (!placed) throw std::runtime_error("separated instance generator ran out of room");
  }
  return points;
}

// 1D values whose beta intervals are pairwise disjoint with a margin; the
// returned order is shuffled.
inline std::vector<probhull::Prob1D> SeparatedValues(probhull::RandomStream & rs, int n,
                                                     probhull::Confidence phi, double sigma_lo,
                                                     double sigma_hi, double margin = 1.05)
{
  std::vector<probhull::Prob1D> values;
  values.reserve(static_cast<std::size_t>(n));
  double mean = 0.0;
  double prev_hw = 0.0;
  for (int i = 0; i < n; ++i) {
    probhull::Prob1D v;
    v.id = "v" + std::to_string(i);
    v.sigma = sigma_lo + (sigma_hi - sigma_lo) * rs.NextUnit();
    double const hw = probhull::BetaHalfwidth(v.sigma, phi);
    mean += (prev_hw + hw) * margin * (1.0 + rs.NextUnit());
    v.mean = mean;
    prev_hw = hw;
    values.push_back(std::move(v));
  }
  for (std::size_t i = values.size(); i > 1; --i) {
    std::size_t const j = rs.NextU64() % i;
    std::swap(values[i - 1], values[j]);
  }
  return values;
}

// Random dual lines with distinct slopes (minimum gap enforced by retry).
inline std::vector<probhull::DualLine> RandomLines(probhull::RandomStream & rs, int n,
                                                  double slope_gap = 1e-6)
{
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<probhull::DualLine> lines;
    lines.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      lines.push_back({i, 2.0 * rs.NextUnit() - 1.0, 2.0 * rs.NextUnit() - 1.0});
    std::vector<double> slopes;
    for (auto const & l : lines) slopes.push_back(l.a);
    std::sort(slopes.begin(), slopes.end());
    bool ok = true;
    for (std::size_t i = 0; i + 1 < slopes.size(); ++i) {
      if (slopes[i + 1] - slopes[i] < slope_gap) ok = false;
    }
    if (ok) return lines;
  }
  throw std::runtime_error("could not draw lines with distinct slopes");
}

// Means of an instance, in index order.
inline std::vector<probhull::Point2> Means(std::span<probhull::ProbPoint const> points)
{
  std::vector<probhull::Point2> out;
  out.reserve(points.size());
  for (auto const & p : points) out.push_back(p.mean);
  return out;
}
}  // namespace testsupport

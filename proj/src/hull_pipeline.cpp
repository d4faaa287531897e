#include "probhull/hull_pipeline.hpp"

#include "probhull/certificates.hpp"
#include "probhull/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

namespace probhull
{
namespace
{
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Angular resolution of the sweep; transitions closer than this are treated as
// simultaneous.
constexpr double kAngleEps = 1e-12;

Point2 UnitDir(double theta)
{
  return {std::cos(theta), std::sin(theta)};
}

Point2 BoundaryPoint(Disk const & d, double theta)
{
  return d.center + d.radius * UnitDir(theta);
}

// Support value of the disk in direction theta: max over the disk of p . u(theta).
double Support(Disk const & d, double theta)
{
  Point2 const u = UnitDir(theta);
  return d.center.x * u.x + d.center.y * u.y + d.radius;
}

// d/dtheta of the support value.
double SupportSlope(Disk const & d, double theta)
{
  return -d.center.x * std::sin(theta) + d.center.y * std::cos(theta);
}

// When disks tie in support value and slope at one angle, their centers differ
// only along u(theta) and the larger disk dominates on both sides. Slopes are
// compared with a scaled tolerance: sin/cos of right angles are not exact, so
// symmetric configurations (equal-y centers, grids) produce slopes that differ
// from their true common value by a few ulps of the center magnitude.
bool Dominates(Disk const & a, Disk const & b, double theta)
{
  double const sa = SupportSlope(a, theta);
  double const sb = SupportSlope(b, theta);
  double const tie = kAngleEps * std::max({1.0, std::abs(a.center.x) + std::abs(a.center.y),
                                           std::abs(b.center.x) + std::abs(b.center.y)});
  if (std::abs(sa - sb) > tie) return sa > sb;
  return a.radius > b.radius;
}

// Supporter at theta0, picked so it keeps the max just after theta0 when
// several disks tie there. Support values tie with the same scaled tolerance
// as Dominates; an exact comparison would let rounding in cos(theta0) hide a
// crossing that happens exactly at theta0 and stall the sweep on one disk.
int StartSupporter(std::span<Disk const> disks, double theta0)
{
  int best = 0;
  for (int i = 1; i < static_cast<int>(disks.size()); ++i) {
    double const hb = Support(disks[best], theta0);
    double const hi = Support(disks[i], theta0);
    double const tie = kAngleEps * std::max({1.0, std::abs(hb), std::abs(hi)});
    if (hi > hb + tie || (hi >= hb - tie && Dominates(disks[i], disks[best], theta0))) best = i;
  }
  return best;
}

// Smallest angle strictly after theta_cur where disk j overtakes the current
// supporter s, or +inf when the pair never crosses transversally.
double OvertakeAngle(Disk const & s, Disk const & j, double theta_cur)
{
  double const ax = s.center.x - j.center.x;
  double const ay = s.center.y - j.center.y;
  double const c = j.radius - s.radius;
  double const r = std::hypot(ax, ay);
  // Support gap h_s - h_j = r cos(theta - phase) - c; |c| >= r means the gap
  // never changes sign (nested or identical disks).
  if (r < 1e-300 || r <= std::abs(c)) return std::numeric_limits<double>::infinity();
  double const phase = std::atan2(ay, ax);
  double const delta = std::acos(std::clamp(c / r, -1.0, 1.0));
  // The gap decreases through zero at phase + delta (the other root is j
  // handing the lead back).
  double ahead = std::remainder(phase + delta - theta_cur, kTwoPi);
  if (ahead <= kAngleEps) ahead += kTwoPi;
  return theta_cur + ahead;
}

bool InsidePolygon(std::vector<Point2> const & poly, Point2 const & q, double eps)
{
  if (poly.size() < 3) return false;
  std::size_t const m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    Point2 const & a = poly[i];
    Point2 const & b = poly[(i + 1) % m];
    double const ex = b.x - a.x;
    double const ey = b.y - a.y;
    double const len = std::hypot(ex, ey);
    if (len < 1e-300) continue;
    double const cross = ex * (q.y - a.y) - ey * (q.x - a.x);
    if (cross < -eps * len) return false;
  }
  return true;
}
}  // namespace

HullRegion DiskHullRegion(std::span<Disk const> disks, Tolerance tol)
{
  if (disks.empty()) throw ValidationError("disk hull needs at least one disk");
  for (Disk const & d : disks) {
    if (!(d.radius > 0.0)) throw ValidationError("disk hull needs positive radii");
  }

  HullRegion region;
  region.disks.assign(disks.begin(), disks.end());

  int const n = static_cast<int>(disks.size());
  double const theta0 = 0.5 * std::numbers::pi;
  double const theta_end = theta0 + kTwoPi;
  int const first = StartSupporter(disks, theta0);
  int cur = first;
  double theta_cur = theta0;

  int guard = 0;
  while (true) {
    if (++guard > 4 * n + 8) throw InconsistentContext("disk hull sweep failed to terminate");

    // Next disk to overtake the current supporter; simultaneous overtakes go
    // to whichever disk dominates just after the crossing.
    double best_t = std::numeric_limits<double>::infinity();
    int best_j = -1;
    for (int j = 0; j < n; ++j) {
      if (j == cur) continue;
      double const t = OvertakeAngle(disks[cur], disks[j], theta_cur);
      if (t >= theta_end - kAngleEps) continue;
      if (best_j < 0 || t < best_t - kAngleEps) {
        best_t = t;
        best_j = j;
      } else if (t <= best_t + kAngleEps && Dominates(disks[j], disks[best_j], best_t)) {
        best_j = j;
      }
    }

    double const arc_end = best_j < 0 ? theta_end : best_t;
    if (arc_end > theta_cur + kAngleEps) region.elements.push_back(HullArc{cur, theta_cur, arc_end});

    if (best_j < 0) {
      // Full turn completed; join back to the starting point if the supporter
      // changed exactly at theta0.
      Point2 const p_last = BoundaryPoint(disks[cur], theta_end);
      Point2 const p_first = BoundaryPoint(disks[first], theta0);
      if (Distance(p_last, p_first) > tol.eps)
        region.elements.push_back(HullSegment{cur, first, p_last, p_first});
      break;
    }

    Point2 const p0 = BoundaryPoint(disks[cur], best_t);
    Point2 const p1 = BoundaryPoint(disks[best_j], best_t);
    if (Distance(p0, p1) > tol.eps) region.elements.push_back(HullSegment{cur, best_j, p0, p1});
    cur = best_j;
    theta_cur = best_t;
  }

  // Arc endpoints in sweep order form a convex polygon; the region is that
  // polygon plus one circular segment per arc.
  for (RegionElement const & e : region.elements) {
    if (auto const * arc = std::get_if<HullArc>(&e)) {
      if (region.boundary_disks.empty() || region.boundary_disks.back() != arc->disk)
        region.boundary_disks.push_back(arc->disk);
      for (double t : {arc->start_angle, arc->end_angle}) {
        Point2 const p = BoundaryPoint(region.disks[arc->disk], t);
        if (region.polygon.empty() || Distance(region.polygon.back(), p) > tol.eps)
          region.polygon.push_back(p);
      }
    }
  }
  if (region.boundary_disks.size() > 1 && region.boundary_disks.front() == region.boundary_disks.back())
    region.boundary_disks.pop_back();
  if (region.polygon.size() > 1 && Distance(region.polygon.front(), region.polygon.back()) <= tol.eps)
    region.polygon.pop_back();

  return region;
}

bool RegionContains(HullRegion const & region, Point2 const & q, Tolerance tol)
{
  if (InsidePolygon(region.polygon, q, tol.eps)) return true;
  for (Disk const & d : region.disks) {
    if (Distance(q, d.center) <= d.radius + tol.eps) return true;
  }
  return false;
}

double RegionArea(HullRegion const & region)
{
  double twice_poly = 0.0;
  std::size_t const m = region.polygon.size();
  for (std::size_t i = 0; i < m; ++i) {
    Point2 const & a = region.polygon[i];
    Point2 const & b = region.polygon[(i + 1) % m];
    twice_poly += a.x * b.y - b.x * a.y;
  }
  double area = 0.5 * std::abs(twice_poly);
  for (RegionElement const & e : region.elements) {
    if (auto const * arc = std::get_if<HullArc>(&e)) {
      double const alpha = arc->end_angle - arc->start_angle;
      double const r = region.disks[arc->disk].radius;
      area += 0.5 * r * r * (alpha - std::sin(alpha));
    }
  }
  return area;
}

ExpectedHull BuildExpectedHull(std::span<ProbPoint const> points, Tolerance tol)
{
  if (points.empty()) throw ValidationError("hull needs at least one point");
  int const n = static_cast<int>(points.size());

  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    Point2 const & pa = points[a].mean;
    Point2 const & pb = points[b].mean;
    return pa.x != pb.x ? pa.x < pb.x : pa.y < pb.y;
  });
  for (int i = 0; i + 1 < n; ++i) {
    ProbPoint const & a = points[order[i]];
    ProbPoint const & b = points[order[i + 1]];
    if (std::abs(a.mean.x - b.mean.x) > tol.eps) continue;
    if (std::abs(a.mean.y - b.mean.y) <= tol.eps)
      throw DuplicateMeans("points " + a.id + " and " + b.id + " have coincident means");
    throw GeneralPositionViolation("points " + a.id + " and " + b.id +
                                   " share an x-coordinate (duals are parallel)");
  }

  std::vector<DualLine> duals;
  duals.reserve(points.size());
  for (int i = 0; i < n; ++i) duals.push_back(Dualize(points[i].mean, i));

  ExpectedHull eh;
  eh.upper = BuildEnvelope(duals, EnvelopeSide::Upper, tol);
  eh.lower = BuildEnvelope(duals, EnvelopeSide::Lower, tol);

  // Upper envelope left to right lists the upper hull by increasing x; the
  // lower envelope lists the lower hull by decreasing x. Chaining them walks
  // the hull clockwise.
  std::vector<int> cycle;
  std::vector<char> seen(points.size(), 0);
  auto push = [&](int s) {
    if (!seen[s]) {
      seen[s] = 1;
      cycle.push_back(s);
    }
  };
  for (DualLine const & l : eh.upper.RootChain().lines) push(l.source);
  auto const & lower_lines = eh.lower.RootChain().lines;
  for (std::size_t k = 1; k + 1 < lower_lines.size(); ++k) push(lower_lines[k].source);

  std::reverse(cycle.begin(), cycle.end());
  auto lex_min = std::min_element(cycle.begin(), cycle.end(), [&](int a, int b) {
    Point2 const & pa = points[a].mean;
    Point2 const & pb = points[b].mean;
    return pa.x != pb.x ? pa.x < pb.x : pa.y < pb.y;
  });
  std::rotate(cycle.begin(), lex_min, cycle.end());
  eh.hull_indices = std::move(cycle);
  return eh;
}

HullResult ProbabilisticHull(std::span<ProbPoint const> points, Confidence phi, Tolerance tol,
                             bool strict_beta)
{
  ExpectedHull eh = BuildExpectedHull(points, tol);

  HullResult result;
  result.phi = phi.phi;
  result.strict_beta = strict_beta;
  result.hull_indices = eh.hull_indices;
  result.hull_ids.reserve(eh.hull_indices.size());
  std::vector<Disk> disks;
  disks.reserve(eh.hull_indices.size());
  for (int i : eh.hull_indices) {
    result.hull_ids.push_back(points[i].id);
    disks.push_back(BetaRegion(points[i], phi));
  }
  result.region = DiskHullRegion(disks, tol);

  result.separation = SeparationAudit(points, phi);
  result.separation_warning = !result.separation.AllDisjoint();

  for (MergeTree const * tree : {&eh.upper, &eh.lower}) {
    for (MergeNode const & node : tree->nodes) {
      for (CertificateGroup const & g : node.groups) {
        ++result.total_groups;
        if (DiskCertified(g, points, phi, strict_beta)) ++result.disk_certified;
      }
    }
  }

  result.upper = std::move(eh.upper);
  result.lower = std::move(eh.lower);
  return result;
}
}  // namespace probhull

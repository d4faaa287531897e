#pragma once

#include "probhull/dual_envelope.hpp"
#include "probhull/prob_model.hpp"

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace probhull
{
// Boundary piece of a disk hull: the arc of disks[disk] swept CCW from
// start_angle to end_angle (end > start, up to a full turn). Angles are
// outward-normal directions; the boundary point at angle t is
// center + radius * (cos t, sin t).
struct HullArc
{
  int disk = -1;
  double start_angle = 0.0;
  double end_angle = 0.0;
};

// Outer common tangent between two consecutive boundary disks.
struct HullSegment
{
  int from_disk = -1;
  int to_disk = -1;
  Point2 p0;
  Point2 p1;
};

using RegionElement = std::variant<HullArc, HullSegment>;

// Convex hull of a set of disks: alternating arcs and tangent segments in CCW
// order. polygon caches the arc endpoints (CCW) for containment and area.
struct HullRegion
{
  std::vector<Disk> disks;
  std::vector<RegionElement> elements;
  std::vector<int> boundary_disks;
  std::vector<Point2> polygon;
};

HullRegion DiskHullRegion(std::span<Disk const> disks, Tolerance tol = {});

// Inside the polygon of arc endpoints, or within radius of a boundary disk's
// center (boundary counts as inside, within tol.eps).
bool RegionContains(HullRegion const & region, Point2 const & q, Tolerance tol = {});

// Polygon area of the arc endpoints plus circular segment areas.
double RegionArea(HullRegion const & region);

struct ExpectedHull
{
  std::vector<int> hull_indices;  // CCW, starting at the lexicographically smallest mean
  MergeTree upper;
  MergeTree lower;
};

// Convex hull of the means via both dual envelopes. Throws
// GeneralPositionViolation when two means share an x-coordinate within
// tolerance (which also covers duplicate points).
ExpectedHull BuildExpectedHull(std::span<ProbPoint const> points, Tolerance tol = {});

struct HullResult
{
  double phi = 0.0;  // validated at construction of the pipeline's Confidence
  bool strict_beta = false;
  std::vector<int> hull_indices;
  std::vector<std::string> hull_ids;
  HullRegion region;
  MergeTree upper;
  MergeTree lower;
  SeparationReport separation;        // advisory: the guarantees assume disjointness
  bool separation_warning = false;
  std::size_t total_groups = 0;
  std::size_t disk_certified = 0;     // groups certified by the conservative disk check
};

// Full pipeline: expected hull, beta disks of the hull points, their disk
// hull as the reported region, certificates from both merge trees, and the
// separation audit attached as a warning (never an error).
HullResult ProbabilisticHull(std::span<ProbPoint const> points, Confidence phi, Tolerance tol = {},
                             bool strict_beta = false);
}  // namespace probhull

#pragma once

#include "probhull/geometry.hpp"
#include "probhull/rng.hpp"

#include <span>
#include <string>
#include <vector>

namespace probhull
{
// Coverage level for boundary regions; must lie strictly inside (0, 1).
struct Confidence
{
  explicit Confidence(double p);

  double phi;
};

// Isotropic 2D normal: location ~ N(mean, sigma^2 * I).
struct ProbPoint
{
  std::string id;
  Point2 mean;
  double sigma = 1.0;
};

// 1D normal value.
struct Prob1D
{
  std::string id;
  double mean = 0.0;
  double sigma = 1.0;
};

struct Disk
{
  Point2 center;
  double radius = 0.0;
};

double NormalCdf(double z);

// Inverse of NormalCdf on (0, 1); accurate to ~1e-15 (rational estimate plus a
// Halley refinement step).
double NormalQuantile(double p);

// Radius of the smallest centered disk holding probability phi of an isotropic
// normal with scale sigma: sigma * sqrt(-2 ln(1 - phi)).
double BetaRadius(double sigma, Confidence phi);

// Smallest centered disk with mass phi.
Disk BetaRegion(ProbPoint const & p, Confidence phi);

// Half-width of the smallest centered interval with mass phi:
// sigma * NormalQuantile((1 + phi) / 2).
double BetaHalfwidth(double sigma, Confidence phi);

// Pr[P > Q] for independent 1D normals: Phi((mp - mq) / sqrt(sp^2 + sq^2)).
double ProbAbove1D(Prob1D const & p, Prob1D const & q);

// phi^(1/k): the coverage needed per point so that a k-participant assertion
// keeps total confidence phi under the conservative argument.
Confidence StrictConfidence(Confidence phi, int k);

struct SeparationReport
{
  struct Pair
  {
    std::string a;
    std::string b;
  };

  std::vector<Pair> intersecting;  // open-disk overlaps: distance < r_a + r_b
  std::size_t pair_count = 0;      // C(n, 2)
  double disjoint_fraction = 1.0;

  bool AllDisjoint() const { return intersecting.empty(); }
};

// Exact all-pairs disk overlap report, accelerated with a uniform grid so
// well-spread instances cost O(n) expected.
SeparationReport SeparationAudit(std::span<ProbPoint const> points, Confidence phi);

// 1D analogue over beta intervals.
SeparationReport SeparationAudit1D(std::span<Prob1D const> points, Confidence phi);

// One draw from the point's distribution, rejected until it falls within
// truncation * sigma of the mean (radial bound).
Point2 SampleLocation(ProbPoint const & p, double truncation, RandomStream & rs);

double SampleValue1D(Prob1D const & p, double truncation, RandomStream & rs);
}  // namespace probhull

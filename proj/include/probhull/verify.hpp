#pragma once

#include "probhull/hull_pipeline.hpp"
#include "probhull/max1d.hpp"
#include "probhull/prob_model.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace probhull
{
struct TrialConfig
{
  long trials = 1000;
  uint64_t seed = 0;
  double truncation = 5.0;  // rejection bound, in sigmas
};

// Gift-wrapped convex hull of plain points: CCW, starting at the
// lexicographically smallest point, without collinear mid-edge points.
std::vector<int> BruteForceHull(std::span<Point2 const> pts);

// One joint draw of every point's location. Per-point streams derive from
// (seed, trial, id), so a point's draw doesn't depend on the others.
std::vector<Point2> SampleConfiguration(std::span<ProbPoint const> points, uint64_t seed,
                                        long trial, double truncation);

struct RobustReport
{
  double phi = 0.0;
  long trials = 0;
  double mean_fraction = 0.0;
  double std_error = 0.0;  // of the mean fraction, across trials
  bool pass = false;       // mean_fraction >= phi - 3 * std_error
  std::vector<double> per_trial;
};

// Resamples every point per trial and scores the fraction landing inside the
// reported region.
RobustReport VerifyRobustHull(std::span<ProbPoint const> points, HullResult const & hull,
                              TrialConfig const & cfg);

// Resamples every heap value per trial and scores the fraction of
// parent/child certificates whose samples keep their order.
RobustReport VerifyHeap(CertifiedHeap const & heap, TrialConfig const & cfg);

struct ExclusionReport
{
  long trials = 0;
  // Per input point: fraction of trials where some group naming it as
  // excludable failed under the resampled locations.
  std::vector<double> exclusion_frequency;
  // Largest number of failing designated excluders any single point collected
  // at one envelope-tree level within one trial.
  int max_excluders_per_point_level = 0;
  // Failing-group exclusions not carried by the point's designated excluder.
  long unattributed_exclusions = 0;
  // Sampled locations of reported hull points that left the region.
  long hull_point_outside = 0;
  // Mean fraction of each trial's sampled-configuration hull that the
  // reported hull already lists.
  double mean_true_hull_overlap = 0.0;
};

// Re-evaluates every certificate group under resampled locations and
// attributes failures to the points they could exclude. Each point has one
// designated excluder per envelope tree: the group that hid its dual line, or
// failing that, its highest-level crossing group.
ExclusionReport ExclusionAudit(std::span<ProbPoint const> points, HullResult const & hull,
                               TrialConfig const & cfg);
}  // namespace probhull

#include "probhull/verify.hpp"

#include "probhull/certificates.hpp"
#include "probhull/errors.hpp"
#include "probhull/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace probhull
{
namespace
{
void FinishReport(RobustReport & report)
{
  double sum = 0.0;
  for (double f : report.per_trial) sum += f;
  report.mean_fraction = sum / static_cast<double>(report.trials);
  double ss = 0.0;
  for (double f : report.per_trial) {
    double const d = f - report.mean_fraction;
    ss += d * d;
  }
  report.std_error =
      report.trials > 1
          ? std::sqrt(ss / (static_cast<double>(report.trials) * (report.trials - 1.0)))
          : 0.0;
  report.pass = report.mean_fraction >= report.phi - 3.0 * report.std_error;
}

void RequireTrials(TrialConfig const & cfg)
{
  if (cfg.trials < 1) throw ValidationError("trial count must be at least 1");
  if (!(cfg.truncation > 0.0)) throw ValidationError("truncation must be positive");
}

// Designated excluder per point in one envelope tree: the tangent/diverging
// group that hid its dual line if there is one, otherwise its highest-level
// crossing group.
struct TreeAudit
{
  std::vector<CertificateGroup const *> groups;
  std::unordered_map<int, CertificateGroup const *> canonical;
};

TreeAudit PrepareTree(MergeTree const & tree)
{
  TreeAudit ta;
  for (MergeNode const & node : tree.nodes) {
    for (CertificateGroup const & g : node.groups) ta.groups.push_back(&g);
  }
  for (CertificateGroup const * g : ta.groups) {
    if (g->kind == GroupKind::ChainIntersection) continue;
    for (int e : g->excludable) ta.canonical.emplace(e, g);
  }
  for (CertificateGroup const * g : ta.groups) {
    if (g->kind != GroupKind::ChainIntersection) continue;
    for (int e : g->excludable) {
      auto [it, inserted] = ta.canonical.emplace(e, g);
      if (!inserted && it->second->kind == GroupKind::ChainIntersection &&
          g->level > it->second->level)
        it->second = g;
    }
  }
  return ta;
}
}  // namespace

std::vector<int> BruteForceHull(std::span<Point2 const> pts)
{
  int const n = static_cast<int>(pts.size());
  if (n == 0) return {};
  int start = 0;
  for (int i = 1; i < n; ++i) {
    if (pts[i].x < pts[start].x || (pts[i].x == pts[start].x && pts[i].y < pts[start].y))
      start = i;
  }
  std::vector<int> hull;
  int cur = start;
  do {
    hull.push_back(cur);
    if (static_cast<int>(hull.size()) > n) throw InconsistentContext("gift wrap failed to close");
    int next = -1;
    for (int j = 0; j < n; ++j) {
      if (j == cur) continue;
      if (next < 0) {
        next = j;
        continue;
      }
      double const c = CrossProduct(pts[cur], pts[next], pts[j]);
      if (c < 0.0 || (c == 0.0 && Distance(pts[cur], pts[j]) > Distance(pts[cur], pts[next])))
        next = j;
    }
    if (next < 0) break;
    cur = next;
  } while (cur != start);
  return hull;
}

std::vector<Point2> SampleConfiguration(std::span<ProbPoint const> points, uint64_t seed,
                                        long trial, double truncation)
{
  std::vector<Point2> out;
  out.reserve(points.size());
  for (ProbPoint const & p : points) {
    RandomStream rs(SubSeed(seed, static_cast<uint64_t>(trial), p.id));
    out.push_back(SampleLocation(p, truncation, rs));
  }
  return out;
}

RobustReport VerifyRobustHull(std::span<ProbPoint const> points, HullResult const & hull,
                              TrialConfig const & cfg)
{
  RequireTrials(cfg);
  if (points.empty()) throw ValidationError("verification needs at least one point");

  RobustReport report;
  report.phi = hull.phi;
  report.trials = cfg.trials;
  report.per_trial.reserve(static_cast<std::size_t>(cfg.trials));
  for (long t = 0; t < cfg.trials; ++t) {
    std::vector<Point2> const samples = SampleConfiguration(points, cfg.seed, t, cfg.truncation);
    long inside = 0;
    for (Point2 const & s : samples) {
      if (RegionContains(hull.region, s)) ++inside;
    }
    report.per_trial.push_back(static_cast<double>(inside) / static_cast<double>(samples.size()));
  }
  FinishReport(report);
  return report;
}

RobustReport VerifyHeap(CertifiedHeap const & heap, TrialConfig const & cfg)
{
  RequireTrials(cfg);
  RobustReport report;
  report.phi = heap.phi;
  report.trials = cfg.trials;
  report.per_trial.reserve(static_cast<std::size_t>(cfg.trials));
  std::vector<double> values(heap.nodes.size());
  for (long t = 0; t < cfg.trials; ++t) {
    for (std::size_t i = 0; i < heap.nodes.size(); ++i) {
      RandomStream rs(SubSeed(cfg.seed, static_cast<uint64_t>(t), heap.nodes[i].id));
      values[i] = SampleValue1D(heap.nodes[i], cfg.truncation, rs);
    }
    if (heap.certificates.empty()) {
      report.per_trial.push_back(1.0);
      continue;
    }
    long held = 0;
    for (HeapCertificate const & c : heap.certificates) {
      if (values[static_cast<std::size_t>(c.parent)] > values[static_cast<std::size_t>(c.child)])
        ++held;
    }
    report.per_trial.push_back(static_cast<double>(held) /
                               static_cast<double>(heap.certificates.size()));
  }
  FinishReport(report);
  return report;
}

ExclusionReport ExclusionAudit(std::span<ProbPoint const> points, HullResult const & hull,
                               TrialConfig const & cfg)
{
  RequireTrials(cfg);
  if (points.empty()) throw ValidationError("audit needs at least one point");

  ExclusionReport report;
  report.trials = cfg.trials;
  report.exclusion_frequency.assign(points.size(), 0.0);

  TreeAudit const audits[2] = {PrepareTree(hull.upper), PrepareTree(hull.lower)};
  std::vector<char> in_reported(points.size(), 0);
  for (int i : hull.hull_indices) in_reported[static_cast<std::size_t>(i)] = 1;

  double overlap_sum = 0.0;
  std::vector<Line2> lines(points.size());
  std::vector<char> excluded(points.size());
  for (long t = 0; t < cfg.trials; ++t) {
    std::vector<Point2> const samples = SampleConfiguration(points, cfg.seed, t, cfg.truncation);
    for (std::size_t i = 0; i < samples.size(); ++i) lines[i] = {samples[i].x, samples[i].y};
    std::fill(excluded.begin(), excluded.end(), 0);

    for (TreeAudit const & ta : audits) {
      std::unordered_map<int64_t, int> attributed;
      for (CertificateGroup const * g : ta.groups) {
        if (EvalGroup(*g, lines, 0.0)) continue;
        for (int e : g->excludable) {
          excluded[static_cast<std::size_t>(e)] = 1;
          auto it = ta.canonical.find(e);
          if (it != ta.canonical.end() && it->second == g) {
            int & count = attributed[(static_cast<int64_t>(e) << 8) | g->level];
            ++count;
            report.max_excluders_per_point_level =
                std::max(report.max_excluders_per_point_level, count);
          } else {
            ++report.unattributed_exclusions;
          }
        }
      }
    }

    for (std::size_t i = 0; i < points.size(); ++i) {
      if (excluded[i]) report.exclusion_frequency[i] += 1.0;
    }

    std::vector<int> const true_hull = BruteForceHull(samples);
    long shared = 0;
    for (int s : true_hull) {
      if (in_reported[static_cast<std::size_t>(s)]) ++shared;
    }
    overlap_sum += static_cast<double>(shared) / static_cast<double>(true_hull.size());

    for (int i : hull.hull_indices) {
      if (!RegionContains(hull.region, samples[static_cast<std::size_t>(i)]))
        ++report.hull_point_outside;
    }
  }

  for (double & f : report.exclusion_frequency) f /= static_cast<double>(cfg.trials);
  report.mean_true_hull_overlap = overlap_sum / static_cast<double>(cfg.trials);
  return report;
}
}  // namespace probhull

#include "probhull/errors.hpp"
#include "probhull/io.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace
{
struct Opts
{
  std::string input;  // empty = stdin
  double phi = 0.95;
  double tol = 1e-9;
  bool json = false;
  bool strict_beta = false;
  bool one_d = false;
  std::string svg;
  long trials = 1000;
  uint64_t seed = 0;
  double truncation = 5.0;
};

void AddCommonOpts(CLI::App * cmd, Opts & o)
{
  cmd->add_option("-i,--input", o.input, "input file (JSON Lines), default stdin");
  cmd->add_option("--phi", o.phi, "confidence level, in (0,1)")->capture_default_str();
  cmd->add_option("--tol", o.tol, "degeneracy tolerance")->capture_default_str();
  cmd->add_flag("--json", o.json, "emit a JSON document instead of a text summary");
}

void AddTrialOpts(CLI::App * cmd, Opts & o)
{
  cmd->add_option("--trials", o.trials, "number of resampled trials")->capture_default_str();
  cmd->add_option("--seed", o.seed, "random seed")->capture_default_str();
  cmd->add_option("--truncation", o.truncation, "rejection bound in sigmas")
      ->capture_default_str();
}

std::vector<probhull::ProbPoint> LoadPoints(std::string const & path)
{
  if (path.empty()) return probhull::ParsePoints(std::cin);
  std::ifstream f(path);
  if (!f) throw probhull::ValidationError("cannot open input file: " + path);
  return probhull::ParsePoints(f);
}

std::vector<probhull::Prob1D> LoadValues(std::string const & path)
{
  if (path.empty()) return probhull::ParseValues1D(std::cin);
  std::ifstream f(path);
  if (!f) throw probhull::ValidationError("cannot open input file: " + path);
  return probhull::ParseValues1D(f);
}

probhull::HullResult ComputeHull(Opts const & o, std::vector<probhull::ProbPoint> const & points)
{
  return probhull::ProbabilisticHull(points, probhull::Confidence(o.phi),
                                     probhull::Tolerance{o.tol}, o.strict_beta);
}

void MaybeSvg(Opts const & o, std::vector<probhull::ProbPoint> const & points,
              probhull::HullResult const & hull)
{
  if (o.svg.empty()) return;
  std::ofstream f(o.svg);
  if (!f) throw probhull::ValidationError("cannot open svg output file: " + o.svg);
  probhull::EmitSvg(f, points, hull);
}

int RunHull(Opts const & o)
{
  auto const points = LoadPoints(o.input);
  auto const hull = ComputeHull(o, points);
  MaybeSvg(o, points, hull);
  if (o.json) {
    std::cout << probhull::HullResultJson(points, hull);
    return 0;
  }
  std::cout << "hull (" << hull.hull_ids.size() << " of " << points.size() << " points):";
  for (auto const & id : hull.hull_ids) std::cout << ' ' << id;
  std::cout << '\n';
  std::cout << "region area: " << probhull::RegionArea(hull.region) << '\n';
  std::cout << "certificates: " << hull.total_groups << " groups, " << hull.disk_certified
            << " disk-certified\n";
  if (hull.separation_warning)
    std::cout << "warning: " << hull.separation.intersecting.size()
              << " beta disk pair(s) intersect; the coverage guarantee assumes disjoint disks\n";
  else
    std::cout << "separation: all beta disks disjoint\n";
  return 0;
}

int RunMax1D(Opts const & o)
{
  auto const values = LoadValues(o.input);
  auto const heap =
      probhull::BuildHeap(values, probhull::Confidence(o.phi), probhull::Tolerance{o.tol});
  if (o.json) {
    std::cout << probhull::HeapJson(heap);
    return 0;
  }
  std::cout << "max report: " << probhull::ReportMax(heap) << " (root " << heap.Root().id
            << ", phi " << o.phi << ")\n";
  std::cout << "certificates: " << heap.certificates.size() << '\n';
  return 0;
}

int RunEnvelope(Opts const & o)
{
  auto const points = LoadPoints(o.input);
  auto const hull = probhull::BuildExpectedHull(points, probhull::Tolerance{o.tol});
  if (o.json) {
    std::cout << probhull::EnvelopeJson(points, hull);
    return 0;
  }
  auto describe = [&](char const * name, probhull::MergeTree const & tree) {
    std::cout << name << " envelope:";
    for (auto const & l : tree.RootChain().lines) std::cout << ' ' << points[l.source].id;
    std::size_t groups = 0;
    for (auto const & node : tree.nodes) groups += node.groups.size();
    std::cout << "  (" << groups << " certificate groups)\n";
  };
  describe("upper", hull.upper);
  describe("lower", hull.lower);
  return 0;
}

int RunVerify(Opts const & o)
{
  probhull::TrialConfig const cfg{.trials = o.trials, .seed = o.seed, .truncation = o.truncation};
  probhull::RobustReport report;
  if (o.one_d) {
    auto const values = LoadValues(o.input);
    auto const heap =
        probhull::BuildHeap(values, probhull::Confidence(o.phi), probhull::Tolerance{o.tol});
    report = probhull::VerifyHeap(heap, cfg);
  } else {
    auto const points = LoadPoints(o.input);
    auto const hull = ComputeHull(o, points);
    MaybeSvg(o, points, hull);
    report = probhull::VerifyRobustHull(points, hull, cfg);
  }
  if (o.json) {
    std::cout << probhull::RobustReportJson(report);
  } else {
    std::cout << "mean fraction covered: " << report.mean_fraction << " (phi " << report.phi
              << ", " << report.trials << " trials, std error " << report.std_error << ")\n";
    std::cout << (report.pass ? "pass" : "FAIL") << ": mean fraction "
              << (report.pass ? ">=" : "<") << " phi - 3 * std_error\n";
  }
  return report.pass ? 0 : 3;
}

int RunAudit(Opts const & o)
{
  auto const points = LoadPoints(o.input);
  auto const hull = ComputeHull(o, points);
  probhull::TrialConfig const cfg{.trials = o.trials, .seed = o.seed, .truncation = o.truncation};
  auto const upper = probhull::AuditStructure(hull.upper);
  auto const lower = probhull::AuditStructure(hull.lower);
  auto const exclusion = probhull::ExclusionAudit(points, hull, cfg);
  if (o.json) {
    std::cout << probhull::AuditJson(points, hull, upper, lower, exclusion);
    return 0;
  }
  std::cout << "groups: " << upper.group_count << " upper, " << lower.group_count << " lower; "
            << "max participants per group: "
            << std::max(upper.max_participants_per_group, lower.max_participants_per_group)
            << '\n';
  std::cout << "max failing designated excluders per point and level: "
            << exclusion.max_excluders_per_point_level << '\n';
  std::cout << "unattributed exclusions: " << exclusion.unattributed_exclusions << '\n';
  std::cout << "sampled hull overlap with reported hull: " << exclusion.mean_true_hull_overlap
            << '\n';
  if (!hull.separation.AllDisjoint())
    std::cout << "warning: " << hull.separation.intersecting.size()
              << " beta disk pair(s) intersect\n";
  return 0;
}
}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"certified approximate convex hulls for points with Gaussian uncertainty"};
  app.require_subcommand(1);

  Opts o;
  int rc = 0;

  CLI::App * hull = app.add_subcommand("hull", "hull of the means plus a phi-coverage region");
  AddCommonOpts(hull, o);
  hull->add_flag("--strict-beta", o.strict_beta,
                 "per-group confidence phi^(1/k) for the conservative disk check");
  hull->add_option("--svg", o.svg, "write an SVG rendering to this file");
  hull->callback([&]() { rc = RunHull(o); });

  CLI::App * max1d = app.add_subcommand("max1d", "certified max-heap over 1D values");
  AddCommonOpts(max1d, o);
  max1d->callback([&]() { rc = RunMax1D(o); });

  CLI::App * envelope =
      app.add_subcommand("envelope", "dual envelopes with their certificate groups");
  AddCommonOpts(envelope, o);
  envelope->callback([&]() { rc = RunEnvelope(o); });

  CLI::App * verify =
      app.add_subcommand("verify", "resample the points and check the coverage claim");
  AddCommonOpts(verify, o);
  AddTrialOpts(verify, o);
  verify->add_flag("--one-d", o.one_d, "verify heap certificates over 1D values");
  verify->add_flag("--strict-beta", o.strict_beta,
                   "per-group confidence phi^(1/k) for the conservative disk check");
  verify->add_option("--svg", o.svg, "write an SVG rendering to this file");
  verify->callback([&]() { rc = RunVerify(o); });

  CLI::App * audit =
      app.add_subcommand("audit", "separation, structure, and exclusion attribution report");
  AddCommonOpts(audit, o);
  AddTrialOpts(audit, o);
  audit->callback([&]() { rc = RunAudit(o); });

  try {
    app.parse(argc, argv);
  } catch (CLI::Success const & e) {
    return app.exit(e);
  } catch (CLI::ParseError const & e) {
    app.exit(e);
    return 1;
  } catch (probhull::GeneralPositionViolation const & e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (probhull::Error const & e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (std::exception const & e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return rc;
}

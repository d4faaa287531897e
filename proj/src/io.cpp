#include "probhull/io.hpp"

#include "probhull/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <unordered_map>
#include <utility>

namespace probhull
{
namespace
{
using nlohmann::json;

bool Blank(std::string const & s)
{
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

json ParseLine(std::string const & text, int line)
{
  json obj = json::parse(text, nullptr, false);
  if (obj.is_discarded()) throw ParseError(line, "invalid JSON");
  if (!obj.is_object()) throw ParseError(line, "expected a JSON object");
  return obj;
}

std::string IdField(json const & obj, int line)
{
  auto it = obj.find("id");
  if (it == obj.end()) throw ParseError(line, "missing field \"id\"");
  if (!it->is_string()) throw ParseError(line, "field \"id\" must be a string");
  std::string s = it->get<std::string>();
  if (s.empty()) throw ParseError(line, "field \"id\" must be non-empty");
  return s;
}

double NumberField(json const & obj, char const * key, int line)
{
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(line, std::string("missing field \"") + key + "\"");
  if (!it->is_number()) throw ParseError(line, std::string("field \"") + key + "\" must be a number");
  double const v = it->get<double>();
  if (!std::isfinite(v)) throw ParseError(line, std::string("field \"") + key + "\" must be finite");
  return v;
}

void CheckSigma(double sigma, std::string const & id, int line)
{
  if (!(sigma > 0.0))
    throw ValidationError("line " + std::to_string(line) + ": " + id + " needs sigma > 0");
}

struct IdRegistry
{
  std::unordered_map<std::string, int> first_line;

  void Add(std::string const & id, int line)
  {
    auto [it, inserted] = first_line.emplace(id, line);
    if (!inserted)
      throw ValidationError("duplicate id \"" + id + "\" on lines " +
                            std::to_string(it->second) + " and " + std::to_string(line));
  }
};

json PointJson(Point2 const & p)
{
  return json::array({p.x, p.y});
}

json VertexJson(VertexRef const & v, std::span<ProbPoint const> pts)
{
  return json::array({pts[static_cast<std::size_t>(v.u)].id, pts[static_cast<std::size_t>(v.v)].id});
}

std::string const & Id(int line, std::span<ProbPoint const> pts)
{
  return pts[static_cast<std::size_t>(line)].id;
}

json AtomJson(CertificateAtom const & a, std::span<ProbPoint const> pts)
{
  switch (a.kind) {
    case AtomKind::XOrder:
      return {{"kind", "x_order"}, {"v1", VertexJson(a.v1, pts)}, {"v2", VertexJson(a.v2, pts)}};
    case AtomKind::YOrder:
      return {{"kind", "y_order"},
              {"vertex", VertexJson(a.v1, pts)},
              {"line", Id(a.line, pts)},
              {"vertex_below", a.vertex_below}};
    case AtomKind::SlopeOrder:
      return {{"kind", "slope_order"}, {"line", Id(a.line, pts)}, {"line2", Id(a.line2, pts)}};
  }
  return {};
}

char const * GroupKindName(GroupKind k)
{
  switch (k) {
    case GroupKind::Tangent: return "tangent";
    case GroupKind::ChainIntersection: return "chain_intersection";
    case GroupKind::Diverging: return "diverging";
  }
  return "unknown";
}

json GroupJson(CertificateGroup const & g, std::span<ProbPoint const> pts)
{
  json atoms = json::array();
  for (CertificateAtom const & a : g.atoms) atoms.push_back(AtomJson(a, pts));
  json participants = json::array();
  for (Participant const & p : g.participants)
    participants.push_back(
        {{"id", Id(p.line, pts)}, {"role", p.role == Role::AsLine ? "line" : "vertex"}});
  json excludable = json::array();
  for (int e : g.excludable) excludable.push_back(Id(e, pts));
  return {{"kind", GroupKindName(g.kind)},
          {"side", g.side == EnvelopeSide::Upper ? "upper" : "lower"},
          {"level", g.level},
          {"atoms", atoms},
          {"participants", participants},
          {"excludable", excludable}};
}

json TreeJson(MergeTree const & tree, std::span<ProbPoint const> pts)
{
  json order = json::array();
  for (DualLine const & l : tree.RootChain().lines) order.push_back(Id(l.source, pts));
  json breakpoints = json::array();
  for (Point2 const & b : tree.RootChain().breakpoints) breakpoints.push_back(PointJson(b));
  json groups = json::array();
  for (MergeNode const & node : tree.nodes) {
    for (CertificateGroup const & g : node.groups) groups.push_back(GroupJson(g, pts));
  }
  return {{"order", order}, {"breakpoints", breakpoints}, {"groups", groups}};
}

json RegionJson(HullRegion const & region, std::vector<std::string> const & disk_ids)
{
  json elements = json::array();
  for (RegionElement const & e : region.elements) {
    if (auto const * arc = std::get_if<HullArc>(&e)) {
      Disk const & d = region.disks[static_cast<std::size_t>(arc->disk)];
      elements.push_back({{"type", "arc"},
                          {"id", disk_ids[static_cast<std::size_t>(arc->disk)]},
                          {"center", PointJson(d.center)},
                          {"radius", d.radius},
                          {"start_angle", arc->start_angle},
                          {"end_angle", arc->end_angle}});
    } else {
      HullSegment const & s = std::get<HullSegment>(e);
      elements.push_back({{"type", "segment"},
                          {"from", disk_ids[static_cast<std::size_t>(s.from_disk)]},
                          {"to", disk_ids[static_cast<std::size_t>(s.to_disk)]},
                          {"p0", PointJson(s.p0)},
                          {"p1", PointJson(s.p1)}});
    }
  }
  return {{"area", RegionArea(region)}, {"elements", elements}};
}

json SeparationJson(SeparationReport const & sep)
{
  json intersecting = json::array();
  for (SeparationReport::Pair const & p : sep.intersecting)
    intersecting.push_back(json::array({p.a, p.b}));
  return {{"pair_count", sep.pair_count},
          {"disjoint_fraction", sep.disjoint_fraction},
          {"all_disjoint", sep.AllDisjoint()},
          {"intersecting", intersecting}};
}

json StructureJson(StructureAudit const & a)
{
  return {{"leaf_count", a.leaf_count},
          {"group_count", a.group_count},
          {"tangent", a.tangent},
          {"chain_intersection", a.chain_intersection},
          {"diverging", a.diverging},
          {"max_participants_per_group", a.max_participants_per_group},
          {"max_participation_per_line", a.max_participation_per_line},
          {"groups_per_nlogn", a.groups_per_nlogn},
          {"participation_per_logn", a.participation_per_logn}};
}

std::string Dump(json const & doc)
{
  return doc.dump(2) + "\n";
}
}  // namespace

std::vector<ProbPoint> ParsePoints(std::istream & in)
{
  std::vector<ProbPoint> points;
  IdRegistry ids;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (Blank(text)) continue;
    json const obj = ParseLine(text, line);
    ProbPoint p;
    p.id = IdField(obj, line);
    p.mean.x = NumberField(obj, "x", line);
    p.mean.y = NumberField(obj, "y", line);
    p.sigma = NumberField(obj, "sigma", line);
    CheckSigma(p.sigma, p.id, line);
    ids.Add(p.id, line);
    points.push_back(std::move(p));
  }
  if (points.empty()) throw ValidationError("input contains no points");
  return points;
}

std::vector<Prob1D> ParseValues1D(std::istream & in)
{
  std::vector<Prob1D> values;
  IdRegistry ids;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (Blank(text)) continue;
    json const obj = ParseLine(text, line);
    Prob1D v;
    v.id = IdField(obj, line);
    v.mean = NumberField(obj, "x", line);
    v.sigma = NumberField(obj, "sigma", line);
    CheckSigma(v.sigma, v.id, line);
    ids.Add(v.id, line);
    values.push_back(std::move(v));
  }
  if (values.empty()) throw ValidationError("input contains no values");
  return values;
}

void SerializePoints(std::ostream & out, std::span<ProbPoint const> points)
{
  for (ProbPoint const & p : points) {
    json const obj{{"id", p.id}, {"x", p.mean.x}, {"y", p.mean.y}, {"sigma", p.sigma}};
    out << obj.dump() << '\n';
  }
}

void SerializeValues1D(std::ostream & out, std::span<Prob1D const> values)
{
  for (Prob1D const & v : values) {
    json const obj{{"id", v.id}, {"x", v.mean}, {"sigma", v.sigma}};
    out << obj.dump() << '\n';
  }
}

std::string HullResultJson(std::span<ProbPoint const> points, HullResult const & hull)
{
  json hull_ids = json::array();
  for (std::string const & id : hull.hull_ids) hull_ids.push_back(id);
  json doc{{"schema", "probhull/1"},
           {"kind", "hull"},
           {"phi", hull.phi},
           {"strict_beta", hull.strict_beta},
           {"point_count", points.size()},
           {"hull", hull_ids},
           {"region", RegionJson(hull.region, hull.hull_ids)},
           {"certificates",
            {{"total", hull.total_groups}, {"disk_certified", hull.disk_certified}}},
           {"separation", SeparationJson(hull.separation)},
           {"separation_warning", hull.separation_warning}};
  return Dump(doc);
}

std::string EnvelopeJson(std::span<ProbPoint const> points, ExpectedHull const & hull)
{
  json hull_ids = json::array();
  for (int i : hull.hull_indices) hull_ids.push_back(Id(i, points));
  json doc{{"schema", "probhull/1"},
           {"kind", "envelope"},
           {"point_count", points.size()},
           {"hull", hull_ids},
           {"upper", TreeJson(hull.upper, points)},
           {"lower", TreeJson(hull.lower, points)}};
  return Dump(doc);
}

std::string HeapJson(CertifiedHeap const & heap)
{
  json order = json::array();
  for (Prob1D const & n : heap.nodes) order.push_back(n.id);
  json certificates = json::array();
  for (HeapCertificate const & c : heap.certificates)
    certificates.push_back({{"parent", heap.nodes[static_cast<std::size_t>(c.parent)].id},
                            {"child", heap.nodes[static_cast<std::size_t>(c.child)].id},
                            {"prob_parent_above", c.prob_parent_above}});
  json doc{{"schema", "probhull/1"},
           {"kind", "max1d"},
           {"phi", heap.phi},
           {"order", order},
           {"report_max", ReportMax(heap)},
           {"certificates", certificates}};
  return Dump(doc);
}

std::string RobustReportJson(RobustReport const & report)
{
  json doc{{"schema", "probhull/1"},
           {"kind", "verify"},
           {"phi", report.phi},
           {"trials", report.trials},
           {"mean_fraction", report.mean_fraction},
           {"std_error", report.std_error},
           {"threshold", report.phi - 3.0 * report.std_error},
           {"pass", report.pass}};
  return Dump(doc);
}

std::string AuditJson(std::span<ProbPoint const> points, HullResult const & hull,
                      StructureAudit const & upper, StructureAudit const & lower,
                      ExclusionReport const & exclusion)
{
  json frequency = json::object();
  for (std::size_t i = 0; i < points.size(); ++i)
    frequency[points[i].id] = exclusion.exclusion_frequency[i];
  json doc{{"schema", "probhull/1"},
           {"kind", "audit"},
           {"phi", hull.phi},
           {"separation", SeparationJson(hull.separation)},
           {"structure", {{"upper", StructureJson(upper)}, {"lower", StructureJson(lower)}}},
           {"exclusion",
            {{"trials", exclusion.trials},
             {"max_excluders_per_point_level", exclusion.max_excluders_per_point_level},
             {"unattributed_exclusions", exclusion.unattributed_exclusions},
             {"hull_point_outside", exclusion.hull_point_outside},
             {"mean_true_hull_overlap", exclusion.mean_true_hull_overlap},
             {"frequency", frequency}}}};
  return Dump(doc);
}

void EmitSvg(std::ostream & out, std::span<ProbPoint const> points, HullResult const & hull)
{
  double min_x = hull.region.disks.front().center.x;
  double max_x = min_x;
  double min_y = hull.region.disks.front().center.y;
  double max_y = min_y;
  auto stretch = [&](Point2 const & c, double r) {
    min_x = std::min(min_x, c.x - r);
    max_x = std::max(max_x, c.x + r);
    min_y = std::min(min_y, c.y - r);
    max_y = std::max(max_y, c.y + r);
  };
  for (ProbPoint const & p : points) stretch(p.mean, BetaRadius(p.sigma, Confidence(hull.phi)));
  for (Disk const & d : hull.region.disks) stretch(d.center, d.radius);

  double const margin = 0.05 * std::max({max_x - min_x, max_y - min_y, 1e-6});
  double const w = (max_x - min_x) + 2.0 * margin;
  double const h = (max_y - min_y) + 2.0 * margin;
  double const stroke = 0.004 * std::max(w, h);
  double const dot = 0.006 * std::max(w, h);

  out.precision(17);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << (min_x - margin) << " "
      << (-max_y - margin) << " " << w << " " << h << "\">\n";
  // Flip y so the world's y axis points up on screen.
  out << "<g transform=\"matrix(1 0 0 -1 0 0)\">\n";

  for (ProbPoint const & p : points) {
    out << "<circle cx=\"" << p.mean.x << "\" cy=\"" << p.mean.y << "\" r=\""
        << BetaRadius(p.sigma, Confidence(hull.phi))
        << "\" fill=\"#4477aa\" fill-opacity=\"0.15\" stroke=\"#4477aa\" stroke-opacity=\"0.4\" stroke-width=\""
        << 0.5 * stroke << "\"/>\n";
  }

  // Region boundary as one closed path; arcs spanning more than a half turn
  // are split so endpoints never coincide.
  out << "<path d=\"";
  bool first = true;
  auto move_or_line = [&](Point2 const & p) {
    if (first) {
      out << "M " << p.x << " " << p.y << " ";
      first = false;
    }
  };
  for (RegionElement const & e : hull.region.elements) {
    if (auto const * arc = std::get_if<HullArc>(&e)) {
      Disk const & d = hull.region.disks[static_cast<std::size_t>(arc->disk)];
      double const span = arc->end_angle - arc->start_angle;
      int const pieces = span > 0.75 * 2.0 * std::numbers::pi ? 2 : 1;
      Point2 const start{d.center.x + d.radius * std::cos(arc->start_angle),
                         d.center.y + d.radius * std::sin(arc->start_angle)};
      move_or_line(start);
      for (int k = 1; k <= pieces; ++k) {
        double const t = arc->start_angle + span * k / pieces;
        double const piece = span / pieces;
        Point2 const end{d.center.x + d.radius * std::cos(t),
                         d.center.y + d.radius * std::sin(t)};
        out << "A " << d.radius << " " << d.radius << " 0 " << (piece > std::numbers::pi ? 1 : 0)
            << " 1 " << end.x << " " << end.y << " ";
      }
    } else {
      HullSegment const & s = std::get<HullSegment>(e);
      move_or_line(s.p0);
      out << "L " << s.p1.x << " " << s.p1.y << " ";
    }
  }
  out << "Z\" fill=\"#ee6677\" fill-opacity=\"0.12\" stroke=\"#cc3311\" stroke-width=\"" << stroke
      << "\"/>\n";

  std::vector<char> on_hull(points.size(), 0);
  for (int i : hull.hull_indices) on_hull[static_cast<std::size_t>(i)] = 1;
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << "<circle cx=\"" << points[i].mean.x << "\" cy=\"" << points[i].mean.y << "\" r=\""
        << (on_hull[i] ? 1.4 * dot : dot) << "\" fill=\"" << (on_hull[i] ? "#cc3311" : "#222222")
        << "\"/>\n";
  }

  out << "</g>\n</svg>\n";
}
}  // namespace probhull

#include "probhull/certificates.hpp"

#include "probhull/dual_envelope.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace probhull
{
namespace
{
Line2 Resolve(int id, std::span<Line2 const> lines, EnvelopeSide side)
{
  if (id < 0 || static_cast<size_t>(id) >= lines.size())
    throw UnknownParticipant("line id " + std::to_string(id) + " outside instance");
  Line2 l = lines[static_cast<size_t>(id)];
  if (side == EnvelopeSide::Lower)
    return {-l.a, -l.b};
  return l;
}

// Vertex of two moving lines; near-parallel samples make the comparison
// meaningless, so the atom simply fails then (measure zero under resampling).
bool VertexOf(VertexRef const & v, std::span<Line2 const> lines, EnvelopeSide side, Point2 & out)
{
  Line2 const lu = Resolve(v.u, lines, side);
  Line2 const lv = Resolve(v.v, lines, side);
  double const da = lu.a - lv.a;
  if (std::fabs(da) < 1e-300)
    return false;
  double const x = (lv.b - lu.b) / da;
  out = {x, lu.Eval(x)};
  return true;
}
}  // namespace

bool EvalAtom(CertificateAtom const & atom, std::span<Line2 const> lines, EnvelopeSide side,
              double slack)
{
  switch (atom.kind)
  {
  case AtomKind::XOrder:
  {
    Point2 a, b;
    if (!VertexOf(atom.v1, lines, side, a) || !VertexOf(atom.v2, lines, side, b))
      return false;
    return a.x < b.x + slack;
  }
  case AtomKind::YOrder:
  {
    Point2 v;
    if (!VertexOf(atom.v1, lines, side, v))
      return false;
    double const d = v.y - Resolve(atom.line, lines, side).Eval(v.x);
    return atom.vertex_below ? d < slack : d > -slack;
  }
  case AtomKind::SlopeOrder:
    return Resolve(atom.line, lines, side).a <= Resolve(atom.line2, lines, side).a + slack;
  }
  return false;
}

bool EvalGroup(CertificateGroup const & g, std::span<Line2 const> lines, double slack)
{
  for (auto const & atom : g.atoms)
    if (!EvalAtom(atom, lines, g.side, slack))
      return false;
  return true;
}

namespace
{
void CheckAtCreation(CertificateGroup const & g, std::span<Line2 const> lines, Tolerance tol)
{
  // The constructors receive lines already reflected for lower-side merges, so
  // validate in upper space regardless of the recorded side.
  CertificateGroup upper = g;
  upper.side = EnvelopeSide::Upper;
  if (!EvalGroup(upper, lines, tol.eps))
    throw InconsistentContext("certificate context does not satisfy its asserted relations");
}
}  // namespace

CertificateGroup MakeTangentGroup(int hidden, int below_slope, int above_slope,
                                  std::span<Line2 const> lines, EnvelopeSide side, Tolerance tol)
{
  CertificateGroup g;
  g.kind = GroupKind::Tangent;
  g.side = side;

  CertificateAtom y;
  y.kind = AtomKind::YOrder;
  y.v1 = {below_slope, above_slope};
  y.line = hidden;
  y.vertex_below = false;  // the bracketing vertex sits above the hidden line
  g.atoms.push_back(y);

  CertificateAtom s1;
  s1.kind = AtomKind::SlopeOrder;
  s1.line = below_slope;
  s1.line2 = hidden;
  g.atoms.push_back(s1);

  CertificateAtom s2;
  s2.kind = AtomKind::SlopeOrder;
  s2.line = hidden;
  s2.line2 = above_slope;
  g.atoms.push_back(s2);

  g.participants = {{hidden, Role::AsLine}, {below_slope, Role::AsLine}, {above_slope, Role::AsLine}};
  g.excludable = {hidden};
  CheckAtCreation(g, lines, tol);
  return g;
}

CertificateGroup MakeDivergingGroup(int hidden, int witness, int co_vertex, bool hide_rightward,
                                    std::span<Line2 const> lines, EnvelopeSide side, Tolerance tol)
{
  CertificateGroup g;
  g.kind = GroupKind::Diverging;
  g.side = side;

  CertificateAtom y;
  y.kind = AtomKind::YOrder;
  y.v1 = {co_vertex, hidden};
  y.line = witness;
  y.vertex_below = true;
  g.atoms.push_back(y);

  // Slope direction makes the gap to the witness grow away from the vertex.
  CertificateAtom s;
  s.kind = AtomKind::SlopeOrder;
  s.line = hide_rightward ? hidden : witness;
  s.line2 = hide_rightward ? witness : hidden;
  g.atoms.push_back(s);

  g.participants = {{hidden, Role::AsLine}, {witness, Role::AsLine}, {co_vertex, Role::AsVertex}};
  g.excludable = {hidden};
  CheckAtCreation(g, lines, tol);
  return g;
}

CertificateGroup MakeIntersectionGroup(int left_winner, int right_winner, int q_prev, int p_next,
                                       std::span<Line2 const> lines, EnvelopeSide side,
                                       Tolerance tol)
{
  CertificateGroup g;
  g.kind = GroupKind::ChainIntersection;
  g.side = side;
  g.participants = {{left_winner, Role::AsLine}, {right_winner, Role::AsLine}};

  bool const left_vertex = q_prev >= 0;
  bool const right_vertex = p_next >= 0;

  if (left_vertex)
  {
    CertificateAtom y;
    y.kind = AtomKind::YOrder;
    y.v1 = {q_prev, right_winner};
    y.line = left_winner;
    y.vertex_below = true;
    g.atoms.push_back(y);
    g.participants.push_back({q_prev, Role::AsVertex});
  }
  if (right_vertex)
  {
    CertificateAtom y;
    y.kind = AtomKind::YOrder;
    y.v1 = {left_winner, p_next};
    y.line = right_winner;
    y.vertex_below = true;
    g.atoms.push_back(y);
    g.participants.push_back({p_next, Role::AsVertex});
  }

  if (left_vertex && right_vertex)
  {
    CertificateAtom x;
    x.kind = AtomKind::XOrder;
    x.v1 = {q_prev, right_winner};
    x.v2 = {left_winner, p_next};
    g.atoms.insert(g.atoms.begin(), x);
  }
  else
  {
    // Reduced boundary form: the crossing direction itself.
    CertificateAtom s;
    s.kind = AtomKind::SlopeOrder;
    s.line = left_winner;
    s.line2 = right_winner;
    g.atoms.push_back(s);
  }

  if (left_vertex)
    g.excludable.push_back(q_prev);
  if (right_vertex)
    g.excludable.push_back(p_next);
  CheckAtCreation(g, lines, tol);
  return g;
}

GroupEstimate EstimateGroupCorrectness(CertificateGroup const & g,
                                       std::span<ProbPoint const> points, long trials,
                                       uint64_t seed, double truncation)
{
  if (trials < 1)
    throw ValidationError("trials must be >= 1");
  for (auto const & p : g.participants)
    if (p.line < 0 || static_cast<size_t>(p.line) >= points.size())
      throw UnknownParticipant("participant id " + std::to_string(p.line) + " outside instance");

  std::vector<Line2> lines(points.size());
  long hits = 0;
  for (long t = 0; t < trials; ++t)
  {
    for (auto const & p : g.participants)
    {
      auto const & pt = points[static_cast<size_t>(p.line)];
      RandomStream rs(SubSeed(seed, static_cast<uint64_t>(t), pt.id));
      Point2 const loc = SampleLocation(pt, truncation, rs);
      lines[static_cast<size_t>(p.line)] = {loc.x, loc.y};
    }
    if (EvalGroup(g, lines, 0.0))
      ++hits;
  }

  GroupEstimate est;
  est.trials = trials;
  est.estimate = static_cast<double>(hits) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(trials));
  return est;
}

bool DiskCertified(CertificateGroup const & g, std::span<ProbPoint const> points, Confidence phi,
                   bool strict)
{
  Confidence level = strict ? StrictConfidence(phi, static_cast<int>(g.participants.size())) : phi;
  std::vector<Disk> disks;
  disks.reserve(g.participants.size());
  for (auto const & p : g.participants)
  {
    if (p.line < 0 || static_cast<size_t>(p.line) >= points.size())
      throw UnknownParticipant("participant id " + std::to_string(p.line) + " outside instance");
    disks.push_back(BetaRegion(points[static_cast<size_t>(p.line)], level));
  }
  for (size_t i = 0; i < disks.size(); ++i)
    for (size_t j = i + 1; j < disks.size(); ++j)
      if (Distance(disks[i].center, disks[j].center) < disks[i].radius + disks[j].radius)
        return false;

  std::vector<Line2> lines(points.size());
  for (auto const & p : g.participants)
  {
    auto const & pt = points[static_cast<size_t>(p.line)];
    lines[static_cast<size_t>(p.line)] = {pt.mean.x, pt.mean.y};
  }
  return EvalGroup(g, lines, 0.0);
}

StructureAudit AuditStructure(MergeTree const & mt)
{
  StructureAudit a;
  a.leaf_count = mt.leaf_count;
  std::unordered_map<int, int> per_line;
  for (auto const & node : mt.nodes)
  {
    for (auto const & g : node.groups)
    {
      ++a.group_count;
      switch (g.kind)
      {
      case GroupKind::Tangent: ++a.tangent; break;
      case GroupKind::ChainIntersection: ++a.chain_intersection; break;
      case GroupKind::Diverging: ++a.diverging; break;
      }
      a.max_participants_per_group =
          std::max(a.max_participants_per_group, static_cast<int>(g.participants.size()));
      for (auto const & p : g.participants)
        a.max_participation_per_line = std::max(a.max_participation_per_line, ++per_line[p.line]);
    }
  }
  double const n = static_cast<double>(std::max<std::size_t>(a.leaf_count, 2));
  double const logn = std::log2(n);
  a.groups_per_nlogn = static_cast<double>(a.group_count) / (n * logn);
  a.participation_per_logn = static_cast<double>(a.max_participation_per_line) / logn;
  return a;
}
}  // namespace probhull

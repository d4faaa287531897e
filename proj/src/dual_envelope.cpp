#include "probhull/dual_envelope.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <unordered_map>
#include <unordered_set>

namespace probhull
{
DualLine Dualize(Point2 const & p, int source)
{
  return {source, p.x, p.y};
}

size_t EnvelopeChain::IndexRightOf(double x) const
{
  size_t lo = 0, hi = breakpoints.size();
  while (lo < hi)
  {
    size_t const mid = (lo + hi) / 2;
    if (breakpoints[mid].x <= x)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

size_t EnvelopeChain::IndexLeftOf(double x) const
{
  size_t lo = 0, hi = breakpoints.size();
  while (lo < hi)
  {
    size_t const mid = (lo + hi) / 2;
    if (breakpoints[mid].x < x)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

double EnvelopeChain::Eval(double x) const
{
  return lines[IndexRightOf(x)].AsLine().Eval(x);
}

EnvelopeChain SingleLineChain(DualLine const & l)
{
  EnvelopeChain c;
  c.lines.push_back(l);
  return c;
}

void ValidateChain(EnvelopeChain const & chain, EnvelopeSide side, Tolerance tol)
{
  if (chain.lines.empty())
    throw MalformedChain("chain has no lines");
  if (chain.breakpoints.size() + 1 != chain.lines.size())
    throw MalformedChain("chain must have exactly one breakpoint between adjacent lines");

  double const dir = side == EnvelopeSide::Upper ? 1.0 : -1.0;
  for (size_t i = 0; i + 1 < chain.lines.size(); ++i)
  {
    double const gap = dir * (chain.lines[i + 1].a - chain.lines[i].a);
    if (std::fabs(gap) <= tol.eps)
      throw ParallelLines("adjacent chain lines have slope gap within tolerance");
    if (gap < 0.0)
      throw MalformedChain("chain slopes out of order");

    Point2 const p =
        LineIntersection(chain.lines[i].AsLine(), chain.lines[i + 1].AsLine(), tol);
    double const band = tol.eps * std::max(1.0, std::fabs(p.x));
    if (std::fabs(p.x - chain.breakpoints[i].x) > band ||
        std::fabs(p.y - chain.breakpoints[i].y) > tol.eps * std::max(1.0, std::fabs(p.y)))
      throw MalformedChain("breakpoint is not the intersection of its adjacent lines");
    if (i > 0 && chain.breakpoints[i].x < chain.breakpoints[i - 1].x - tol.eps)
      throw MalformedChain("breakpoints out of x order");
  }
}

namespace
{
double IntersectX(DualLine const & u, DualLine const & w)
{
  return (u.b - w.b) / (w.a - u.a);
}

EnvelopeChain ReflectChain(EnvelopeChain c)
{
  for (auto & l : c.lines)
  {
    l.a = -l.a;
    l.b = -l.b;
  }
  for (auto & p : c.breakpoints)
    p.y = -p.y;
  return c;
}

// Upper envelope of slope-sorted lines via a stack scan. Lines concurrent
// within tolerance are kept (zero-length ownership) rather than pruned.
EnvelopeChain StackEnvelope(std::vector<DualLine> const & sorted, Tolerance tol)
{
  EnvelopeChain out;
  auto & st = out.lines;
  for (auto const & l : sorted)
  {
    while (st.size() >= 2)
    {
      DualLine const & c = st[st.size() - 1];
      DualLine const & a = st[st.size() - 2];
      if (IntersectX(a, c) > IntersectX(c, l) + tol.eps)
        st.pop_back();
      else
        break;
    }
    st.push_back(l);
  }
  out.breakpoints.reserve(st.size() - 1);
  for (size_t i = 0; i + 1 < st.size(); ++i)
    out.breakpoints.push_back(LineIntersection(st[i].AsLine(), st[i + 1].AsLine(), tol));
  return out;
}

struct ChainPos
{
  bool in_red = false;
  size_t index = 0;
};

// Certificates for one merge, derived from the merged chain against the two
// input chains. All asserted relations are true at creation by construction;
// CheckAtCreation in the group constructors is the safety net.
void DeriveGroups(EnvelopeChain const & red, EnvelopeChain const & black,
                  EnvelopeChain const & merged, EnvelopeSide side, Tolerance tol,
                  std::vector<Line2> const & by_id, std::vector<CertificateGroup> & groups)
{
  std::unordered_map<int, ChainPos> pos;
  for (size_t i = 0; i < red.lines.size(); ++i)
    pos[red.lines[i].source] = {true, i};
  for (size_t i = 0; i < black.lines.size(); ++i)
    pos[black.lines[i].source] = {false, i};

  std::unordered_set<int> on_merged;
  for (auto const & l : merged.lines)
    on_merged.insert(l.source);

  std::span<Line2 const> lines(by_id);

  // Crossings: merged-chain breakpoints joining lines of different chains.
  for (size_t i = 0; i + 1 < merged.lines.size(); ++i)
  {
    ChainPos const pp = pos.at(merged.lines[i].source);
    ChainPos const pq = pos.at(merged.lines[i + 1].source);
    if (pp.in_red == pq.in_red)
      continue;
    EnvelopeChain const & pchain = pp.in_red ? red : black;
    EnvelopeChain const & qchain = pq.in_red ? red : black;
    int const p = merged.lines[i].source;
    int const q = merged.lines[i + 1].source;

    int const q_prev = pq.index > 0 ? qchain.lines[pq.index - 1].source : -1;
    int const p_next =
        pp.index + 1 < pchain.lines.size() ? pchain.lines[pp.index + 1].source : -1;
    groups.push_back(MakeIntersectionGroup(p, q, q_prev, p_next, lines, side, tol));
  }

  // Fully hidden lines: one tangent or diverging group each. With ownership
  // [xl, xr] covered from above by the opposite chain O, either O's slope at an
  // end disagrees with the hidden slope (diverging away from that end's
  // vertex), or O's slopes bracket it and the bracketing vertex lies above.
  auto const hiddenGroups = [&](EnvelopeChain const & own, EnvelopeChain const & opp) {
    for (size_t j = 0; j < own.lines.size(); ++j)
    {
      DualLine const & ell = own.lines[j];
      if (on_merged.count(ell.source))
        continue;
      bool const first = j == 0;
      bool const last = j + 1 == own.lines.size();
      DualLine const & tl =
          first ? opp.lines.front() : opp.lines[opp.IndexRightOf(own.breakpoints[j - 1].x)];
      DualLine const & tr =
          last ? opp.lines.back() : opp.lines[opp.IndexLeftOf(own.breakpoints[j].x)];

      if (!first && tl.a > ell.a)
      {
        groups.push_back(MakeDivergingGroup(ell.source, tl.source, own.lines[j - 1].source,
                                            true /* rightward */, lines, side, tol));
      }
      else if (!last && tr.a < ell.a)
      {
        groups.push_back(MakeDivergingGroup(ell.source, tr.source, own.lines[j + 1].source,
                                            false /* leftward */, lines, side, tol));
      }
      else
      {
        // Largest opposite index with slope below the hidden line.
        size_t lo = 0, hi = opp.lines.size();
        while (lo < hi)
        {
          size_t const mid = (lo + hi) / 2;
          if (opp.lines[mid].a < ell.a)
            lo = mid + 1;
          else
            hi = mid;
        }
        if (lo == 0 || lo == opp.lines.size())
          throw InconsistentContext("hidden line has no certifiable relation to opposite chain");
        groups.push_back(MakeTangentGroup(ell.source, opp.lines[lo - 1].source,
                                          opp.lines[lo].source, lines, side, tol));
      }
    }
  };
  hiddenGroups(red, black);
  hiddenGroups(black, red);
}

// Core merge in upper space; callers handle lower-side reflection.
MergeResult UpperMerge(EnvelopeChain const & red, EnvelopeChain const & black, EnvelopeSide side,
                       Tolerance tol, std::vector<Line2> & by_id)
{
  std::vector<DualLine> all;
  all.reserve(red.lines.size() + black.lines.size());
  std::merge(red.lines.begin(), red.lines.end(), black.lines.begin(), black.lines.end(),
             std::back_inserter(all), [](DualLine const & u, DualLine const & w) {
               return u.a < w.a || (u.a == w.a && u.source < w.source);
             });
  for (size_t i = 0; i + 1 < all.size(); ++i)
    if (all[i + 1].a - all[i].a <= tol.eps)
      throw ParallelLines("two input lines have slope gap within tolerance");

  for (auto const & l : all)
  {
    if (by_id.size() <= static_cast<size_t>(l.source))
      by_id.resize(static_cast<size_t>(l.source) + 1);
    by_id[static_cast<size_t>(l.source)] = l.AsLine();
  }

  MergeResult res;
  res.chain = StackEnvelope(all, tol);
  DeriveGroups(red, black, res.chain, side, tol, by_id, res.groups);
  return res;
}
}  // namespace

MergeResult MergeChains(EnvelopeChain const & red, EnvelopeChain const & black, EnvelopeSide side,
                        Tolerance tol)
{
  ValidateChain(red, side, tol);
  ValidateChain(black, side, tol);
  for (auto const & r : red.lines)
    for (auto const & b : black.lines)
      if (r.source == b.source)
        throw ValidationError("chains share line id " + std::to_string(r.source));

  std::vector<Line2> by_id;
  if (side == EnvelopeSide::Upper)
    return UpperMerge(red, black, side, tol, by_id);

  MergeResult res = UpperMerge(ReflectChain(red), ReflectChain(black), side, tol, by_id);
  res.chain = ReflectChain(std::move(res.chain));
  return res;
}

MergeTree BuildEnvelope(std::span<DualLine const> lines, EnvelopeSide side, Tolerance tol)
{
  if (lines.empty())
    throw ValidationError("envelope needs at least one line");

  std::vector<DualLine> sorted(lines.begin(), lines.end());
  if (side == EnvelopeSide::Lower)
  {
    for (auto & l : sorted)
    {
      l.a = -l.a;
      l.b = -l.b;
    }
  }
  std::sort(sorted.begin(), sorted.end(), [](DualLine const & u, DualLine const & w) {
    return u.a < w.a || (u.a == w.a && u.source < w.source);
  });
  for (size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i + 1].a - sorted[i].a <= tol.eps)
      throw ParallelLines("two input lines have slope gap within tolerance");

  MergeTree mt;
  mt.side = side;
  mt.leaf_count = lines.size();
  mt.tol = tol;

  std::vector<Line2> by_id;
  // Recursive median split over [lo, hi); red child takes the lower-slope half
  // including the median.
  auto build = [&](auto && self, size_t lo, size_t hi) -> int {
    if (hi - lo == 1)
    {
      MergeNode leaf;
      leaf.chain = SingleLineChain(sorted[lo]);
      mt.nodes.push_back(std::move(leaf));
      return static_cast<int>(mt.nodes.size() - 1);
    }
    size_t const mid = lo + (hi - lo + 1) / 2;
    int const left = self(self, lo, mid);
    int const right = self(self, mid, hi);

    MergeNode node;
    node.left = left;
    node.right = right;
    node.level = 1 + std::max(mt.nodes[static_cast<size_t>(left)].level,
                              mt.nodes[static_cast<size_t>(right)].level);
    MergeResult merged = UpperMerge(mt.nodes[static_cast<size_t>(left)].chain,
                                    mt.nodes[static_cast<size_t>(right)].chain, side, tol, by_id);
    node.chain = std::move(merged.chain);
    node.groups = std::move(merged.groups);
    for (auto & g : node.groups)
      g.level = node.level;
    mt.nodes.push_back(std::move(node));
    return static_cast<int>(mt.nodes.size() - 1);
  };
  mt.root = build(build, 0, sorted.size());

  if (side == EnvelopeSide::Lower)
  {
    for (auto & node : mt.nodes)
      node.chain = ReflectChain(std::move(node.chain));
  }
  return mt;
}
}  // namespace probhull

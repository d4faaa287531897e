#pragma once

#include "probhull/certificates.hpp"
#include "probhull/geometry.hpp"

#include <span>
#include <vector>

namespace probhull
{
// Dual line of a point: y = p.x * x + p.y, tagged with the point's id.
struct DualLine
{
  int source = -1;
  double a = 0.0;
  double b = 0.0;

  Line2 AsLine() const { return {a, b}; }
};

DualLine Dualize(Point2 const & p, int source);

// An x-monotone envelope chain. lines[i] owns the x-interval between
// breakpoints[i-1] and breakpoints[i] (unbounded at the ends); breakpoints[i]
// is the intersection of lines[i] and lines[i+1]. Upper chains have strictly
// increasing slopes, lower chains strictly decreasing.
struct EnvelopeChain
{
  std::vector<DualLine> lines;
  std::vector<Point2> breakpoints;

  size_t Size() const { return lines.size(); }

  // Index of the line owning the interval just right / just left of x.
  size_t IndexRightOf(double x) const;
  size_t IndexLeftOf(double x) const;

  double Eval(double x) const;
};

EnvelopeChain SingleLineChain(DualLine const & l);

// Throws MalformedChain (ordering/breakpoint mismatch) or ParallelLines
// (adjacent slope gap within tolerance).
void ValidateChain(EnvelopeChain const & chain, EnvelopeSide side, Tolerance tol);

struct MergeResult
{
  EnvelopeChain chain;
  std::vector<CertificateGroup> groups;
};

// Merge two same-side chains into their common envelope and emit one
// certificate group per merge decision: a chain-intersection group per
// crossing and a tangent or diverging group per fully hidden line.
MergeResult MergeChains(EnvelopeChain const & red, EnvelopeChain const & black, EnvelopeSide side,
                        Tolerance tol = {});

struct MergeNode
{
  EnvelopeChain chain;
  int left = -1;   // red child (lower slopes)
  int right = -1;  // black child
  int level = 0;   // leaves are 0
  std::vector<CertificateGroup> groups;
};

struct MergeTree
{
  std::vector<MergeNode> nodes;
  int root = -1;
  EnvelopeSide side = EnvelopeSide::Upper;
  std::size_t leaf_count = 0;
  Tolerance tol;

  EnvelopeChain const & RootChain() const { return nodes[static_cast<size_t>(root)].chain; }
  int Height() const { return root < 0 ? 0 : nodes[static_cast<size_t>(root)].level; }
};

// Divide-and-conquer envelope: sort by slope, split at the median (the red /
// left child takes the lower-slope half including the median), merge upward.
// The whole recorded tree is returned. Throws ParallelLines when two input
// slopes are within tolerance of each other.
MergeTree BuildEnvelope(std::span<DualLine const> lines, EnvelopeSide side, Tolerance tol = {});
}  // namespace probhull

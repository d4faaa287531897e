#pragma once

#include "probhull/geometry.hpp"
#include "probhull/prob_model.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace probhull
{
enum class EnvelopeSide
{
  Upper,
  Lower
};

enum class AtomKind
{
  XOrder,      // x(v1) < x(v2) for two chain vertices
  YOrder,      // a vertex against a line of the opposite chain
  SlopeOrder,  // slope(line) <= slope(line2)
};

enum class GroupKind
{
  Tangent,            // a line pinned below the opposite chain's slope-bracketing vertex
  ChainIntersection,  // the two chains cross between two skipped vertices
  Diverging,          // a line sloping away under a witness from the opposite chain
};

enum class Role
{
  AsLine,    // the line itself is a subject of some atom
  AsVertex,  // the line only contributes an endpoint vertex
};

// A vertex is the intersection of two identified lines; it moves when the
// underlying points move.
struct VertexRef
{
  int u = -1;
  int v = -1;
};

// One comparison, with the asserted direction frozen at creation time.
struct CertificateAtom
{
  AtomKind kind = AtomKind::SlopeOrder;
  VertexRef v1;              // XOrder: left vertex; YOrder: the vertex
  VertexRef v2;              // XOrder: right vertex
  int line = -1;             // YOrder: the line; SlopeOrder: lhs
  int line2 = -1;            // SlopeOrder: rhs
  bool vertex_below = true;  // YOrder: asserted side of the vertex
};

struct Participant
{
  int line = -1;
  Role role = Role::AsLine;
};

// Atoms live or die together: the group holds only if every atom holds.
struct CertificateGroup
{
  GroupKind kind = GroupKind::Tangent;
  EnvelopeSide side = EnvelopeSide::Upper;
  int level = 0;
  std::vector<CertificateAtom> atoms;
  std::vector<Participant> participants;
  std::vector<int> excludable;  // ids this group alone can push off the hull
};

// Evaluate against current line positions (index == point id). For the lower
// side, lines are reflected (a,b) -> (-a,-b) so the upper-space relations
// recorded at creation stay meaningful. slack > 0 widens the acceptance band
// (used at creation); re-evaluation under samples uses slack = 0.
bool EvalAtom(CertificateAtom const & atom, std::span<Line2 const> lines, EnvelopeSide side,
              double slack);
bool EvalGroup(CertificateGroup const & g, std::span<Line2 const> lines, double slack);

// Constructors validate that every atom holds on the provided lines (within
// tol.eps) and throw InconsistentContext otherwise. Lines are in upper space
// (already reflected for lower-side merges).
CertificateGroup MakeTangentGroup(int hidden, int below_slope, int above_slope,
                                  std::span<Line2 const> lines, EnvelopeSide side, Tolerance tol);
CertificateGroup MakeDivergingGroup(int hidden, int witness, int co_vertex, bool hide_rightward,
                                    std::span<Line2 const> lines, EnvelopeSide side, Tolerance tol);
// Flanking vertices (pass -1 when absent at a chain end): the left one is the
// right winner's left endpoint on its chain, the right one the left winner's
// right endpoint. With both present the group carries the canonical
// x-order + two y-order atoms; otherwise a reduced set with the crossing's
// slope relation in place of the missing comparisons.
CertificateGroup MakeIntersectionGroup(int left_winner, int right_winner, int q_prev, int p_next,
                                       std::span<Line2 const> lines, EnvelopeSide side,
                                       Tolerance tol);

struct GroupEstimate
{
  double estimate = 0.0;
  double std_error = 0.0;
  long trials = 0;
};

// Monte Carlo Pr[group holds] under resampled participant locations. Each
// participant is resampled independently per trial with a sub-seed hashed from
// (seed, trial, point id), so the estimate is reproducible and independent of
// evaluation order.
GroupEstimate EstimateGroupCorrectness(CertificateGroup const & g,
                                       std::span<ProbPoint const> points, long trials,
                                       uint64_t seed, double truncation = 5.0);

// Conservative certification: the group holds on expected values and the
// participants' beta disks are pairwise disjoint. strict uses phi^(1/k) disks
// (k = participant count).
bool DiskCertified(CertificateGroup const & g, std::span<ProbPoint const> points, Confidence phi,
                   bool strict);

struct MergeTree;  // defined in dual_envelope.hpp

struct StructureAudit
{
  std::size_t leaf_count = 0;
  std::size_t group_count = 0;
  std::size_t tangent = 0;
  std::size_t chain_intersection = 0;
  std::size_t diverging = 0;
  int max_participants_per_group = 0;
  int max_participation_per_line = 0;
  double groups_per_nlogn = 0.0;        // group_count / (n log2 n)
  double participation_per_logn = 0.0;  // max_participation_per_line / log2 n
};

StructureAudit AuditStructure(MergeTree const & mt);
}  // namespace probhull

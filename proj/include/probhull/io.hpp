#pragma once

#include "probhull/certificates.hpp"
#include "probhull/hull_pipeline.hpp"
#include "probhull/max1d.hpp"
#include "probhull/verify.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace probhull
{
// Input is JSON Lines: one object per line, {"id": ..., "x": ..., "y": ...,
// "sigma": ...} (no "y" for 1D values). Blank lines are skipped. Throws
// ParseError with the offending 1-based line number, or ValidationError for
// semantic problems (duplicate ids, non-positive sigma).
std::vector<ProbPoint> ParsePoints(std::istream & in);
std::vector<Prob1D> ParseValues1D(std::istream & in);

void SerializePoints(std::ostream & out, std::span<ProbPoint const> points);
void SerializeValues1D(std::ostream & out, std::span<Prob1D const> values);

// JSON documents (pretty-printed, trailing newline); every document carries
// "schema": "probhull/1".
std::string HullResultJson(std::span<ProbPoint const> points, HullResult const & hull);
std::string EnvelopeJson(std::span<ProbPoint const> points, ExpectedHull const & hull);
std::string HeapJson(CertifiedHeap const & heap);
std::string RobustReportJson(RobustReport const & report);
std::string AuditJson(std::span<ProbPoint const> points, HullResult const & hull,
                      StructureAudit const & upper, StructureAudit const & lower,
                      ExclusionReport const & exclusion);

// Standalone SVG: beta disks of all points, mean dots, and the hull region
// boundary, drawn in world coordinates under a y-flip so y grows upward.
void EmitSvg(std::ostream & out, std::span<ProbPoint const> points, HullResult const & hull);
}  // namespace probhull

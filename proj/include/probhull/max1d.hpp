#pragma once

#include "probhull/geometry.hpp"
#include "probhull/prob_model.hpp"

#include <span>
#include <vector>

namespace probhull
{
// Ordering assertion between a heap node and one of its children.
struct HeapCertificate
{
  int parent = -1;
  int child = -1;
  double prob_parent_above = 0.0;  // Pr[parent value > child value] under the model
};

// Array-layout max-heap on the means (children of i at 2i+1 and 2i+2) with one
// certificate per non-root node.
struct CertifiedHeap
{
  double phi = 0.0;
  std::vector<Prob1D> nodes;
  std::vector<HeapCertificate> certificates;

  Prob1D const & Root() const { return nodes.front(); }
};

// Sorts ascending by mean, then heapifies in place, so the layout is a pure
// function of the value set. Throws DuplicateMeans when two means are within
// tol.eps of each other.
CertifiedHeap BuildHeap(std::span<Prob1D const> values, Confidence phi, Tolerance tol = {});

// Upper confidence bound for the maximum: root mean plus the root's beta
// half-width.
double ReportMax(CertifiedHeap const & heap);
}  // namespace probhull

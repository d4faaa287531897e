#include "probhull/max1d.hpp"

#include "probhull/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace probhull
{
namespace
{
void SiftDown(std::vector<Prob1D> & a, std::size_t i)
{
  std::size_t const n = a.size();
  while (true) {
    std::size_t const l = 2 * i + 1;
    std::size_t const r = 2 * i + 2;
    std::size_t m = i;
    if (l < n && a[l].mean > a[m].mean) m = l;
    if (r < n && a[r].mean > a[m].mean) m = r;
    if (m == i) return;
    std::swap(a[i], a[m]);
    i = m;
  }
}
}  // namespace

CertifiedHeap BuildHeap(std::span<Prob1D const> values, Confidence phi, Tolerance tol)
{
  if (values.empty()) throw ValidationError("heap needs at least one value");
  for (Prob1D const & v : values) {
    if (!(v.sigma > 0.0)) throw ValidationError("value " + v.id + " has non-positive sigma");
  }

  CertifiedHeap heap;
  heap.phi = phi.phi;
  heap.nodes.assign(values.begin(), values.end());
  std::sort(heap.nodes.begin(), heap.nodes.end(),
            [](Prob1D const & a, Prob1D const & b) { return a.mean < b.mean; });
  for (std::size_t i = 0; i + 1 < heap.nodes.size(); ++i) {
    if (heap.nodes[i + 1].mean - heap.nodes[i].mean <= tol.eps)
      throw DuplicateMeans("values " + heap.nodes[i].id + " and " + heap.nodes[i + 1].id +
                           " have means within tolerance");
  }
  for (std::size_t i = heap.nodes.size() / 2; i-- > 0;) SiftDown(heap.nodes, i);

  heap.certificates.reserve(heap.nodes.size() - 1);
  for (std::size_t c = 1; c < heap.nodes.size(); ++c) {
    std::size_t const p = (c - 1) / 2;
    heap.certificates.push_back(
        HeapCertificate{static_cast<int>(p), static_cast<int>(c),
                        ProbAbove1D(heap.nodes[p], heap.nodes[c])});
  }
  return heap;
}

double ReportMax(CertifiedHeap const & heap)
{
  return heap.Root().mean + BetaHalfwidth(heap.Root().sigma, Confidence(heap.phi));
}
}  // namespace probhull

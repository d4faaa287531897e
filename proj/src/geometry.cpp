#include "probhull/geometry.hpp"

#include <cmath>

namespace probhull
{
double CrossProduct(Point2 const & p, Point2 const & q, Point2 const & r)
{
  return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

Orientation Orient(Point2 const & p, Point2 const & q, Point2 const & r, Tolerance tol)
{
  double const c = CrossProduct(p, q, r);
  if (std::fabs(c) <= tol.eps)
    return Orientation::Collinear;
  return c > 0.0 ? Orientation::CCW : Orientation::CW;
}

Point2 LineIntersection(Line2 const & l1, Line2 const & l2, Tolerance tol)
{
  double const da = l1.a - l2.a;
  if (std::fabs(da) <= tol.eps)
    throw ParallelLines("lines with slope gap <= eps have no usable intersection");
  double const x = (l2.b - l1.b) / da;
  return {x, l1.Eval(x)};
}

Side PointAboveLine(Point2 const & p, Line2 const & l, Tolerance tol)
{
  double const d = p.y - l.Eval(p.x);
  if (std::fabs(d) <= tol.eps)
    return Side::On;
  return d > 0.0 ? Side::Above : Side::Below;
}

double Distance(Point2 const & a, Point2 const & b)
{
  return std::hypot(a.x - b.x, a.y - b.y);
}
}  // namespace probhull

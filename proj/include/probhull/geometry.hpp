#pragma once

#include "probhull/errors.hpp"

namespace probhull
{
struct Point2
{
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 const & a, Point2 const & b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 const & a, Point2 const & b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 const & p) { return {s * p.x, s * p.y}; }

// y = a * x + b
struct Line2
{
  double a = 0.0;
  double b = 0.0;

  double Eval(double x) const { return a * x + b; }
};

// Single absolute tolerance used across all predicates. Inputs closer than eps
// to a degeneracy are treated as degenerate (and rejected where that matters);
// no perturbation is ever applied.
struct Tolerance
{
  double eps = 1e-9;
};

enum class Orientation
{
  CCW,
  CW,
  Collinear
};

enum class Side
{
  Above,
  On,
  Below
};

double CrossProduct(Point2 const & p, Point2 const & q, Point2 const & r);

// Three-way turn direction of the path p -> q -> r; the collinearity band is on
// the cross product value.
Orientation Orient(Point2 const & p, Point2 const & q, Point2 const & r, Tolerance tol = {});

// Throws ParallelLines when the slope gap is within tol.eps.
Point2 LineIntersection(Line2 const & l1, Line2 const & l2, Tolerance tol = {});

Side PointAboveLine(Point2 const & p, Line2 const & l, Tolerance tol = {});

double Distance(Point2 const & a, Point2 const & b);
}  // namespace probhull

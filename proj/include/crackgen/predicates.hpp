#pragma once

#include "crackgen/types.hpp"

namespace crackgen::predicates {

/// Positive if a, b, c are counter-clockwise, negative if clockwise, zero if collinear.
/// The sign is exact: a floating-point filter falls back to expansion arithmetic.
double orient2d(const Point2& a, const Point2& b, const Point2& c);

/// Positive if d lies strictly inside the circle through counter-clockwise a, b, c.
/// Exact sign, same filtering scheme as orient2d.
double incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

}  // namespace crackgen::predicates

#pragma once

#include <array>
#include <vector>

#include "crackgen/types.hpp"

namespace crackgen {

struct PlateSpec {
    double width = 4.0;
    double height = 4.0;
    Point2 origin = Point2::Zero();
};

/// A crack is a rectangular slot of removed material.
struct CrackSpec {
    Point2 center = Point2::Zero();
    double length = 0.5;
    double width = 0.01;
    double angle = 0.0;  // radians, measured from the +x axis
};

/// Simple polygon, counter-clockwise.
struct Polygon {
    std::vector<Point2> vertices;
};

/// Steel, SI-consistent.
struct MaterialProps {
    double conductivity = 50.0;
    double density = 7850.0;
    double specific_heat = 490.0;

    double diffusivity() const { return conductivity / (density * specific_heat); }
};

void validate(const PlateSpec& plate);
void validate(const CrackSpec& crack);
void validate(const MaterialProps& material);

/// The four slot corners, counter-clockwise, starting at the (-l/2, -w/2) corner
/// in the crack's local frame.
Polygon crack_polygon(const CrackSpec& crack);

/// Endpoints of the crack's centerline (the two tips).
std::array<Point2, 2> crack_tips(const CrackSpec& crack);

bool crack_within_plate(const CrackSpec& crack, const PlateSpec& plate, double margin);

/// Separating-axis test on the two slots, each dilated by clearance/2.
bool cracks_overlap(const CrackSpec& a, const CrackSpec& b, double clearance);

/// Signed area (positive for counter-clockwise).
double signed_area(const Polygon& poly);

double perimeter(const Polygon& poly);

/// Point in simple polygon (even-odd). Points on the boundary count as outside.
bool point_in_polygon(const Point2& p, const Polygon& poly);

/// Regular n-gon inscribed in the circle of the given radius, counter-clockwise.
Polygon regular_polygon(const Point2& center, double radius, int sides);

}  // namespace crackgen

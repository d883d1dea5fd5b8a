#include "crackgen/geometry.hpp"

#include <cmath>
#include <numbers>

namespace crackgen {

namespace {

struct OrientedBox {
    Point2 center;
    Point2 axis_u;  // along the length
    Point2 axis_v;  // across the width
    double half_u;
    double half_v;
};

OrientedBox box_of(const CrackSpec& c, double inflate) {
    const Point2 u(std::cos(c.angle), std::sin(c.angle));
    const Point2 v(-u.y(), u.x());
    return {c.center, u, v, 0.5 * c.length + inflate, 0.5 * c.width + inflate};
}

double projected_radius(const OrientedBox& b, const Point2& axis) {
    return b.half_u * std::abs(b.axis_u.dot(axis)) + b.half_v * std::abs(b.axis_v.dot(axis));
}

}  // namespace

void validate(const PlateSpec& plate) {
    if (!(plate.width > 0.0) || !(plate.height > 0.0) || !plate.origin.allFinite())
        throw DomainError("plate dimensions must be positive and finite");
}

void validate(const CrackSpec& crack) {
    if (!crack.center.allFinite() || !std::isfinite(crack.angle))
        throw DomainError("crack center and angle must be finite");
    if (!(crack.length > 0.0) || !(crack.width > 0.0) || !(crack.width < crack.length))
        throw DomainError("crack requires 0 < width < length");
}

void validate(const MaterialProps& m) {
    if (!(m.conductivity > 0.0) || !(m.density > 0.0) || !(m.specific_heat > 0.0))
        throw DomainError("material properties must be strictly positive");
}

Polygon crack_polygon(const CrackSpec& crack) {
    validate(crack);
    const Point2 u(std::cos(crack.angle), std::sin(crack.angle));
    const Point2 v(-u.y(), u.x());
    const Point2 du = 0.5 * crack.length * u;
    const Point2 dv = 0.5 * crack.width * v;
    return Polygon{{crack.center - du - dv, crack.center + du - dv, crack.center + du + dv,
                    crack.center - du + dv}};
}

std::array<Point2, 2> crack_tips(const CrackSpec& crack) {
    const Point2 du = 0.5 * crack.length * Point2(std::cos(crack.angle), std::sin(crack.angle));
    return {crack.center - du, crack.center + du};
}

bool crack_within_plate(const CrackSpec& crack, const PlateSpec& plate, double margin) {
    const double x0 = plate.origin.x() + margin;
    const double y0 = plate.origin.y() + margin;
    const double x1 = plate.origin.x() + plate.width - margin;
    const double y1 = plate.origin.y() + plate.height - margin;
    for (const Point2& p : crack_polygon(crack).vertices) {
        if (p.x() < x0 || p.x() > x1 || p.y() < y0 || p.y() > y1) return false;
    }
    return true;
}

bool cracks_overlap(const CrackSpec& a, const CrackSpec& b, double clearance) {
    const OrientedBox ba = box_of(a, 0.5 * clearance);
    const OrientedBox bb = box_of(b, 0.5 * clearance);
    const Point2 d = bb.center - ba.center;
    for (const Point2& axis : {ba.axis_u, ba.axis_v, bb.axis_u, bb.axis_v}) {
        if (std::abs(d.dot(axis)) > projected_radius(ba, axis) + projected_radius(bb, axis))
            return false;
    }
    return true;
}

double signed_area(const Polygon& poly) {
    const auto& v = poly.vertices;
    if (v.size() < 3) return 0.0;
    // fan from the first vertex keeps the products at polygon scale
    double twice = 0.0;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const Point2 p = v[i] - v[0];
        const Point2 q = v[i + 1] - v[0];
        twice += p.x() * q.y() - q.x() * p.y();
    }
    return 0.5 * twice;
}

double perimeter(const Polygon& poly) {
    double total = 0.0;
    for (std::size_t i = 0, n = poly.vertices.size(); i < n; ++i)
        total += (poly.vertices[(i + 1) % n] - poly.vertices[i]).norm();
    return total;
}

bool point_in_polygon(const Point2& p, const Polygon& poly) {
    bool inside = false;
    const auto& v = poly.vertices;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        const bool crosses = (v[i].y() > p.y()) != (v[j].y() > p.y());
        if (crosses) {
            const double x = v[j].x() + (p.y() - v[j].y()) * (v[i].x() - v[j].x()) / (v[i].y() - v[j].y());
            if (p.x() < x) inside = !inside;
        }
    }
    return inside;
}

Polygon regular_polygon(const Point2& center, double radius, int sides) {
    Polygon poly;
    poly.vertices.reserve(static_cast<std::size_t>(sides));
    for (int i = 0; i < sides; ++i) {
        const double t = 2.0 * std::numbers::pi * i / sides;
        poly.vertices.emplace_back(center.x() + radius * std::cos(t), center.y() + radius * std::sin(t));
    }
    return poly;
}

}  // namespace crackgen

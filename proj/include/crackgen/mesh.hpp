#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "crackgen/boundary.hpp"
#include "crackgen/geometry.hpp"
#include "crackgen/sampler.hpp"

namespace crackgen {

struct BoundaryEdge {
    std::array<int, 2> nodes;  // oriented with the domain on the left
    BoundaryTag tag;
};

struct Mesh {
    std::vector<Point2> nodes;
    std::vector<std::array<int, 3>> triangles;  // counter-clockwise
    std::vector<BoundaryEdge> boundary_edges;
};

struct SizingParams {
    double h_target = 0.08;
    double tip_factor = 0.1;
    double tip_radius = 0.1;
    double min_angle_deg = 25.0;  // triangles below this angle are refined
};

void validate(const SizingParams& sizing);

/// A polygonal hole. Edge i (vertex i to i+1) is pre-split into
/// segments_per_edge[i] pieces; missing entries mean one piece.
struct HoleSpec {
    Polygon outline;
    std::vector<int> segments_per_edge;
    Point2 seed;  // any point strictly inside the hole
    BoundaryTag tag;
};

struct MeshDomain {
    PlateSpec plate;
    std::vector<HoleSpec> holes;
    std::vector<Point2> refinement_points;  // tip_factor * h_target within tip_radius
};

/// Plate with one slot per crack; slots get at least 2 pieces across and 8 along.
MeshDomain mesh_domain(const ScenarioSpec& scenario);

/// Constrained Delaunay triangulation with Delaunay refinement. Throws
/// MeshFailure when the geometry cannot be resolved in double precision.
Mesh triangulate(const MeshDomain& domain, const SizingParams& sizing);
Mesh triangulate(const ScenarioSpec& scenario, const SizingParams& sizing);

struct QualityReport {
    double min_angle_deg = 0.0;
    double max_aspect = 0.0;  // circumradius / (2 inradius), 1 for equilateral
    std::size_t triangle_count = 0;
    double min_area = 0.0;
};

QualityReport mesh_quality(const Mesh& mesh);

double triangle_area(const Mesh& mesh, std::size_t t);
double total_area(const Mesh& mesh);

/// Structural invariants: positive areas, every boundary edge on exactly one
/// triangle, boundary closed, no orphan nodes. Returns an empty string when valid.
std::string check_mesh(const Mesh& mesh);

/// OFF text: "OFF", "<nodes> <triangles> 0", one "x y 0" per node,
/// one "3 a b c" per triangle.
void write_off(const Mesh& mesh, std::ostream& out);
void write_off(const Mesh& mesh, const std::string& path);

}  // namespace crackgen

#pragma once

#include <array>
#include <string>

namespace crackgen {

enum class Edge { Left = 0, Right = 1, Top = 2, Bottom = 3 };

inline constexpr std::array<Edge, 4> kAllEdges = {Edge::Left, Edge::Right, Edge::Top, Edge::Bottom};

enum class BcKind { Insulated, Dirichlet, Flux };

/// Flux values are heat flowing into the plate per unit boundary length.
struct BoundaryCondition {
    BcKind kind = BcKind::Insulated;
    double value = 0.0;

    static BoundaryCondition insulated() { return {}; }
    static BoundaryCondition dirichlet(double temperature) { return {BcKind::Dirichlet, temperature}; }
    static BoundaryCondition flux(double q) { return {BcKind::Flux, q}; }

    friend bool operator==(const BoundaryCondition&, const BoundaryCondition&) = default;
};

struct EdgeBC {
    Edge edge = Edge::Left;
    BoundaryCondition bc;

    friend bool operator==(const EdgeBC&, const EdgeBC&) = default;
};

using EdgeBCs = std::array<EdgeBC, 4>;  // indexed by Edge

/// Boundary group identifier: 0..3 are the plate edges, 4 + k is crack k.
using BoundaryTag = int;

constexpr BoundaryTag edge_tag(Edge e) { return static_cast<BoundaryTag>(e); }
constexpr BoundaryTag crack_tag(int k) { return 4 + k; }
constexpr bool is_crack_tag(BoundaryTag t) { return t >= 4; }
constexpr int crack_index(BoundaryTag t) { return t - 4; }

std::string tag_name(BoundaryTag tag);
std::string to_string(Edge e);
std::string to_string(BcKind kind);
Edge parse_edge(const std::string& s);
BcKind parse_bc_kind(const std::string& s);

}  // namespace crackgen

#include "crackgen/boundary.hpp"

#include "crackgen/types.hpp"

namespace crackgen {

std::string to_string(Edge e) {
    switch (e) {
        case Edge::Left: return "left";
        case Edge::Right: return "right";
        case Edge::Top: return "top";
        case Edge::Bottom: return "bottom";
    }
    return "left";
}

std::string to_string(BcKind kind) {
    switch (kind) {
        case BcKind::Insulated: return "insulated";
        case BcKind::Dirichlet: return "dirichlet";
        case BcKind::Flux: return "flux";
    }
    return "insulated";
}

std::string tag_name(BoundaryTag tag) {
    if (is_crack_tag(tag)) return "crack_" + std::to_string(crack_index(tag));
    return to_string(static_cast<Edge>(tag));
}

Edge parse_edge(const std::string& s) {
    for (Edge e : kAllEdges)
        if (to_string(e) == s) return e;
    throw DomainError("unknown edge '" + s + "'");
}

BcKind parse_bc_kind(const std::string& s) {
    for (BcKind k : {BcKind::Insulated, BcKind::Dirichlet, BcKind::Flux})
        if (to_string(k) == s) return k;
    throw DomainError("unknown boundary condition kind '" + s + "'");
}

}  // namespace crackgen

#include "crackgen/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <tuple>

#include "crackgen/predicates.hpp"

namespace crackgen {

using predicates::incircle;
using predicates::orient2d;

namespace {

constexpr int kNone = -1;
constexpr std::size_t kMaxVertices = 4'000'000;

inline int next3(int i) { return i == 2 ? 0 : i + 1; }
inline int prev3(int i) { return i == 0 ? 2 : i - 1; }

struct Segment {
    int a;
    int b;
    BoundaryTag tag;
};

// Triangle-based constrained triangulation. Edge j of a triangle is opposite
// vertex j and joins v[j+1] -> v[j+2]; n[j] is the neighbor across it and
// tag[j] the boundary tag (kNone for unconstrained edges).
class Triangulator {
public:
    struct Tri {
        std::array<int, 3> v{};
        std::array<int, 3> n{kNone, kNone, kNone};
        std::array<int, 3> tag{kNone, kNone, kNone};
        bool alive = false;
    };

    struct Locate {
        int tri = kNone;
        int blocked_edge = kNone;  // set when the walk hit a constraint or the boundary
    };

    Triangulator(const Point2& lo, const Point2& hi) {
        const double span = std::max(hi.x() - lo.x(), hi.y() - lo.y());
        const double pad = 2.0 * span;
        add_vertex({lo.x() - pad, lo.y() - pad});
        add_vertex({hi.x() + pad, lo.y() - pad});
        add_vertex({hi.x() + pad, hi.y() + pad});
        add_vertex({lo.x() - pad, hi.y() + pad});
        const int t0 = new_tri(0, 1, 2);
        const int t1 = new_tri(0, 2, 3);
        tris_[t0].n[1] = t1;  // edge (2,0)
        tris_[t1].n[2] = t0;  // edge (0,2)
        last_ = t0;
    }

    std::vector<Point2>& points() { return pts_; }
    const std::vector<Point2>& points() const { return pts_; }
    const std::vector<Tri>& tris() const { return tris_; }

    // Insert a free point (no constraint split). Returns the vertex index; an
    // existing vertex is returned for exact duplicates.
    int insert_point(const Point2& p, int hint = kNone) {
        const Locate loc = locate(p, hint == kNone ? last_ : hint, false);
        if (loc.tri == kNone || loc.blocked_edge != kNone) throw MeshFailure("point lies outside the triangulation");
        for (int v : tris_[loc.tri].v)
            if (pts_[v] == p) return v;
        Cavity cav;
        if (!build_cavity(p, loc.tri, nullptr, cav)) throw MeshFailure("degenerate vertex insertion");
        return commit(p, cav, nullptr);
    }

    // Find the triangle and local edge index of edge a-b (either orientation).
    bool find_edge(int a, int b, int& tri, int& edge) const {
        const int start = vtri_[a];
        if (start == kNone) return false;
        auto check = [&](int t) {
            const Tri& T = tris_[t];
            for (int j = 0; j < 3; ++j) {
                const int x = T.v[next3(j)], y = T.v[prev3(j)];
                if ((x == a && y == b) || (x == b && y == a)) {
                    tri = t;
                    edge = j;
                    return true;
                }
            }
            return false;
        };
        // counter-clockwise sweep around a
        int t = start;
        do {
            if (check(t)) return true;
            const Tri& T = tris_[t];
            const int i = local_index(T, a);
            t = T.n[next3(i)];
        } while (t != kNone && t != start);
        if (t == start) return false;
        // clockwise sweep from the start, reached a boundary going ccw
        t = start;
        while (true) {
            const Tri& T = tris_[t];
            const int i = local_index(T, a);
            t = T.n[prev3(i)];
            if (t == kNone || t == start) return false;
            if (check(t)) return true;
        }
    }

    void recover_segments(std::vector<Segment>& segments) {
        std::vector<Segment> stack(segments.rbegin(), segments.rend());
        std::vector<Segment> recovered;
        while (!stack.empty()) {
            const Segment s = stack.back();
            stack.pop_back();
            int t, e;
            if (find_edge(s.a, s.b, t, e)) {
                set_tag(t, e, s.tag);
                recovered.push_back(s);
                continue;
            }
            if (pts_.size() > kMaxVertices) throw MeshFailure("segment recovery did not converge");
            const Point2 m = 0.5 * (pts_[s.a] + pts_[s.b]);
            if (m == pts_[s.a] || m == pts_[s.b]) throw MeshFailure("segment too short to resolve");
            const int mid = insert_point(m, vtri_[s.a]);
            stack.push_back({mid, s.b, s.tag});
            stack.push_back({s.a, mid, s.tag});
        }
        segments = std::move(recovered);
    }

    // Delete every triangle reachable from `seed` without crossing a constrained edge.
    void carve(int seed) {
        if (seed == kNone || !tris_[seed].alive) return;
        std::vector<int> stack{seed};
        tris_[seed].alive = false;
        std::vector<int> removed;
        while (!stack.empty()) {
            const int t = stack.back();
            stack.pop_back();
            removed.push_back(t);
            for (int j = 0; j < 3; ++j) {
                const int nb = tris_[t].n[j];
                if (nb == kNone || tris_[t].tag[j] != kNone || !tris_[nb].alive) continue;
                tris_[nb].alive = false;
                stack.push_back(nb);
            }
        }
        for (int t : removed) {
            for (int j = 0; j < 3; ++j) {
                const int nb = tris_[t].n[j];
                if (nb != kNone && tris_[nb].alive) tris_[nb].n[edge_towards(nb, t)] = kNone;
            }
            free_.push_back(t);
        }
        rebuild_vertex_index();
    }

    int locate_seed(const Point2& p) {
        const Locate loc = locate(p, last_, false);
        return loc.blocked_edge == kNone ? loc.tri : kNone;
    }

    int super_triangle_seed() const {
        for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
            if (tris_[t].alive && *std::min_element(tris_[t].v.begin(), tris_[t].v.end()) < 4) return t;
        return kNone;
    }

    void refine(const SizingParams& sizing, const std::vector<Point2>& tips) {
        const double min_angle = sizing.min_angle_deg * std::numbers::pi / 180.0;
        const double tip_h = sizing.tip_factor * sizing.h_target;

        auto size_limit = [&](int t) {
            const Tri& T = tris_[t];
            const Point2& a = pts_[T.v[0]];
            const Point2& b = pts_[T.v[1]];
            const Point2& c = pts_[T.v[2]];
            for (const Point2& tip : tips)
                if (point_triangle_distance(tip, a, b, c) < sizing.tip_radius) return tip_h;
            return sizing.h_target;
        };
        auto is_bad = [&](int t) {
            const Tri& T = tris_[t];
            const Point2& a = pts_[T.v[0]];
            const Point2& b = pts_[T.v[1]];
            const Point2& c = pts_[T.v[2]];
            const double longest = std::max({(b - a).squaredNorm(), (c - b).squaredNorm(), (a - c).squaredNorm()});
            const double h = size_limit(t);
            if (longest > h * h) return true;
            return smallest_angle(a, b, c) < min_angle;
        };

        std::deque<std::array<int, 3>> bad;  // vertex triples; stale entries are skipped
        std::deque<std::tuple<int, int, bool>> encroached;  // (a, b, split even if apex is clear)
        std::set<std::array<int, 3>> given_up;

        auto consider_triangle = [&](int t) {
            if (is_bad(t)) bad.push_back(tris_[t].v);
        };
        auto consider_edges_of = [&](int t) {
            const Tri& T = tris_[t];
            for (int j = 0; j < 3; ++j) {
                if (T.tag[j] == kNone) continue;
                const Point2& a = pts_[T.v[next3(j)]];
                const Point2& b = pts_[T.v[prev3(j)]];
                if (encroaches(pts_[T.v[j]], a, b)) encroached.emplace_back(T.v[next3(j)], T.v[prev3(j)], false);
            }
        };

        for (int t = 0; t < static_cast<int>(tris_.size()); ++t) {
            if (!tris_[t].alive) continue;
            consider_edges_of(t);
            consider_triangle(t);
        }

        auto after_insert = [&]() {
            for (int t : new_tris_) {
                consider_edges_of(t);
                consider_triangle(t);
            }
        };

        while (!encroached.empty() || !bad.empty()) {
            if (pts_.size() > kMaxVertices) throw MeshFailure("refinement exceeded the vertex budget");

            if (!encroached.empty()) {
                const auto [a, b, force] = encroached.front();
                encroached.pop_front();
                int t, e;
                if (!find_edge(a, b, t, e) || tris_[t].tag[e] == kNone) continue;
                if (!force && !encroaches(pts_[tris_[t].v[e]], pts_[a], pts_[b])) continue;
                split_segment(t, e);
                after_insert();
                continue;
            }

            const std::array<int, 3> key = bad.front();
            bad.pop_front();
            int t;
            if (!find_triangle(key, t) || !is_bad(t) || given_up.count(key)) continue;

            const Tri& T = tris_[t];
            const Point2 center = circumcenter(pts_[T.v[0]], pts_[T.v[1]], pts_[T.v[2]]);
            const Locate loc = locate(center, t, true);
            if (loc.blocked_edge != kNone) {
                const Tri& B = tris_[loc.tri];
                encroached.emplace_back(B.v[next3(loc.blocked_edge)], B.v[prev3(loc.blocked_edge)], true);
                bad.push_back(key);
                continue;
            }
            bool duplicate = false;
            for (int v : tris_[loc.tri].v) duplicate |= (pts_[v] == center);
            Cavity cav;
            if (duplicate || !build_cavity(center, loc.tri, nullptr, cav)) {
                given_up.insert(key);
                continue;
            }
            bool rejected = false;
            for (const auto& be : cav.boundary) {
                if (be.tag == kNone) continue;
                if (encroaches(center, pts_[be.a], pts_[be.b])) {
                    encroached.emplace_back(be.a, be.b, true);
                    rejected = true;
                }
            }
            if (rejected) {
                bad.push_back(key);
                continue;
            }
            commit(center, cav, nullptr);
            after_insert();
        }
    }

    Mesh extract() const {
        Mesh mesh;
        std::vector<int> remap(pts_.size(), kNone);
        auto node = [&](int v) {
            if (remap[v] == kNone) {
                remap[v] = static_cast<int>(mesh.nodes.size());
                mesh.nodes.push_back(pts_[v]);
            }
            return remap[v];
        };
        for (const Tri& T : tris_) {
            if (!T.alive) continue;
            mesh.triangles.push_back({node(T.v[0]), node(T.v[1]), node(T.v[2])});
        }
        for (const Tri& T : tris_) {
            if (!T.alive) continue;
            for (int j = 0; j < 3; ++j) {
                if (T.n[j] != kNone) continue;
                if (T.tag[j] == kNone) throw MeshFailure("untagged boundary edge");
                mesh.boundary_edges.push_back({{remap[T.v[next3(j)]], remap[T.v[prev3(j)]]}, T.tag[j]});
            }
        }
        return mesh;
    }

private:
    struct CavityEdge {
        int a, b, outer, tag;
    };
    struct Cavity {
        std::vector<int> tris;
        std::vector<CavityEdge> boundary;
    };

    static int local_index(const Tri& T, int v) {
        return T.v[0] == v ? 0 : (T.v[1] == v ? 1 : 2);
    }

    int edge_towards(int t, int nb) const {
        const Tri& T = tris_[t];
        return T.n[0] == nb ? 0 : (T.n[1] == nb ? 1 : 2);
    }

    int add_vertex(const Point2& p) {
        pts_.push_back(p);
        vtri_.push_back(kNone);
        return static_cast<int>(pts_.size()) - 1;
    }

    int new_tri(int a, int b, int c) {
        int t;
        if (!free_.empty()) {
            t = free_.back();
            free_.pop_back();
            tris_[t] = Tri{};
        } else {
            t = static_cast<int>(tris_.size());
            tris_.emplace_back();
            mark_.push_back(0);
        }
        Tri& T = tris_[t];
        T.v = {a, b, c};
        T.alive = true;
        vtri_[a] = vtri_[b] = vtri_[c] = t;
        return t;
    }

    void set_tag(int t, int e, int tag) {
        Tri& T = tris_[t];
        T.tag[e] = tag;
        const int nb = T.n[e];
        if (nb != kNone) tris_[nb].tag[edge_towards(nb, t)] = tag;
    }

    void rebuild_vertex_index() {
        std::fill(vtri_.begin(), vtri_.end(), kNone);
        for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
            if (tris_[t].alive)
                for (int v : tris_[t].v) vtri_[v] = t;
    }

    bool find_triangle(const std::array<int, 3>& key, int& out) const {
        int t, e;
        if (!find_edge(key[0], key[1], t, e)) return false;
        if (tris_[t].v[e] == key[2]) {
            out = t;
            return true;
        }
        const int nb = tris_[t].n[e];
        if (nb == kNone) return false;
        const Tri& N = tris_[nb];
        if (N.v[0] == key[2] || N.v[1] == key[2] || N.v[2] == key[2]) {
            out = nb;
            return true;
        }
        return false;
    }

    // Straight-line walk from the centroid of `start` towards p.
    Locate locate(const Point2& p, int start, bool stop_at_constraints) const {
        if (start == kNone || !tris_[start].alive) start = any_alive();
        int t = start;
        const Tri& S = tris_[t];
        const Point2 origin = (pts_[S.v[0]] + pts_[S.v[1]] + pts_[S.v[2]]) / 3.0;
        const std::size_t cap = 4 * tris_.size() + 16;
        for (std::size_t step = 0; step < cap; ++step) {
            const Tri& T = tris_[t];
            int exit = kNone, fallback = kNone;
            for (int j = 0; j < 3; ++j) {
                const Point2& a = pts_[T.v[next3(j)]];
                const Point2& b = pts_[T.v[prev3(j)]];
                if (orient2d(a, b, p) >= 0.0) continue;
                const double oa = orient2d(origin, p, a);
                const double ob = orient2d(origin, p, b);
                if ((oa >= 0.0 && ob <= 0.0) || (oa <= 0.0 && ob >= 0.0)) {
                    exit = j;
                    break;
                }
                if (fallback == kNone) fallback = j;
            }
            if (exit == kNone) exit = fallback;
            if (exit == kNone) return {t, kNone};
            if ((stop_at_constraints && T.tag[exit] != kNone) || T.n[exit] == kNone) return {t, exit};
            t = T.n[exit];
        }
        if (stop_at_constraints) return {kNone, kNone};
        // Fallback for pathological walks: exhaustive search.
        for (int u = 0; u < static_cast<int>(tris_.size()); ++u) {
            const Tri& T = tris_[u];
            if (!T.alive) continue;
            if (orient2d(pts_[T.v[0]], pts_[T.v[1]], p) >= 0 && orient2d(pts_[T.v[1]], pts_[T.v[2]], p) >= 0 &&
                orient2d(pts_[T.v[2]], pts_[T.v[0]], p) >= 0)
                return {u, kNone};
        }
        return {kNone, kNone};
    }

    int any_alive() const {
        for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
            if (tris_[t].alive) return t;
        throw MeshFailure("empty triangulation");
    }

    bool build_cavity(const Point2& p, int start, const std::pair<int, int>* split, Cavity& cav) {
        ++stamp_;
        auto is_split = [split](int a, int b) {
            return split && ((split->first == a && split->second == b) || (split->first == b && split->second == a));
        };
        std::vector<int> stack{start};
        mark_[start] = stamp_;
        while (!stack.empty()) {
            const int t = stack.back();
            stack.pop_back();
            cav.tris.push_back(t);
            const Tri& T = tris_[t];
            for (int j = 0; j < 3; ++j) {
                const int a = T.v[next3(j)], b = T.v[prev3(j)];
                const int nb = T.n[j];
                const bool splitting = is_split(a, b);
                if (nb != kNone && mark_[nb] == stamp_) continue;
                if (nb != kNone && (T.tag[j] == kNone || splitting)) {
                    const Tri& N = tris_[nb];
                    if (splitting || incircle(pts_[N.v[0]], pts_[N.v[1]], pts_[N.v[2]], p) > 0.0) {
                        mark_[nb] = stamp_;
                        stack.push_back(nb);
                        continue;
                    }
                }
                if (splitting) continue;
                cav.boundary.push_back({a, b, nb, T.tag[j]});
            }
        }
        for (const CavityEdge& e : cav.boundary)
            if (!(orient2d(pts_[e.a], pts_[e.b], p) > 0.0)) return false;
        return true;
    }

    int commit(const Point2& p, const Cavity& cav, const Segment* split) {
        const int pv = add_vertex(p);
        for (int t : cav.tris) {
            tris_[t].alive = false;
            free_.push_back(t);
        }
        new_tris_.clear();
        std::map<int, int> by_first, by_second;
        for (const CavityEdge& e : cav.boundary) {
            const int t = new_tri(e.a, e.b, pv);
            Tri& T = tris_[t];
            T.n[2] = e.outer;
            T.tag[2] = e.tag;
            if (e.outer != kNone) {
                Tri& O = tris_[e.outer];
                for (int j = 0; j < 3; ++j)
                    if (O.v[next3(j)] == e.b && O.v[prev3(j)] == e.a) O.n[j] = t;
            }
            by_first[e.a] = t;
            by_second[e.b] = t;
            new_tris_.push_back(t);
        }
        for (int t : new_tris_) {
            Tri& T = tris_[t];
            const auto f = by_first.find(T.v[1]);
            T.n[0] = f == by_first.end() ? kNone : f->second;
            const auto s = by_second.find(T.v[0]);
            T.n[1] = s == by_second.end() ? kNone : s->second;
            if (split) {
                if (T.v[1] == split->a || T.v[1] == split->b) T.tag[0] = split->tag;
                if (T.v[0] == split->a || T.v[0] == split->b) T.tag[1] = split->tag;
            }
        }
        last_ = new_tris_.empty() ? last_ : new_tris_.front();
        return pv;
    }

    void split_segment(int t, int e) {
        const Tri& T = tris_[t];
        const Segment seg{T.v[next3(e)], T.v[prev3(e)], T.tag[e]};
        const Point2 m = 0.5 * (pts_[seg.a] + pts_[seg.b]);
        if (m == pts_[seg.a] || m == pts_[seg.b]) throw MeshFailure("boundary segment too short to split");
        const std::pair<int, int> key{seg.a, seg.b};
        Cavity cav;
        if (!build_cavity(m, t, &key, cav)) throw MeshFailure("degenerate segment split");
        commit(m, cav, &seg);
    }

    static bool encroaches(const Point2& q, const Point2& a, const Point2& b) {
        const Point2 qa = a - q, qb = b - q;
        return qa.dot(qb) < -1e-12 * qa.norm() * qb.norm();
    }

    static double smallest_angle(const Point2& a, const Point2& b, const Point2& c) {
        auto angle = [](const Point2& o, const Point2& p, const Point2& q) {
            const Point2 u = p - o, v = q - o;
            return std::atan2(std::abs(u.x() * v.y() - u.y() * v.x()), u.dot(v));
        };
        return std::min({angle(a, b, c), angle(b, c, a), angle(c, a, b)});
    }

    static Point2 circumcenter(const Point2& a, const Point2& b, const Point2& c) {
        const Point2 ba = b - a, ca = c - a;
        const double d = 2.0 * (ba.x() * ca.y() - ba.y() * ca.x());
        const double b2 = ba.squaredNorm(), c2 = ca.squaredNorm();
        return a + Point2((ca.y() * b2 - ba.y() * c2) / d, (ba.x() * c2 - ca.x() * b2) / d);
    }

    static double point_segment_distance(const Point2& p, const Point2& a, const Point2& b) {
        const Point2 ab = b - a;
        const double len2 = ab.squaredNorm();
        const double s = len2 > 0.0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
        return (p - (a + s * ab)).norm();
    }

    static double point_triangle_distance(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
        if (orient2d(a, b, p) >= 0 && orient2d(b, c, p) >= 0 && orient2d(c, a, p) >= 0) return 0.0;
        return std::min({point_segment_distance(p, a, b), point_segment_distance(p, b, c),
                         point_segment_distance(p, c, a)});
    }

    std::vector<Point2> pts_;
    std::vector<Tri> tris_;
    std::vector<int> free_;
    std::vector<int> vtri_;
    std::vector<int> mark_;
    std::vector<int> new_tris_;
    int stamp_ = 0;
    int last_ = 0;
};

std::vector<int> split_points(const Point2& a, const Point2& b, int pieces, std::vector<Point2>& pts) {
    std::vector<int> ids;
    for (int k = 1; k < pieces; ++k) {
        const double s = static_cast<double>(k) / pieces;
        ids.push_back(static_cast<int>(pts.size()));
        pts.push_back(a + s * (b - a));
    }
    return ids;
}

}  // namespace

void validate(const SizingParams& s) {
    if (!(s.h_target > 0.0)) throw DomainError("sizing: h_target must be > 0");
    if (!(s.tip_factor > 0.0 && s.tip_factor <= 1.0)) throw DomainError("sizing: tip_factor must lie in (0, 1]");
    if (!(s.tip_radius >= 0.0)) throw DomainError("sizing: tip_radius must be >= 0");
    if (!(s.min_angle_deg > 0.0 && s.min_angle_deg <= 33.0))
        throw DomainError("sizing: min_angle_deg must lie in (0, 33]");
}

MeshDomain mesh_domain(const ScenarioSpec& scenario) {
    MeshDomain domain;
    domain.plate = scenario.plate;
    for (std::size_t k = 0; k < scenario.cracks.size(); ++k) {
        const CrackSpec& c = scenario.cracks[k];
        HoleSpec hole;
        hole.outline = crack_polygon(c);
        hole.segments_per_edge = {8, 2, 8, 2};
        hole.seed = c.center;
        hole.tag = crack_tag(static_cast<int>(k));
        domain.holes.push_back(std::move(hole));
        for (const Point2& tip : crack_tips(c)) domain.refinement_points.push_back(tip);
    }
    return domain;
}

Mesh triangulate(const ScenarioSpec& scenario, const SizingParams& sizing) {
    return triangulate(mesh_domain(scenario), sizing);
}

Mesh triangulate(const MeshDomain& domain, const SizingParams& sizing) {
    validate(domain.plate);
    validate(sizing);
    const PlateSpec& plate = domain.plate;
    if (!(sizing.h_target < std::min(plate.width, plate.height)))
        throw DomainError("sizing: h_target must be smaller than the plate");
    const double scale = std::max(plate.width, plate.height);

    for (const HoleSpec& hole : domain.holes) {
        const auto& v = hole.outline.vertices;
        if (v.size() < 3) throw MeshFailure("hole outline needs at least 3 vertices");
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double len = (v[(i + 1) % v.size()] - v[i]).norm();
            if (!(len > 1e-10 * scale)) throw MeshFailure("hole feature below resolvable size");
        }
        if (!(signed_area(hole.outline) > 0.0)) throw MeshFailure("hole outline must be counter-clockwise");
    }

    const Point2 lo = plate.origin;
    const Point2 hi = plate.origin + Point2(plate.width, plate.height);
    Triangulator tri(lo, hi);

    // Input vertices and segments.
    std::vector<Point2> input;
    std::vector<Segment> segments;
    auto add_chain = [&](const std::vector<Point2>& ring, const std::vector<int>& pieces, BoundaryTag tag_for_all,
                         const std::array<BoundaryTag, 4>* edge_tags) {
        const int base = static_cast<int>(input.size());
        input.insert(input.end(), ring.begin(), ring.end());
        const int n = static_cast<int>(ring.size());
        for (int i = 0; i < n; ++i) {
            const int a = base + i;
            const int b = base + (i + 1) % n;
            const int count = i < static_cast<int>(pieces.size()) ? std::max(1, pieces[i]) : 1;
            const BoundaryTag tag = edge_tags ? (*edge_tags)[static_cast<std::size_t>(i)] : tag_for_all;
            std::vector<int> chain{a};
            for (int id : split_points(ring[i], ring[(i + 1) % n], count, input)) chain.push_back(id);
            chain.push_back(b);
            for (std::size_t k = 0; k + 1 < chain.size(); ++k) segments.push_back({chain[k], chain[k + 1], tag});
        }
    };

    {
        const std::vector<Point2> ring{lo, {hi.x(), lo.y()}, hi, {lo.x(), hi.y()}};
        const int nx = static_cast<int>(std::ceil(plate.width / sizing.h_target - 1e-9));
        const int ny = static_cast<int>(std::ceil(plate.height / sizing.h_target - 1e-9));
        const std::array<BoundaryTag, 4> tags{edge_tag(Edge::Bottom), edge_tag(Edge::Right), edge_tag(Edge::Top),
                                              edge_tag(Edge::Left)};
        add_chain(ring, {nx, ny, nx, ny}, kNone, &tags);
    }
    for (const HoleSpec& hole : domain.holes) add_chain(hole.outline.vertices, hole.segments_per_edge, hole.tag, nullptr);

    std::vector<int> ids(input.size());
    int hint = kNone;
    for (std::size_t i = 0; i < input.size(); ++i) {
        ids[i] = tri.insert_point(input[i], hint);
        hint = kNone;
    }
    for (Segment& s : segments) {
        s.a = ids[s.a];
        s.b = ids[s.b];
        if (s.a == s.b) throw MeshFailure("coincident input vertices");
    }
    tri.recover_segments(segments);

    // Seeds must be located before carving starts.
    std::vector<int> seeds;
    for (const HoleSpec& hole : domain.holes) seeds.push_back(tri.locate_seed(hole.seed));
    tri.carve(tri.super_triangle_seed());
    for (int s : seeds) tri.carve(s);

    tri.refine(sizing, domain.refinement_points);
    return tri.extract();
}

double triangle_area(const Mesh& mesh, std::size_t t) {
    const auto& tr = mesh.triangles[t];
    const Point2& a = mesh.nodes[tr[0]];
    const Point2& b = mesh.nodes[tr[1]];
    const Point2& c = mesh.nodes[tr[2]];
    return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x()));
}

double total_area(const Mesh& mesh) {
    double sum = 0.0;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) sum += triangle_area(mesh, t);
    return sum;
}

QualityReport mesh_quality(const Mesh& mesh) {
    QualityReport q;
    q.triangle_count = mesh.triangles.size();
    q.min_angle_deg = 180.0;
    q.min_area = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tr = mesh.triangles[t];
        const Point2& a = mesh.nodes[tr[0]];
        const Point2& b = mesh.nodes[tr[1]];
        const Point2& c = mesh.nodes[tr[2]];
        const double la = (b - c).norm(), lb = (c - a).norm(), lc = (a - b).norm();
        const double area = triangle_area(mesh, t);
        for (const auto& [o, p, r] : {std::tuple{a, b, c}, std::tuple{b, c, a}, std::tuple{c, a, b}}) {
            const Point2 u = p - o, v = r - o;
            const double ang = std::atan2(std::abs(u.x() * v.y() - u.y() * v.x()), u.dot(v)) * 180.0 / std::numbers::pi;
            q.min_angle_deg = std::min(q.min_angle_deg, ang);
        }
        const double s = 0.5 * (la + lb + lc);
        const double inradius = area / s;
        const double circumradius = la * lb * lc / (4.0 * area);
        q.max_aspect = std::max(q.max_aspect, circumradius / (2.0 * inradius));
        q.min_area = std::min(q.min_area, area);
    }
    if (mesh.triangles.empty()) {
        q.min_angle_deg = 0.0;
        q.min_area = 0.0;
    }
    return q;
}

std::string check_mesh(const Mesh& mesh) {
    const int n = static_cast<int>(mesh.nodes.size());
    std::vector<char> used(mesh.nodes.size(), 0);
    std::map<std::pair<int, int>, int> directed;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const auto& tr = mesh.triangles[t];
        for (int v : tr) {
            if (v < 0 || v >= n) return "triangle " + std::to_string(t) + " references a missing node";
            used[v] = 1;
        }
        if (!(orient2d(mesh.nodes[tr[0]], mesh.nodes[tr[1]], mesh.nodes[tr[2]]) > 0.0))
            return "triangle " + std::to_string(t) + " is not positively oriented";
        for (int j = 0; j < 3; ++j) {
            if (++directed[{tr[j], tr[(j + 1) % 3]}] > 1)
                return "edge shared by two triangles with the same orientation";
        }
    }
    for (int v = 0; v < n; ++v)
        if (!used[v]) return "node " + std::to_string(v) + " is orphaned";

    std::set<std::pair<int, int>> boundary;
    for (const auto& [key, count] : directed)
        if (!directed.count({key.second, key.first})) boundary.insert(key);
    std::set<std::pair<int, int>> tagged;
    for (const BoundaryEdge& e : mesh.boundary_edges) {
        const std::pair<int, int> key{e.nodes[0], e.nodes[1]};
        if (!boundary.count(key)) return "boundary edge is not on exactly one triangle";
        if (!tagged.insert(key).second) return "boundary edge listed twice";
    }
    if (tagged.size() != boundary.size()) return "boundary contains untagged edges";
    return {};
}

void write_off(const Mesh& mesh, std::ostream& out) {
    out.precision(17);
    out << "OFF\n" << mesh.nodes.size() << ' ' << mesh.triangles.size() << " 0\n";
    for (const Point2& p : mesh.nodes) out << p.x() << ' ' << p.y() << " 0\n";
    for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

void write_off(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IOFailure(path, "cannot open for writing");
    write_off(mesh, out);
    if (!out) throw IOFailure(path, "write failed");
}

}  // namespace crackgen

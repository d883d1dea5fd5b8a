#include "crackgen/render.hpp"

#include <algorithm>
#include <cmath>

#include "crackgen/predicates.hpp"

namespace crackgen {

Point2 pixel_center(const PlateSpec& plate, int width, int height, int col, int row) {
    return {plate.origin.x() + (col + 0.5) / width * plate.width,
            plate.origin.y() + plate.height - (row + 0.5) / height * plate.height};
}

RenderResult rasterize(const Mesh& mesh, const TemperatureField& field, const PlateSpec& plate, int width,
                       int height, const Colormap& map, const RenderOptions& options) {
    if (width < 16 || height < 16) throw DomainError("raster must be at least 16x16");
    if (field.values.size() != static_cast<Eigen::Index>(mesh.nodes.size()))
        throw DomainError("field does not match the mesh");
    if (!field.values.allFinite()) throw DomainError("field contains non-finite values");

    const double lo = field.values.minCoeff();
    const double hi = field.values.maxCoeff();
    RenderResult out;
    out.degenerate_field = !(hi - lo >= 1e-12);
    const Rgb hole = options.hole_fill.value_or(map.lut[0]);

    out.image = ThermogramImage(width, height, hole);
    out.hole_mask.assign(static_cast<std::size_t>(width) * height, 1);

    const double px = width / plate.width;   // pixels per unit
    const double py = height / plate.height;
    const double top = plate.origin.y() + plate.height;

    for (const auto& t : mesh.triangles) {
        const Point2& a = mesh.nodes[t[0]];
        const Point2& b = mesh.nodes[t[1]];
        const Point2& c = mesh.nodes[t[2]];
        const double xmin = std::min({a.x(), b.x(), c.x()}), xmax = std::max({a.x(), b.x(), c.x()});
        const double ymin = std::min({a.y(), b.y(), c.y()}), ymax = std::max({a.y(), b.y(), c.y()});
        // pixel centers (col + 0.5) / px within [xmin, xmax]
        const int c0 = std::max(0, static_cast<int>(std::ceil((xmin - plate.origin.x()) * px - 0.5 - 1e-9)));
        const int c1 = std::min(width - 1, static_cast<int>(std::floor((xmax - plate.origin.x()) * px - 0.5 + 1e-9)));
        const int r0 = std::max(0, static_cast<int>(std::ceil((top - ymax) * py - 0.5 - 1e-9)));
        const int r1 = std::min(height - 1, static_cast<int>(std::floor((top - ymin) * py - 0.5 + 1e-9)));
        if (c0 > c1 || r0 > r1) continue;

        const double area2 = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
        const double ta = field.values[t[0]], tb = field.values[t[1]], tc = field.values[t[2]];
        for (int row = r0; row <= r1; ++row) {
            for (int col = c0; col <= c1; ++col) {
                const std::size_t idx = static_cast<std::size_t>(row) * width + col;
                if (!out.hole_mask[idx]) continue;  // first covering triangle wins
                const Point2 p = pixel_center(plate, width, height, col, row);
                if (predicates::orient2d(a, b, p) < 0 || predicates::orient2d(b, c, p) < 0 ||
                    predicates::orient2d(c, a, p) < 0)
                    continue;
                out.hole_mask[idx] = 0;
                if (out.degenerate_field) {
                    out.image.set(col, row, map.lut[0]);
                    continue;
                }
                const double la = ((b.x() - p.x()) * (c.y() - p.y()) - (b.y() - p.y()) * (c.x() - p.x())) / area2;
                const double lb = ((c.x() - p.x()) * (a.y() - p.y()) - (c.y() - p.y()) * (a.x() - p.x())) / area2;
                const double value = la * ta + lb * tb + (1.0 - la - lb) * tc;
                out.image.set(col, row, colormap_lookup(map, (value - lo) / (hi - lo)));
            }
        }
    }
    return out;
}

}  // namespace crackgen

#pragma once

#include <optional>
#include <vector>

#include "crackgen/colormap.hpp"
#include "crackgen/fem.hpp"
#include "crackgen/image.hpp"
#include "crackgen/mesh.hpp"

namespace crackgen {

struct RenderOptions {
    std::optional<Rgb> hole_fill;  // defaults to lut[0]
};

struct RenderResult {
    ThermogramImage image;
    std::vector<std::uint8_t> hole_mask;  // 1 where the pixel center is in no triangle
    bool degenerate_field = false;        // max - min < 1e-12: every pixel is lut[0]
};

/// Pixel-center sampling of the P1 field, normalized by the field's (min, max).
/// Row 0 is the top of the plate (y = origin.y + height), column 0 is x = origin.x.
RenderResult rasterize(const Mesh& mesh, const TemperatureField& field, const PlateSpec& plate, int width,
                       int height, const Colormap& map, const RenderOptions& options = {});

/// World coordinates of a pixel center.
Point2 pixel_center(const PlateSpec& plate, int width, int height, int col, int row);

}  // namespace crackgen

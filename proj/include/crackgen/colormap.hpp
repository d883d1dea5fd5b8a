#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace crackgen {

using Rgb = std::array<std::uint8_t, 3>;

enum class ColormapName { Jet, Inferno, Grayscale };

std::string_view to_string(ColormapName name);
ColormapName parse_colormap(std::string_view name);  // throws DomainError

struct Colormap {
    ColormapName name = ColormapName::Grayscale;
    std::array<Rgb, 256> lut{};
};

const Colormap& colormap(ColormapName name);

/// Continuous piecewise-linear jet, channels in [0, 1].
std::array<double, 3> jet(double t);

/// lut[round(t * 255)], t clamped to [0, 1].
Rgb colormap_lookup(const Colormap& map, double t);

}  // namespace crackgen

#include "crackgen/colormap.hpp"

#include <algorithm>
#include <cmath>

#include "crackgen/types.hpp"
#include "inferno_table.hpp"

namespace crackgen {

namespace {

std::uint8_t to_byte(double unit) {
    return static_cast<std::uint8_t>(std::floor(std::clamp(unit, 0.0, 1.0) * 255.0 + 0.5));
}

Colormap make_jet() {
    Colormap map{ColormapName::Jet, {}};
    for (int i = 0; i < 256; ++i) {
        const auto c = jet(i / 255.0);
        map.lut[i] = {to_byte(c[0]), to_byte(c[1]), to_byte(c[2])};
    }
    return map;
}

Colormap make_inferno() {
    Colormap map{ColormapName::Inferno, {}};
    for (int i = 0; i < 256; ++i) map.lut[i] = detail::kInfernoTable[i];
    return map;
}

Colormap make_gray() {
    Colormap map{ColormapName::Grayscale, {}};
    for (int i = 0; i < 256; ++i) {
        const auto v = static_cast<std::uint8_t>(i);
        map.lut[i] = {v, v, v};
    }
    return map;
}

}  // namespace

std::string_view to_string(ColormapName name) {
    switch (name) {
        case ColormapName::Jet: return "jet";
        case ColormapName::Inferno: return "inferno";
        case ColormapName::Grayscale: return "grayscale";
    }
    return "grayscale";
}

ColormapName parse_colormap(std::string_view name) {
    if (name == "jet") return ColormapName::Jet;
    if (name == "inferno") return ColormapName::Inferno;
    if (name == "grayscale" || name == "gray") return ColormapName::Grayscale;
    throw DomainError("unknown colormap '" + std::string(name) + "'");
}

const Colormap& colormap(ColormapName name) {
    static const Colormap jet_map = make_jet();
    static const Colormap inferno_map = make_inferno();
    static const Colormap gray_map = make_gray();
    switch (name) {
        case ColormapName::Jet: return jet_map;
        case ColormapName::Inferno: return inferno_map;
        case ColormapName::Grayscale: break;
    }
    return gray_map;
}

std::array<double, 3> jet(double t) {
    auto ramp = [t](double shift) { return std::clamp(1.5 - std::abs(4.0 * t - shift), 0.0, 1.0); };
    return {ramp(3.0), ramp(2.0), ramp(1.0)};
}

Rgb colormap_lookup(const Colormap& map, double t) {
    if (!(t >= 0.0)) t = 0.0;  // also catches NaN
    if (t > 1.0) t = 1.0;
    return map.lut[static_cast<std::size_t>(std::floor(t * 255.0 + 0.5))];
}

}  // namespace crackgen

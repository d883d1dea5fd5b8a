#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crackgen/colormap.hpp"
#include "crackgen/types.hpp"

namespace crackgen {

/// 8-bit RGB raster, row-major, row 0 at the top.
struct ThermogramImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // width * height * 3

    ThermogramImage() = default;
    ThermogramImage(int w, int h, Rgb fill = {0, 0, 0});

    std::size_t offset(int x, int y) const { return 3 * (static_cast<std::size_t>(y) * width + x); }
    Rgb at(int x, int y) const {
        const std::size_t o = offset(x, y);
        return {pixels[o], pixels[o + 1], pixels[o + 2]};
    }
    void set(int x, int y, const Rgb& c) {
        const std::size_t o = offset(x, y);
        pixels[o] = c[0];
        pixels[o + 1] = c[1];
        pixels[o + 2] = c[2];
    }

    friend bool operator==(const ThermogramImage&, const ThermogramImage&) = default;
};

/// Rec. 601 luma: 0.299 R + 0.587 G + 0.114 B.
template <typename Scalar>
Scalar luma(Scalar r, Scalar g, Scalar b) {
    return Scalar(0.299) * r + Scalar(0.587) * g + Scalar(0.114) * b;
}

Raster<double> to_luma(const ThermogramImage& img);

void write_png(const ThermogramImage& img, const std::string& path);
ThermogramImage read_png(const std::string& path);

}  // namespace crackgen

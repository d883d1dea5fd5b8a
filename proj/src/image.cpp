#include "crackgen/image.hpp"

#include <cstring>

#include <png.h>

namespace crackgen {

ThermogramImage::ThermogramImage(int w, int h, Rgb fill) : width(w), height(h) {
    if (w <= 0 || h <= 0) throw DomainError("image dimensions must be positive");
    pixels.resize(3 * static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
    for (std::size_t i = 0; i < pixels.size(); i += 3) {
        pixels[i] = fill[0];
        pixels[i + 1] = fill[1];
        pixels[i + 2] = fill[2];
    }
}

Raster<double> to_luma(const ThermogramImage& img) {
    Raster<double> gray(img.height, img.width);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x) {
            const Rgb c = img.at(x, y);
            gray(y, x) = luma<double>(c[0], c[1], c[2]);
        }
    return gray;
}

void write_png(const ThermogramImage& img, const std::string& path) {
    png_image desc;
    std::memset(&desc, 0, sizeof desc);
    desc.version = PNG_IMAGE_VERSION;
    desc.width = static_cast<png_uint_32>(img.width);
    desc.height = static_cast<png_uint_32>(img.height);
    desc.format = PNG_FORMAT_RGB;
    if (!png_image_write_to_file(&desc, path.c_str(), 0, img.pixels.data(), 0, nullptr)) {
        const std::string cause = desc.message;
        png_image_free(&desc);
        throw IOFailure(path, cause);
    }
}

ThermogramImage read_png(const std::string& path) {
    png_image desc;
    std::memset(&desc, 0, sizeof desc);
    desc.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&desc, path.c_str())) throw IOFailure(path, desc.message);
    desc.format = PNG_FORMAT_RGB;
    ThermogramImage img(static_cast<int>(desc.width), static_cast<int>(desc.height));
    if (!png_image_finish_read(&desc, nullptr, img.pixels.data(), 0, nullptr)) {
        const std::string cause = desc.message;
        png_image_free(&desc);
        throw IOFailure(path, cause);
    }
    return img;
}

}  // namespace crackgen

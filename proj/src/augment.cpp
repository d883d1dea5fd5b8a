#include "crackgen/augment.hpp"

#include <algorithm>
#include <cmath>

namespace crackgen {

namespace {

double clamp255(double c) { return std::clamp(c, 0.0, 255.0); }

std::uint8_t round_byte(double c) { return static_cast<std::uint8_t>(std::floor(clamp255(c) + 0.5)); }

}  // namespace

void validate(const PhotometricParams& p) {
    auto in = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
    if (!in(p.brightness, -128, 128)) throw DomainError("brightness must lie in [-128, 128]");
    if (!in(p.exposure, -2, 2)) throw DomainError("exposure must lie in [-2, 2]");
    if (!in(p.contrast, 0.25, 4)) throw DomainError("contrast must lie in [0.25, 4]");
    if (!in(p.saturation, 0, 2)) throw DomainError("saturation must lie in [0, 2]");
    if (!in(p.warmth, -64, 64)) throw DomainError("warmth must lie in [-64, 64]");
}

ThermogramImage apply_photometric(const ThermogramImage& img, const PhotometricParams& p) {
    validate(p);
    const double gain = std::exp2(p.exposure);
    ThermogramImage out = img;
    for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
        double c[3] = {double(img.pixels[i]), double(img.pixels[i + 1]), double(img.pixels[i + 2])};
        for (double& v : c) v = clamp255(v * gain);
        for (double& v : c) v = clamp255(v + p.brightness);
        for (double& v : c) v = clamp255((v - 127.5) * p.contrast + 127.5);
        c[0] = clamp255(c[0] + p.warmth);
        c[2] = clamp255(c[2] - p.warmth);
        const double y = luma(c[0], c[1], c[2]);
        for (double& v : c) v = clamp255(y + (v - y) * p.saturation);
        out.pixels[i] = round_byte(c[0]);
        out.pixels[i + 1] = round_byte(c[1]);
        out.pixels[i + 2] = round_byte(c[2]);
    }
    return out;
}

ThermogramImage local_blur(const ThermogramImage& img, const BlurParams& b) {
    if (!(b.sigma > 0.0)) throw DomainError("blur sigma must be > 0");
    const PixelRect& r = b.region;
    if (r.x0 < 0 || r.y0 < 0 || r.x1 > img.width || r.y1 > img.height || r.x0 > r.x1 || r.y0 > r.y1)
        throw DomainError("blur region must lie within the image");
    ThermogramImage out = img;
    if (r.x0 == r.x1 || r.y0 == r.y1) return out;

    const int radius = static_cast<int>(std::ceil(3.0 * b.sigma));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    for (int k = -radius; k <= radius; ++k)
        kernel[static_cast<std::size_t>(k + radius)] = std::exp(-0.5 * k * k / (b.sigma * b.sigma));

    // Horizontal pass over the rows the vertical pass will read.
    const int ry0 = std::max(0, r.y0 - radius), ry1 = std::min(img.height, r.y1 + radius);
    const int w = r.x1 - r.x0;
    std::vector<double> tmp(static_cast<std::size_t>(ry1 - ry0) * w * 3);
    for (int y = ry0; y < ry1; ++y) {
        for (int x = r.x0; x < r.x1; ++x) {
            double acc[3] = {0, 0, 0}, wsum = 0;
            for (int k = std::max(-radius, -x); k <= std::min(radius, img.width - 1 - x); ++k) {
                const double wk = kernel[static_cast<std::size_t>(k + radius)];
                const std::size_t o = img.offset(x + k, y);
                for (int ch = 0; ch < 3; ++ch) acc[ch] += wk * img.pixels[o + ch];
                wsum += wk;
            }
            const std::size_t t = 3 * (static_cast<std::size_t>(y - ry0) * w + (x - r.x0));
            for (int ch = 0; ch < 3; ++ch) tmp[t + ch] = acc[ch] / wsum;
        }
    }
    for (int y = r.y0; y < r.y1; ++y) {
        for (int x = r.x0; x < r.x1; ++x) {
            double acc[3] = {0, 0, 0}, wsum = 0;
            for (int k = std::max(-radius, -y); k <= std::min(radius, img.height - 1 - y); ++k) {
                const double wk = kernel[static_cast<std::size_t>(k + radius)];
                const std::size_t t = 3 * (static_cast<std::size_t>(y + k - ry0) * w + (x - r.x0));
                for (int ch = 0; ch < 3; ++ch) acc[ch] += wk * tmp[t + ch];
                wsum += wk;
            }
            const std::size_t o = img.offset(x, y);
            for (int ch = 0; ch < 3; ++ch) out.pixels[o + ch] = round_byte(acc[ch] / wsum);
        }
    }
    return out;
}

PixelRect dilated_region(const std::array<double, 4>& bbox, double dilation, int width, int height) {
    PixelRect r;
    r.x0 = std::clamp(static_cast<int>(std::floor(bbox[0] - dilation)), 0, width);
    r.y0 = std::clamp(static_cast<int>(std::floor(bbox[1] - dilation)), 0, height);
    r.x1 = std::clamp(static_cast<int>(std::ceil(bbox[0] + bbox[2] + dilation)), 0, width);
    r.y1 = std::clamp(static_cast<int>(std::ceil(bbox[1] + bbox[3] + dilation)), 0, height);
    return r;
}

PhotometricParams sample_augmentation(RngStream& rng, double strength) {
    if (!(strength >= 0.0 && strength <= 1.0)) throw DomainError("augmentation strength must lie in [0, 1]");
    auto around = [&](double identity, double lo, double hi) {
        return rng.uniform(identity - strength * (identity - lo), identity + strength * (hi - identity));
    };
    PhotometricParams p;
    p.brightness = around(0.0, -128.0, 128.0);
    p.exposure = around(0.0, -2.0, 2.0);
    p.contrast = around(1.0, 0.25, 4.0);
    p.saturation = around(1.0, 0.0, 2.0);
    p.warmth = around(0.0, -64.0, 64.0);
    return p;
}

AugmentationPlan sample_plan(RngStream& rng, double strength, const std::vector<std::array<double, 4>>& crack_bboxes,
                             int width, int height, double dilation) {
    AugmentationPlan plan;
    plan.photometric = sample_augmentation(rng, strength);
    plan.blur_sigma = strength * rng.uniform(0.5, 3.0);
    if (plan.blur_sigma > 0.0)
        for (const auto& bbox : crack_bboxes) plan.blur_regions.push_back(dilated_region(bbox, dilation, width, height));
    return plan;
}

ThermogramImage apply_plan(const ThermogramImage& img, const AugmentationPlan& plan) {
    ThermogramImage out = apply_photometric(img, plan.photometric);
    if (plan.blur_sigma > 0.0)
        for (const PixelRect& region : plan.blur_regions) out = local_blur(out, {plan.blur_sigma, region});
    return out;
}

}  // namespace crackgen

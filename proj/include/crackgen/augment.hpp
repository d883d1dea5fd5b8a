#pragma once

#include <array>
#include <vector>

#include "crackgen/image.hpp"
#include "crackgen/sampler.hpp"

namespace crackgen {

struct PhotometricParams {
    double brightness = 0.0;  // additive, [-128, 128]
    double exposure = 0.0;    // stops, [-2, 2]
    double contrast = 1.0;    // factor about mid-gray, [0.25, 4]
    double saturation = 1.0;  // factor about luma, [0, 2]
    double warmth = 0.0;      // +R / -B, [-64, 64]

    friend bool operator==(const PhotometricParams&, const PhotometricParams&) = default;
};

void validate(const PhotometricParams& p);

/// Stages in fixed order: exposure, brightness, contrast, warmth, saturation.
/// Each stage clamps to [0, 255]; the result is rounded half-up once at the end.
ThermogramImage apply_photometric(const ThermogramImage& img, const PhotometricParams& p);

/// Half-open pixel rectangle [x0, x1) x [y0, y1).
struct PixelRect {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;

    bool contains(int x, int y) const { return x >= x0 && x < x1 && y >= y0 && y < y1; }
};

struct BlurParams {
    double sigma = 1.0;
    PixelRect region;
};

/// Gaussian blur restricted to `region`; kernel truncated at 3 sigma and
/// renormalized over in-image taps. Pixels outside the region are untouched.
ThermogramImage local_blur(const ThermogramImage& img, const BlurParams& b);

/// Pixel rectangle covering a fractional bbox [x, y, w, h] dilated by `dilation`,
/// clipped to the image.
PixelRect dilated_region(const std::array<double, 4>& bbox, double dilation, int width, int height);

/// Each parameter uniform within its bounds scaled by `strength` about the identity.
PhotometricParams sample_augmentation(RngStream& rng, double strength);

/// Everything needed to replay one augmented copy: photometric pass, then a blur
/// of each region in order (skipped when blur_sigma is 0).
struct AugmentationPlan {
    PhotometricParams photometric;
    double blur_sigma = 0.0;
    std::vector<PixelRect> blur_regions;
};

/// Photometric draw followed by a blur sigma in strength * [0.5, 3] px over each
/// crack bbox dilated by `dilation` px.
AugmentationPlan sample_plan(RngStream& rng, double strength, const std::vector<std::array<double, 4>>& crack_bboxes,
                             int width, int height, double dilation = 10.0);

ThermogramImage apply_plan(const ThermogramImage& img, const AugmentationPlan& plan);

}  // namespace crackgen

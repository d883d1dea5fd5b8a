#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "crackgen/image.hpp"
#include "crackgen/types.hpp"

namespace crackgen {

/// Small correlation kernel, row-major coefficients.
struct Kernel {
    int width = 3;
    int height = 3;
    std::vector<double> coefficients;

    double operator()(int row, int col) const { return coefficients[static_cast<std::size_t>(row * width + col)]; }
};

void validate(const Kernel& k);

enum class EdgeOperator { Sobel, Prewitt, Roberts };

std::string to_string(EdgeOperator op);
EdgeOperator parse_edge_operator(const std::string& name);

/// The (x, y) kernel pair of an operator.
std::array<Kernel, 2> operator_kernels(EdgeOperator op);

/// Valid-region cross-correlation: output is (rows - kh + 1) x (cols - kw + 1).
template <typename Scalar>
Raster<Scalar> convolve(const Raster<Scalar>& img, const Kernel& k) {
    validate(k);
    if (img.rows() < k.height || img.cols() < k.width) throw DomainError("image smaller than kernel");
    Raster<Scalar> out = Raster<Scalar>::Zero(img.rows() - k.height + 1, img.cols() - k.width + 1);
    for (int i = 0; i < k.height; ++i)
        for (int j = 0; j < k.width; ++j) {
            const Scalar c = static_cast<Scalar>(k(i, j));
            if (c != Scalar(0)) out += c * img.block(i, j, out.rows(), out.cols());
        }
    return out;
}

template <typename Scalar>
Raster<Scalar> gradient_magnitude(const Raster<Scalar>& gray, EdgeOperator op) {
    const auto kernels = operator_kernels(op);
    const Raster<Scalar> gx = convolve(gray, kernels[0]);
    const Raster<Scalar> gy = convolve(gray, kernels[1]);
    return (gx.array().square() + gy.array().square()).sqrt().matrix();
}

/// Pixel rectangle in fractional pixels: x, y, width, height.
using PixelBox = std::array<double, 4>;

inline constexpr double kDegenerateScore = std::numeric_limits<double>::infinity();

/// Mean gradient magnitude at pixels whose centers fall inside any box dilated by
/// `dilation`, over the mean elsewhere. Returns kDegenerateScore when the outside
/// mean is below 1e-9.
double detectability_score(const ThermogramImage& img, const std::vector<PixelBox>& boxes, double dilation = 5.0,
                           EdgeOperator op = EdgeOperator::Sobel);
double detectability_score(const ThermogramImage& img, const PixelBox& box, double dilation = 5.0,
                           EdgeOperator op = EdgeOperator::Sobel);

struct QaRow {
    std::string image;
    double score = 0.0;
};

inline constexpr double kEasyThreshold = 2.0;

/// "image,score,difficulty" with difficulty easy when score >= threshold.
std::string format_qa_csv(const std::vector<QaRow>& rows, double threshold = kEasyThreshold);

}  // namespace crackgen

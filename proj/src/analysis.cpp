#include "crackgen/analysis.hpp"

#include <cmath>
#include <cstdio>

namespace crackgen {

void validate(const Kernel& k) {
    if (k.width < 1 || k.height < 1 || k.width * k.height != static_cast<int>(k.coefficients.size()))
        throw DomainError("kernel dimensions do not match coefficient count");
}

std::string to_string(EdgeOperator op) {
    switch (op) {
        case EdgeOperator::Sobel: return "sobel";
        case EdgeOperator::Prewitt: return "prewitt";
        case EdgeOperator::Roberts: return "roberts";
    }
    return "sobel";
}

EdgeOperator parse_edge_operator(const std::string& name) {
    if (name == "sobel") return EdgeOperator::Sobel;
    if (name == "prewitt") return EdgeOperator::Prewitt;
    if (name == "roberts") return EdgeOperator::Roberts;
    throw DomainError("unknown edge operator '" + name + "'");
}

std::array<Kernel, 2> operator_kernels(EdgeOperator op) {
    switch (op) {
        case EdgeOperator::Sobel:
            return {Kernel{3, 3, {-1, 0, 1, -2, 0, 2, -1, 0, 1}}, Kernel{3, 3, {-1, -2, -1, 0, 0, 0, 1, 2, 1}}};
        case EdgeOperator::Prewitt:
            return {Kernel{3, 3, {-1, 0, 1, -1, 0, 1, -1, 0, 1}}, Kernel{3, 3, {-1, -1, -1, 0, 0, 0, 1, 1, 1}}};
        case EdgeOperator::Roberts:
            return {Kernel{2, 2, {1, 0, 0, -1}}, Kernel{2, 2, {0, 1, -1, 0}}};
    }
    throw DomainError("unknown edge operator");
}

double detectability_score(const ThermogramImage& img, const std::vector<PixelBox>& boxes, double dilation,
                           EdgeOperator op) {
    const Raster<double> mag = gradient_magnitude(to_luma(img), op);
    const int shift = operator_kernels(op)[0].width / 2;  // response (i, j) centers on pixel (i + shift, j + shift)
    double inside = 0.0, outside = 0.0;
    std::size_t n_in = 0, n_out = 0;
    for (Eigen::Index i = 0; i < mag.rows(); ++i) {
        const double cy = static_cast<double>(i + shift) + 0.5;
        for (Eigen::Index j = 0; j < mag.cols(); ++j) {
            const double cx = static_cast<double>(j + shift) + 0.5;
            bool in = false;
            for (const PixelBox& b : boxes)
                in = in || (cx >= b[0] - dilation && cx <= b[0] + b[2] + dilation && cy >= b[1] - dilation &&
                            cy <= b[1] + b[3] + dilation);
            if (in) {
                inside += mag(i, j);
                ++n_in;
            } else {
                outside += mag(i, j);
                ++n_out;
            }
        }
    }
    const double mean_out = n_out ? outside / static_cast<double>(n_out) : 0.0;
    if (mean_out < 1e-9) return kDegenerateScore;
    return n_in ? inside / static_cast<double>(n_in) / mean_out : 0.0;
}

double detectability_score(const ThermogramImage& img, const PixelBox& box, double dilation, EdgeOperator op) {
    return detectability_score(img, std::vector<PixelBox>{box}, dilation, op);
}

std::string format_qa_csv(const std::vector<QaRow>& rows, double threshold) {
    std::string out = "image,score,difficulty\n";
    char line[64];
    for (const QaRow& r : rows) {
        std::snprintf(line, sizeof line, ",%.6g,%s\n", r.score, r.score >= threshold ? "easy" : "hard");
        out += r.image + line;
    }
    return out;
}

}  // namespace crackgen

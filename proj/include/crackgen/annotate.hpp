#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "crackgen/geometry.hpp"
#include "crackgen/types.hpp"

namespace crackgen {

/// Fractional pixel coordinates; v grows downward from the top of the plate.
Eigen::Vector2d world_to_pixel(const Point2& pt, const PlateSpec& plate, int width, int height);

struct AnnotationRecord {
    std::int64_t image_id = 0;
    int class_id = 0;                     // 0 = crack
    std::array<double, 4> bbox{};         // x_min, y_min, width, height in pixels
    std::array<Eigen::Vector2d, 4> polygon;  // pixel-space crack corners
    int crack_index = 0;
};

AnnotationRecord crack_annotation(const CrackSpec& crack, const PlateSpec& plate, int width, int height);

std::vector<AnnotationRecord> annotate_cracks(const std::vector<CrackSpec>& cracks, const PlateSpec& plate, int width,
                                              int height, std::int64_t image_id = 0);

/// Shoelace area of the pixel polygon.
double polygon_area(const AnnotationRecord& record);

/// "class cx cy w h" lines, normalized, 6 decimals.
std::string format_yolo(const std::vector<AnnotationRecord>& records, int width, int height);
void write_yolo(const std::vector<AnnotationRecord>& records, int width, int height, const std::string& path);

struct ImageEntry {
    std::int64_t id = 0;
    std::string file_name;
    int width = 0;
    int height = 0;
    std::int64_t sample_index = 0;
    std::string summary;  // short scenario description
};

struct DatasetManifest {
    std::vector<ImageEntry> images;
    std::vector<AnnotationRecord> annotations;
    std::uint64_t master_seed = 0;
    std::string config_hash;
};

/// Empty string when every annotation references a listed image.
std::string check_manifest(const DatasetManifest& manifest);

std::string format_coco(const DatasetManifest& manifest);
void write_coco(const DatasetManifest& manifest, const std::string& path);

/// Writes `text` to `path`, throwing IOFailure with the cause.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// FNV-1a 64-bit as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace crackgen

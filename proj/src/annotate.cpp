#include "crackgen/annotate.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace crackgen {

Eigen::Vector2d world_to_pixel(const Point2& pt, const PlateSpec& plate, int width, int height) {
    return {(pt.x() - plate.origin.x()) / plate.width * width,
            (plate.origin.y() + plate.height - pt.y()) / plate.height * height};
}

AnnotationRecord crack_annotation(const CrackSpec& crack, const PlateSpec& plate, int width, int height) {
    AnnotationRecord rec;
    const Polygon poly = crack_polygon(crack);
    double xmin = 1e300, ymin = 1e300, xmax = -1e300, ymax = -1e300;
    for (std::size_t i = 0; i < 4; ++i) {
        rec.polygon[i] = world_to_pixel(poly.vertices[i], plate, width, height);
        xmin = std::min(xmin, rec.polygon[i].x());
        xmax = std::max(xmax, rec.polygon[i].x());
        ymin = std::min(ymin, rec.polygon[i].y());
        ymax = std::max(ymax, rec.polygon[i].y());
    }
    rec.bbox = {xmin, ymin, xmax - xmin, ymax - ymin};
    return rec;
}

std::vector<AnnotationRecord> annotate_cracks(const std::vector<CrackSpec>& cracks, const PlateSpec& plate, int width,
                                              int height, std::int64_t image_id) {
    std::vector<AnnotationRecord> out;
    for (std::size_t k = 0; k < cracks.size(); ++k) {
        AnnotationRecord rec = crack_annotation(cracks[k], plate, width, height);
        rec.image_id = image_id;
        rec.crack_index = static_cast<int>(k);
        out.push_back(rec);
    }
    return out;
}

double polygon_area(const AnnotationRecord& record) {
    double twice = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& p = record.polygon[i];
        const auto& q = record.polygon[(i + 1) % 4];
        twice += p.x() * q.y() - q.x() * p.y();
    }
    return std::abs(twice) / 2.0;
}

std::string format_yolo(const std::vector<AnnotationRecord>& records, int width, int height) {
    std::string out;
    char line[128];
    for (const AnnotationRecord& r : records) {
        auto unit = [](double v) { return std::clamp(v, 0.0, 1.0); };
        const double cx = unit((r.bbox[0] + r.bbox[2] / 2) / width);
        const double cy = unit((r.bbox[1] + r.bbox[3] / 2) / height);
        const double w = unit(r.bbox[2] / width);
        const double h = unit(r.bbox[3] / height);
        std::snprintf(line, sizeof line, "%d %.6f %.6f %.6f %.6f\n", r.class_id, cx, cy, w, h);
        out += line;
    }
    return out;
}

void write_yolo(const std::vector<AnnotationRecord>& records, int width, int height, const std::string& path) {
    write_text_file(path, format_yolo(records, width, height));
}

std::string check_manifest(const DatasetManifest& manifest) {
    std::set<std::int64_t> ids;
    for (const ImageEntry& img : manifest.images)
        if (!ids.insert(img.id).second) return "duplicate image id " + std::to_string(img.id);
    for (const AnnotationRecord& a : manifest.annotations)
        if (!ids.count(a.image_id)) return "annotation references missing image " + std::to_string(a.image_id);
    return {};
}

std::string format_coco(const DatasetManifest& manifest) {
    using nlohmann::json;
    json images = json::array();
    for (const ImageEntry& img : manifest.images) {
        images.push_back({{"id", img.id},
                          {"file_name", img.file_name},
                          {"width", img.width},
                          {"height", img.height},
                          {"sample_index", img.sample_index},
                          {"scenario", img.summary}});
    }
    json annotations = json::array();
    std::int64_t next_id = 1;
    for (const AnnotationRecord& a : manifest.annotations) {
        json seg = json::array();
        for (const auto& p : a.polygon) {
            seg.push_back(p.x());
            seg.push_back(p.y());
        }
        annotations.push_back({{"id", next_id++},
                               {"image_id", a.image_id},
                               {"category_id", a.class_id + 1},
                               {"bbox", {a.bbox[0], a.bbox[1], a.bbox[2], a.bbox[3]}},
                               {"segmentation", json::array({seg})},
                               {"area", polygon_area(a)},
                               {"iscrowd", 0},
                               {"crack_index", a.crack_index}});
    }
    json doc = {{"info", {{"master_seed", manifest.master_seed}, {"config_hash", manifest.config_hash}}},
                {"images", images},
                {"annotations", annotations},
                {"categories", json::array({{{"id", 1}, {"name", "crack"}}})}};
    return doc.dump(1) + "\n";
}

void write_coco(const DatasetManifest& manifest, const std::string& path) {
    const std::string problem = check_manifest(manifest);
    if (!problem.empty()) throw DomainError("manifest: " + problem);
    write_text_file(path, format_coco(manifest));
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IOFailure(path, std::strerror(errno));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out) throw IOFailure(path, "write failed");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IOFailure(path, std::strerror(errno));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace crackgen

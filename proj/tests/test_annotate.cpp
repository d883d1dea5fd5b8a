#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "crackgen/annotate.hpp"
#include "crackgen/serialize.hpp"

using namespace crackgen;

namespace {

const PlateSpec kPlate{};

CrackSpec centered_crack(double angle = 0.0) {
    CrackSpec c;
    c.center = {2.0, 2.0};
    c.length = 0.5;
    c.width = 0.01;
    c.angle = angle;
    return c;
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "crackgen_annotate_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("world to pixel mapping") {
    CHECK(world_to_pixel({2, 2}, kPlate, 280, 280).isApprox(Eigen::Vector2d(140, 140)));
    CHECK(world_to_pixel({0, 4}, kPlate, 280, 280).norm() == doctest::Approx(0.0));
    CHECK(world_to_pixel({1, 1}, kPlate, 280, 280).isApprox(Eigen::Vector2d(70, 210)));
    CHECK(world_to_pixel({4, 0}, kPlate, 280, 280).isApprox(Eigen::Vector2d(280, 280)));

    PlateSpec shifted{2.0, 1.0, {1.0, -1.0}};
    CHECK(world_to_pixel({2, -0.5}, shifted, 100, 50).isApprox(Eigen::Vector2d(50, 25)));
}

TEST_CASE("axis-aligned crack box and label line") {
    const AnnotationRecord rec = crack_annotation(centered_crack(), kPlate, 280, 280);
    CHECK(rec.class_id == 0);
    CHECK(rec.bbox[0] == doctest::Approx(122.5));
    CHECK(rec.bbox[1] == doctest::Approx(139.65));
    CHECK(rec.bbox[2] == doctest::Approx(35.0));
    CHECK(rec.bbox[3] == doctest::Approx(0.7));
    CHECK(format_yolo({rec}, 280, 280) == "0 0.500000 0.500000 0.125000 0.002500\n");
}

TEST_CASE("a quarter turn swaps box sides") {
    const AnnotationRecord flat = crack_annotation(centered_crack(), kPlate, 280, 280);
    const AnnotationRecord upright = crack_annotation(centered_crack(std::numbers::pi / 2), kPlate, 280, 280);
    CHECK(upright.bbox[2] == doctest::Approx(flat.bbox[3]));
    CHECK(upright.bbox[3] == doctest::Approx(flat.bbox[2]));
}

TEST_CASE("boxes contain the pixel polygon and match its extent") {
    RngStream r(17);
    for (int i = 0; i < 200; ++i) {
        CrackSpec c;
        c.center = {r.uniform(1.0, 3.0), r.uniform(1.0, 3.0)};
        c.length = r.uniform(0.3, 0.7);
        c.width = std::pow(10.0, -r.uniform_int(2, 4));
        c.angle = r.uniform(0.0, std::numbers::pi);
        const AnnotationRecord rec = crack_annotation(c, kPlate, 280, 280);
        double xmin = 1e9, xmax = -1e9, ymin = 1e9, ymax = -1e9;
        for (const Point2& p : crack_polygon(c).vertices) {
            const Eigen::Vector2d q = world_to_pixel(p, kPlate, 280, 280);
            xmin = std::min(xmin, q.x());
            xmax = std::max(xmax, q.x());
            ymin = std::min(ymin, q.y());
            ymax = std::max(ymax, q.y());
        }
        REQUIRE(rec.bbox[0] == doctest::Approx(xmin));
        REQUIRE(rec.bbox[1] == doctest::Approx(ymin));
        REQUIRE(rec.bbox[0] + rec.bbox[2] == doctest::Approx(xmax));
        REQUIRE(rec.bbox[1] + rec.bbox[3] == doctest::Approx(ymax));
        // pixel area is the world area scaled by 70^2
        REQUIRE(polygon_area(rec) == doctest::Approx(c.length * c.width * 4900.0).epsilon(1e-9));
    }
}

TEST_CASE("label files") {
    const auto empty = scratch("empty.txt");
    write_yolo({}, 280, 280, empty.string());
    CHECK(std::filesystem::file_size(empty) == 0);

    CrackSpec a = centered_crack();
    CrackSpec b = centered_crack(std::numbers::pi / 2);
    b.center = {1.0, 3.0};
    const auto recs = annotate_cracks({a, b}, kPlate, 280, 280, 5);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].image_id == 5);
    CHECK(recs[1].crack_index == 1);
    const auto two = scratch("two.txt");
    write_yolo(recs, 280, 280, two.string());
    std::istringstream lines(read_text_file(two.string()));
    std::string first, second, extra;
    std::getline(lines, first);
    std::getline(lines, second);
    CHECK(first.rfind("0 0.500000 0.500000", 0) == 0);
    CHECK(second.rfind("0 0.250000 0.250000", 0) == 0);
    CHECK_FALSE(std::getline(lines, extra));

    CHECK_THROWS_AS(write_yolo(recs, 280, 280, "/nonexistent_dir/x.txt"), IOFailure);
}

TEST_CASE("normalized values are clamped to the unit interval") {
    AnnotationRecord rec;
    rec.bbox = {-5.0, 270.0, 20.0, 30.0};
    double cls, cx, cy, w, h;
    std::istringstream in(format_yolo({rec}, 280, 280));
    in >> cls >> cx >> cy >> w >> h;
    for (double v : {cx, cy, w, h}) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("COCO document") {
    DatasetManifest m;
    m.master_seed = 42;
    m.config_hash = "abc";
    m.images.push_back({1, "images/sample_000000.png", 280, 280, 0, "steady"});
    const CrackSpec c = centered_crack(0.3);
    m.annotations = annotate_cracks({c}, kPlate, 280, 280, 1);
    CHECK(check_manifest(m).empty());

    const Json doc = Json::parse(format_coco(m));
    REQUIRE(doc["images"].size() == 1);
    REQUIRE(doc["annotations"].size() == 1);
    CHECK(doc["images"][0]["file_name"] == "images/sample_000000.png");
    CHECK(doc["info"]["master_seed"] == 42);
    CHECK(doc["categories"][0]["name"] == "crack");
    const Json& ann = doc["annotations"][0];
    CHECK(ann["id"] == 1);
    CHECK(ann["image_id"] == 1);
    CHECK(ann["category_id"] == 1);
    CHECK(ann["iscrowd"] == 0);
    REQUIRE(ann["segmentation"].size() == 1);
    CHECK(ann["segmentation"][0].size() == 8);
    for (int k = 0; k < 4; ++k) CHECK(ann["bbox"][k].get<double>() == doctest::Approx(m.annotations[0].bbox[k]).epsilon(1e-6));
    CHECK(ann["area"].get<double>() == doctest::Approx(c.length * c.width * 4900.0).epsilon(1e-6));

    m.annotations[0].image_id = 9;
    CHECK_FALSE(check_manifest(m).empty());
    CHECK_THROWS_AS(write_coco(m, scratch("bad.json").string()), DomainError);
}

TEST_CASE("empty COCO manifest") {
    const Json doc = Json::parse(format_coco(DatasetManifest{}));
    CHECK(doc["images"].empty());
    CHECK(doc["annotations"].empty());
    CHECK(doc["categories"].size() == 1);
}

TEST_CASE("content hash") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("a") != fnv1a_hex("b"));
}

TEST_CASE("sidecar round trip") {
    SampleMetadata meta;
    meta.image_file = "images/sample_000003.png";
    meta.scenario = sample_scenario(SamplerConfig{}, 42, 3);
    meta.scenario.mode.kind = SolveMode::Kind::Transient;
    meta.scenario.mode.dt = 12.5;
    meta.scenario.mode.t_end = 250.0;
    meta.hole_fill = Rgb{1, 2, 3};
    AugmentationPlan plan;
    plan.photometric.brightness = 12.25;
    plan.blur_sigma = 1.5;
    plan.blur_regions = {{1, 2, 30, 40}};
    meta.augmentation = plan;
    meta.stats = {17, 3e-11};
    meta.node_count = 812;
    meta.triangle_count = 1500;

    const std::string text = format_metadata(meta);
    const SampleMetadata back = parse_metadata(text);
    CHECK(format_metadata(back) == text);
    CHECK(back.scenario.cracks.size() == meta.scenario.cracks.size());
    CHECK(back.scenario.cracks[0].length == meta.scenario.cracks[0].length);
    CHECK(back.scenario.edge_bcs == meta.scenario.edge_bcs);
    CHECK(back.augmentation->photometric == plan.photometric);
    CHECK(*back.hole_fill == Rgb{1, 2, 3});

    const auto path = scratch("meta.json");
    write_metadata(meta, path.string());
    CHECK(format_metadata(read_metadata(path.string())) == text);

    SampleMetadata other = meta;
    other.scenario = sample_scenario(SamplerConfig{}, 43, 3);
    CHECK(format_metadata(other) != text);

    CHECK_THROWS_AS(parse_metadata("{not json"), DomainError);
    CHECK_THROWS_AS(parse_metadata("{}"), DomainError);
}

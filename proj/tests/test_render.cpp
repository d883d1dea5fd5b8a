#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "crackgen/colormap.hpp"
#include "crackgen/image.hpp"
#include "crackgen/predicates.hpp"
#include "crackgen/render.hpp"

using namespace crackgen;

namespace {

std::uint8_t half_up(double v) { return static_cast<std::uint8_t>(std::floor(v * 255.0 + 0.5)); }

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

struct Solved {
    ScenarioSpec scenario;
    Mesh mesh;
    TemperatureField field;
};

Solved solve(ScenarioSpec s) {
    Solved out{s, triangulate(s, SizingParams{}), {}};
    out.field = solve_scenario(out.scenario, out.mesh);
    return out;
}

ScenarioSpec slab(std::vector<CrackSpec> cracks = {}) {
    ScenarioSpec s;
    s.cracks = std::move(cracks);
    s.edge_bcs[0].bc = BoundaryCondition::dirichlet(0);
    s.edge_bcs[1].bc = BoundaryCondition::dirichlet(100);
    return s;
}

double segment_distance(const Point2& p, const Point2& a, const Point2& b) {
    const Point2 ab = b - a;
    const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

}  // namespace

TEST_CASE("grayscale lookup") {
    const Colormap& g = colormap(ColormapName::Grayscale);
    CHECK(colormap_lookup(g, 0.0) == Rgb{0, 0, 0});
    CHECK(colormap_lookup(g, 1.0) == Rgb{255, 255, 255});
    CHECK(colormap_lookup(g, 0.5) == Rgb{128, 128, 128});
    CHECK(colormap_lookup(g, -3.0) == Rgb{0, 0, 0});
    CHECK(colormap_lookup(g, 7.0) == Rgb{255, 255, 255});
    CHECK(colormap_lookup(g, std::nan("")) == Rgb{0, 0, 0});
}

TEST_CASE("jet follows the piecewise-linear definition") {
    // continuous curve at the midpoint: r = b = 0.5, g = 1
    const auto mid = jet(0.5);
    CHECK(Rgb{half_up(mid[0]), half_up(mid[1]), half_up(mid[2])} == Rgb{128, 255, 128});
    const Colormap& map = colormap(ColormapName::Jet);
    for (int i = 0; i < 256; ++i) {
        const double t = i / 255.0;
        const Rgb expected{half_up(clamp01(1.5 - std::abs(4 * t - 3))), half_up(clamp01(1.5 - std::abs(4 * t - 2))),
                           half_up(clamp01(1.5 - std::abs(4 * t - 1)))};
        CHECK(map.lut[static_cast<std::size_t>(i)] == expected);
    }
    // lookup quantizes t to the nearest of the 256 entries
    CHECK(colormap_lookup(map, 0.5) == map.lut[128]);
    CHECK(colormap_lookup(map, 0.0) == Rgb{0, 0, 128});
    CHECK(colormap_lookup(map, 1.0) == Rgb{128, 0, 0});
}

TEST_CASE("inferno matches the published table") {
    const Colormap& map = colormap(ColormapName::Inferno);
    CHECK(map.lut[0] == Rgb{0, 0, 4});
    CHECK(map.lut[64] == Rgb{87, 16, 110});
    CHECK(map.lut[128] == Rgb{188, 55, 84});
    CHECK(map.lut[200] == Rgb{251, 157, 7});
    CHECK(map.lut[255] == Rgb{252, 255, 164});
}

TEST_CASE("colormap names round-trip") {
    for (ColormapName n : {ColormapName::Jet, ColormapName::Inferno, ColormapName::Grayscale})
        CHECK(parse_colormap(to_string(n)) == n);
    CHECK_THROWS_AS(parse_colormap("viridis"), DomainError);
}

TEST_CASE("pixel centers") {
    const PlateSpec plate;
    CHECK((pixel_center(plate, 280, 280, 0, 0) - Point2(2.0 / 280, 4 - 2.0 / 280)).norm() < 1e-15);
    CHECK((pixel_center(plate, 280, 280, 279, 279) - Point2(4 - 2.0 / 280, 2.0 / 280)).norm() < 1e-14);
}

TEST_CASE("uniform field renders as lut[0]") {
    ScenarioSpec s;
    for (EdgeBC& e : s.edge_bcs) e.bc = BoundaryCondition::dirichlet(40);
    s.colormap = ColormapName::Inferno;
    const Solved solved = solve(s);
    const RenderResult r =
        rasterize(solved.mesh, solved.field, s.plate, 64, 64, colormap(ColormapName::Inferno));
    CHECK(r.degenerate_field);
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) REQUIRE(r.image.at(x, y) == colormap(ColormapName::Inferno).lut[0]);
}

TEST_CASE("linear field renders monotone columns and identical rows") {
    const Solved solved = solve(slab());
    const RenderResult r =
        rasterize(solved.mesh, solved.field, PlateSpec{}, 280, 280, colormap(ColormapName::Grayscale));
    CHECK_FALSE(r.degenerate_field);
    for (int y = 1; y < 280; ++y)
        for (int x = 0; x < 280; ++x) REQUIRE(r.image.at(x, y) == r.image.at(x, 0));
    for (int x = 1; x < 280; ++x) REQUIRE(r.image.at(x, 0)[0] >= r.image.at(x - 1, 0)[0]);
    CHECK(r.image.at(0, 0)[0] <= 1);
    CHECK(r.image.at(279, 0)[0] >= 254);
    // T = 25 x at pixel centers, normalized by (0, 100)
    for (int x = 0; x < 280; ++x) {
        const double t = (x + 0.5) / 280.0;
        CHECK(std::abs(int(r.image.at(x, 0)[0]) - int(half_up(t))) <= 1);
    }
}

TEST_CASE("sub-pixel cracks leave at most one-pixel hole runs") {
    for (double angle : {0.0, std::numbers::pi / 2}) {
        const Solved solved = solve(slab({{{2.02, 2.02}, 0.5, 0.01, angle}}));
        const RenderResult r =
            rasterize(solved.mesh, solved.field, PlateSpec{}, 280, 280, colormap(ColormapName::Grayscale));
        int longest_across = 0, holes = 0;
        for (int x = 0; x < 280; ++x)
            for (int y = 0; y < 280; ++y) {
                if (!r.hole_mask[static_cast<std::size_t>(y * 280 + x)]) continue;
                ++holes;
                int run = 0;
                if (angle == 0.0) {
                    while (y + run < 280 && r.hole_mask[static_cast<std::size_t>((y + run) * 280 + x)]) ++run;
                } else {
                    while (x + run < 280 && r.hole_mask[static_cast<std::size_t>(y * 280 + x + run)]) ++run;
                }
                longest_across = std::max(longest_across, run);
            }
        CHECK(longest_across <= 1);
        CHECK(holes > 0);
    }
}

TEST_CASE("hole pixels are exactly the pixel centers inside cracks") {
    const SamplerConfig cfg;
    for (int i = 0; i < 6; ++i) {
        const ScenarioSpec s = sample_scenario(cfg, 21, i);
        const Solved solved = solve(s);
        const RenderResult r = rasterize(solved.mesh, solved.field, s.plate, 280, 280, colormap(s.colormap));
        for (int y = 0; y < 280; ++y)
            for (int x = 0; x < 280; ++x) {
                const Point2 c = pixel_center(s.plate, 280, 280, x, y);
                bool inside = false, near_edge = false;
                for (const CrackSpec& crack : s.cracks) {
                    const Polygon poly = crack_polygon(crack);
                    inside = inside || point_in_polygon(c, poly);
                    for (std::size_t k = 0; k < 4; ++k)
                        near_edge = near_edge || segment_distance(c, poly.vertices[k], poly.vertices[(k + 1) % 4]) < 1e-12;
                }
                if (near_edge) continue;
                REQUIRE(bool(r.hole_mask[static_cast<std::size_t>(y * 280 + x)]) == inside);
                if (inside) REQUIRE(r.image.at(x, y) == colormap(s.colormap).lut[0]);
            }
    }
}

TEST_CASE("grayscale rendering is monotone in temperature") {
    const ScenarioSpec s = sample_scenario(SamplerConfig{}, 5, 2);
    const Solved solved = solve(s);
    const RenderResult r = rasterize(solved.mesh, solved.field, s.plate, 96, 96, colormap(ColormapName::Grayscale));
    // independent point location and interpolation
    std::vector<std::pair<double, int>> samples;
    for (int y = 0; y < 96; ++y)
        for (int x = 0; x < 96; ++x) {
            if (r.hole_mask[static_cast<std::size_t>(y * 96 + x)]) continue;
            const Point2 p = pixel_center(s.plate, 96, 96, x, y);
            for (const auto& t : solved.mesh.triangles) {
                const Point2 &a = solved.mesh.nodes[t[0]], &b = solved.mesh.nodes[t[1]], &c = solved.mesh.nodes[t[2]];
                const double wa = predicates::orient2d(b, c, p), wb = predicates::orient2d(c, a, p),
                             wc = predicates::orient2d(a, b, p);
                if (wa < 0 || wb < 0 || wc < 0) continue;
                const double v = (wa * solved.field.values[t[0]] + wb * solved.field.values[t[1]] +
                                  wc * solved.field.values[t[2]]) / (wa + wb + wc);
                samples.emplace_back(v, r.image.at(x, y)[0]);
                break;
            }
        }
    REQUIRE(samples.size() > 9000);
    std::sort(samples.begin(), samples.end());
    const double range = solved.field.values.maxCoeff() - solved.field.values.minCoeff();
    int running_max = -1;
    std::size_t lagging = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        while (lagging < i && samples[lagging].first < samples[i].first - 1e-9 * range)
            running_max = std::max(running_max, samples[lagging++].second);
        REQUIRE(samples[i].second >= running_max);
    }
}

TEST_CASE("rendering is deterministic and validates its size") {
    const Solved solved = solve(slab({{{1.5, 2.5}, 0.4, 0.001, 0.4}}));
    const auto& map = colormap(ColormapName::Jet);
    const RenderResult a = rasterize(solved.mesh, solved.field, PlateSpec{}, 280, 280, map);
    const RenderResult b = rasterize(solved.mesh, solved.field, PlateSpec{}, 280, 280, map);
    CHECK(a.image == b.image);
    CHECK(a.hole_mask == b.hole_mask);
    CHECK_THROWS_AS(rasterize(solved.mesh, solved.field, PlateSpec{}, 15, 280, map), DomainError);
    RenderOptions white;
    white.hole_fill = Rgb{255, 255, 255};
    const RenderResult c = rasterize(solved.mesh, solved.field, PlateSpec{}, 280, 280, map, white);
    for (std::size_t i = 0; i < c.hole_mask.size(); ++i)
        if (c.hole_mask[i]) CHECK(c.image.at(int(i % 280), int(i / 280)) == Rgb{255, 255, 255});
}

TEST_CASE("PNG round trip and layout") {
    ThermogramImage img(37, 21);
    for (int y = 0; y < 21; ++y)
        for (int x = 0; x < 37; ++x)
            img.set(x, y, {std::uint8_t(x * 7), std::uint8_t(y * 11), std::uint8_t((x + y) % 256)});
    const auto dir = std::filesystem::temp_directory_path() / "crackgen_png_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "a.png").string();
    write_png(img, path);
    CHECK(read_png(path) == img);

    std::ifstream in(path, std::ios::binary);
    std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    REQUIRE(bytes.size() > 33);
    CHECK(bytes[1] == 'P');
    CHECK(bytes[24] == 8);  // bit depth
    CHECK(bytes[25] == 2);  // truecolor, no alpha
    const std::string chunk_types(bytes.begin(), bytes.end());
    CHECK(chunk_types.find("tIME") == std::string::npos);

    // identical images give identical files
    write_png(img, (dir / "b.png").string());
    std::ifstream in2((dir / "b.png").string(), std::ios::binary);
    std::vector<unsigned char> bytes2((std::istreambuf_iterator<char>(in2)), std::istreambuf_iterator<char>());
    CHECK(bytes == bytes2);

    CHECK_THROWS_AS(write_png(img, "/nonexistent/dir/x.png"), IOFailure);
    CHECK_THROWS_AS(read_png((dir / "missing.png").string()), IOFailure);
    std::filesystem::remove_all(dir);
}

TEST_CASE("luma weights") {
    CHECK(luma(200.0, 100.0, 50.0) == doctest::Approx(0.299 * 200 + 0.587 * 100 + 0.114 * 50));
    ThermogramImage img(2, 1, {255, 255, 255});
    img.set(1, 0, {255, 0, 0});
    const Raster<double> y = to_luma(img);
    CHECK(y(0, 0) == doctest::Approx(255.0));
    CHECK(y(0, 1) == doctest::Approx(0.299 * 255));
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "crackgen/geometry.hpp"

using namespace crackgen;

namespace {

bool same_vertex_set(const Polygon& a, const Polygon& b, double tol) {
    if (a.vertices.size() != b.vertices.size()) return false;
    for (const Point2& p : a.vertices) {
        const bool found = std::any_of(b.vertices.begin(), b.vertices.end(),
                                       [&](const Point2& q) { return (p - q).norm() <= tol; });
        if (!found) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("crack polygon of an axis-aligned crack") {
    const Polygon p = crack_polygon({{2, 2}, 0.5, 0.01, 0.0});
    REQUIRE(p.vertices.size() == 4);
    const Point2 expected[] = {{1.75, 1.995}, {2.25, 1.995}, {2.25, 2.005}, {1.75, 2.005}};
    for (int i = 0; i < 4; ++i) {
        CHECK(p.vertices[i].x() == doctest::Approx(expected[i].x()).epsilon(1e-14));
        CHECK(p.vertices[i].y() == doctest::Approx(expected[i].y()).epsilon(1e-14));
    }
}

TEST_CASE("crack polygon is symmetric under a half turn") {
    const CrackSpec c{{1.3, 2.7}, 0.6, 0.001, 0.4};
    CrackSpec flipped = c;
    flipped.angle += std::numbers::pi;
    CHECK(same_vertex_set(crack_polygon(c), crack_polygon(flipped), 1e-12));
}

TEST_CASE("rotated crack corners sit at the half-diagonal") {
    const CrackSpec c{{1, 1}, 0.4, 0.001, std::numbers::pi / 4};
    const double half_diag = std::hypot(0.2, 0.0005);
    const Polygon p = crack_polygon(c);
    for (const Point2& v : p.vertices) CHECK((v - c.center).norm() == doctest::Approx(half_diag).epsilon(1e-14));
    // rotation by hand: first corner is R(pi/4) * (-l/2, -w/2)
    const double s = std::sqrt(0.5);
    const Point2 first = c.center + Point2(s * (-0.2) - s * (-0.0005), s * (-0.2) + s * (-0.0005));
    CHECK((p.vertices[0] - first).norm() < 1e-15);
}

TEST_CASE("crack polygon area and orientation") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 500; ++i) {
        const double l = 0.3 + 0.4 * u(gen);
        const double w = std::pow(10.0, -2.0 - 2.0 * u(gen));
        const Polygon p = crack_polygon({{4 * u(gen), 4 * u(gen)}, l, w, 2 * std::numbers::pi * u(gen)});
        CHECK(signed_area(p) > 0);
        CHECK(std::abs(signed_area(p) - l * w) <= 1e-12 * l * w + 1e-15);
        CHECK(perimeter(p) == doctest::Approx(2 * (l + w)).epsilon(1e-12));
    }
}

TEST_CASE("crack tips lie on the centerline") {
    const auto tips = crack_tips({{2, 2}, 0.5, 0.01, std::numbers::pi / 2});
    CHECK((tips[0] - Point2(2, 1.75)).norm() < 1e-15);
    CHECK((tips[1] - Point2(2, 2.25)).norm() < 1e-15);
}

TEST_CASE("containment in the plate") {
    const PlateSpec plate;
    CHECK(crack_within_plate({{2, 2}, 0.5, 0.01, 0.0}, plate, 0.05));
    CHECK_FALSE(crack_within_plate({{0, 0}, 0.5, 0.01, 0.0}, plate, 0.05));
    // right tip at 3.8 + 0.35 = 4.15 > 4 - 0.05
    CHECK_FALSE(crack_within_plate({{3.8, 2}, 0.7, 0.01, 0.0}, plate, 0.05));
    CHECK(crack_within_plate({{3.6, 2}, 0.7, 0.01, 0.0}, plate, 0.05));
}

TEST_CASE("a positive margin implies zero-margin containment") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0, 1);
    const PlateSpec plate;
    for (int i = 0; i < 2000; ++i) {
        const CrackSpec c{{4 * u(gen), 4 * u(gen)}, 0.3 + 0.4 * u(gen), 0.01, std::numbers::pi * u(gen)};
        const double m = 0.3 * u(gen);
        if (crack_within_plate(c, plate, m)) CHECK(crack_within_plate(c, plate, 0.0));
    }
}

TEST_CASE("overlap tests") {
    const CrackSpec a{{2, 2}, 0.5, 0.01, 0.3};
    CHECK(cracks_overlap(a, a, 0.05));
    CHECK_FALSE(cracks_overlap({{0.5, 0.5}, 0.5, 0.01, 0.0}, {{3.5, 3.5}, 0.5, 0.01, 0.0}, 0.05));
    // collinear, tip gap 0.02 < clearance 0.05
    const CrackSpec left{{1.5, 2}, 0.5, 0.01, 0.0};
    const CrackSpec right{{2.02, 2}, 0.5, 0.01, 0.0};
    CHECK(cracks_overlap(left, right, 0.05));
    CHECK_FALSE(cracks_overlap(left, right, 0.01));
    // parallel slots 0.06 apart between facing sides
    CHECK_FALSE(cracks_overlap({{2, 2}, 0.5, 0.01, 0.0}, {{2, 2.07}, 0.5, 0.01, 0.0}, 0.05));
    CHECK(cracks_overlap({{2, 2}, 0.5, 0.01, 0.0}, {{2, 2.05}, 0.5, 0.01, 0.0}, 0.05));
}

TEST_CASE("overlap is symmetric") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 3000; ++i) {
        const CrackSpec a{{4 * u(gen), 4 * u(gen)}, 0.3 + 0.4 * u(gen), 0.01, std::numbers::pi * u(gen)};
        const CrackSpec b{{4 * u(gen), 4 * u(gen)}, 0.3 + 0.4 * u(gen), 0.001, std::numbers::pi * u(gen)};
        const double clearance = 0.1 * u(gen);
        CHECK(cracks_overlap(a, b, clearance) == cracks_overlap(b, a, clearance));
    }
}

TEST_CASE("point in polygon") {
    const Polygon sq{{{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}};
    CHECK(point_in_polygon({0, 0}, sq));
    CHECK(point_in_polygon({0.99, -0.99}, sq));
    CHECK_FALSE(point_in_polygon({1.01, 0}, sq));
    const Polygon hex = regular_polygon({1, 1}, 0.5, 6);
    CHECK(signed_area(hex) == doctest::Approx(1.5 * std::sqrt(3.0) * 0.25));
    CHECK(point_in_polygon({1, 1}, hex));
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(validate(CrackSpec{{1, 1}, 0.01, 0.02, 0}), DomainError);
    CHECK_THROWS_AS(validate(CrackSpec{{1, 1}, -1, 0.01, 0}), DomainError);
    CHECK_THROWS_AS(validate(PlateSpec{0, 4, {0, 0}}), DomainError);
    CHECK_THROWS_AS(validate(MaterialProps{50, 0, 490}), DomainError);
    CHECK_NOTHROW(validate(MaterialProps{}));
    CHECK(MaterialProps{}.diffusivity() == doctest::Approx(50.0 / (7850.0 * 490.0)));
}

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "crackgen/fem.hpp"
#include "crackgen/mesh.hpp"

namespace crackgen {

template <typename Scalar>
Scalar analytic_slab(Scalar x, Scalar length, Scalar t_left, Scalar t_right) {
    if (!(x >= Scalar(0) && x <= length)) throw DomainError("analytic_slab: x outside [0, L]");
    return t_left + (t_right - t_left) * x / length;
}

/// Insulated circular hole of radius a in a far-field gradient G along x.
template <typename Scalar>
Scalar analytic_hole(Scalar r, Scalar theta, Scalar a, Scalar gradient, Scalar t_ref) {
    if (!(r >= a)) throw DomainError("analytic_hole: r < a lies inside the hole");
    using std::cos;
    return t_ref + gradient * cos(theta) * (r + a * a / r);
}

struct ErrorReport {
    double l2_relative = 0.0;
    double linf = 0.0;
    std::size_t sample_count = 0;
    std::string region;
};

using PointOracle = std::function<double(const Point2&)>;
using RegionPredicate = std::function<bool(const Point2&)>;

/// Nodal errors over nodes in the region. Throws EmptyRegion if none qualify.
ErrorReport field_error(const Mesh& mesh, const TemperatureField& field, const PointOracle& oracle,
                        const RegionPredicate& region, const std::string& region_name = "");

/// Least-squares slope of log(error) against log(h).
double fitted_order(const std::vector<double>& h, const std::vector<double>& error);

struct HoleBenchmark {
    double radius = 0.4;
    double gradient = 25.0;
    double t_ref = 0.0;
    int polygon_sides = 64;    // 0: scale sides with h
    bool analytic_trace = true;  // false: left/right Dirichlet from the far field, top/bottom insulated
};

struct BenchRun {
    double h = 0.0;
    std::size_t nodes = 0;
    ErrorReport error;
};

/// Plate centered on the hole, annulus a <= r <= 2a.
BenchRun run_hole_benchmark(const HoleBenchmark& bench, const PlateSpec& plate, const SizingParams& sizing,
                            const SolverConfig& solver = {});

/// Left/right Dirichlet, insulated top and bottom, no crack; error over all nodes.
BenchRun run_slab_benchmark(const PlateSpec& plate, const SizingParams& sizing, double t_left = 0.0,
                            double t_right = 100.0, const SolverConfig& solver = {});

struct ConvergenceStudy {
    std::vector<BenchRun> runs;
    double order = 0.0;
};

/// Hole benchmark over decreasing sizes (at least three). Polygon sides follow
/// h when bench.polygon_sides is 0 so geometric error shrinks with the mesh.
ConvergenceStudy convergence_study(const HoleBenchmark& bench, const PlateSpec& plate, const std::vector<double>& h_list,
                                   const SizingParams& base = {}, const SolverConfig& solver = {});

struct BenchThresholds {
    double slab_l2 = 1e-6;
    double hole_l2 = 0.02;
    double order_lo = 1.7;
    double order_hi = 2.3;
};

struct BenchReport {
    BenchRun slab;
    BenchRun hole;
    ConvergenceStudy study;
    BenchThresholds thresholds;

    bool slab_ok() const { return slab.error.l2_relative <= thresholds.slab_l2; }
    bool hole_ok() const { return hole.error.l2_relative <= thresholds.hole_l2; }
    bool order_ok() const { return study.order >= thresholds.order_lo && study.order <= thresholds.order_hi; }
    bool ok() const { return slab_ok() && hole_ok() && order_ok(); }
};

/// Default h list for the study: 0.16, 0.08, 0.04, 0.02.
std::vector<double> default_h_list();

BenchReport run_benchmarks(const std::vector<double>& h_list = default_h_list(), const SizingParams& sizing = {});

std::string format_bench_text(const BenchReport& report);
std::string format_bench_csv(const BenchReport& report);

}  // namespace crackgen

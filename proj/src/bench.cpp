#include "crackgen/bench.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace crackgen {

ErrorReport field_error(const Mesh& mesh, const TemperatureField& field, const PointOracle& oracle,
                        const RegionPredicate& region, const std::string& region_name) {
    ErrorReport rep;
    rep.region = region_name;
    double diff2 = 0.0, ref2 = 0.0;
    for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
        const Point2& p = mesh.nodes[i];
        if (!region(p)) continue;
        const double exact = oracle(p);
        const double d = field.values[static_cast<Eigen::Index>(i)] - exact;
        diff2 += d * d;
        ref2 += exact * exact;
        rep.linf = std::max(rep.linf, std::abs(d));
        ++rep.sample_count;
    }
    if (rep.sample_count == 0) throw EmptyRegion("no mesh node in region " + region_name);
    rep.l2_relative = ref2 > 0.0 ? std::sqrt(diff2 / ref2) : std::sqrt(diff2);
    return rep;
}

double fitted_order(const std::vector<double>& h, const std::vector<double>& error) {
    if (h.size() != error.size() || h.size() < 2) throw DomainError("fitted_order needs matching lists of length >= 2");
    const double n = static_cast<double>(h.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0.0 && error[i] > 0.0)) throw DomainError("fitted_order needs positive sizes and errors");
        const double x = std::log(h[i]), y = std::log(error[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

BenchRun run_hole_benchmark(const HoleBenchmark& bench, const PlateSpec& plate, const SizingParams& sizing,
                            const SolverConfig& solver) {
    const Point2 center = plate.origin + Point2(plate.width / 2, plate.height / 2);
    const double a = bench.radius;
    int sides = bench.polygon_sides;
    if (sides <= 0) sides = std::max(16, static_cast<int>(std::ceil(2.0 * std::numbers::pi * a / sizing.h_target)));

    MeshDomain domain;
    domain.plate = plate;
    HoleSpec hole;
    hole.outline = regular_polygon(center, a, sides);
    hole.seed = center;
    hole.tag = crack_tag(0);
    domain.holes.push_back(hole);
    const Mesh mesh = triangulate(domain, sizing);

    auto exact = [&](const Point2& p) {
        const Point2 d = p - center;
        const double r = std::max(d.norm(), a);  // polygon vertices sit on the circle, chords inside it
        return analytic_hole(r, std::atan2(d.y(), d.x()), a, bench.gradient, bench.t_ref);
    };

    BoundaryConditions bcs;
    if (bench.analytic_trace) {
        for (Edge e : kAllEdges) bcs.set_dirichlet_profile(edge_tag(e), exact);
    } else {
        bcs.set_dirichlet_profile(edge_tag(Edge::Left), exact);
        bcs.set_dirichlet_profile(edge_tag(Edge::Right), exact);
    }
    const TemperatureField field = solve_steady(assemble(mesh, MaterialProps{}, bcs), solver);

    BenchRun run;
    run.h = sizing.h_target;
    run.nodes = mesh.nodes.size();
    run.error = field_error(
        mesh, field, exact,
        [&](const Point2& p) {
            const double r = (p - center).norm();
            return r >= a * (1 - 1e-9) * std::cos(std::numbers::pi / sides) && r <= 2 * a;
        },
        "a <= r <= 2a");
    return run;
}

BenchRun run_slab_benchmark(const PlateSpec& plate, const SizingParams& sizing, double t_left, double t_right,
                            const SolverConfig& solver) {
    MeshDomain domain;
    domain.plate = plate;
    const Mesh mesh = triangulate(domain, sizing);
    BoundaryConditions bcs;
    bcs.set(edge_tag(Edge::Left), BoundaryCondition::dirichlet(t_left));
    bcs.set(edge_tag(Edge::Right), BoundaryCondition::dirichlet(t_right));
    const TemperatureField field = solve_steady(assemble(mesh, MaterialProps{}, bcs), solver);
    BenchRun run;
    run.h = sizing.h_target;
    run.nodes = mesh.nodes.size();
    run.error = field_error(
        mesh, field,
        [&](const Point2& p) {
            const double x = std::clamp(p.x() - plate.origin.x(), 0.0, plate.width);
            return analytic_slab(x, plate.width, t_left, t_right);
        },
        [](const Point2&) { return true; }, "plate");
    return run;
}

ConvergenceStudy convergence_study(const HoleBenchmark& bench, const PlateSpec& plate, const std::vector<double>& h_list,
                                   const SizingParams& base, const SolverConfig& solver) {
    if (h_list.size() < 3) throw DomainError("convergence study needs at least 3 mesh sizes");
    for (std::size_t i = 1; i < h_list.size(); ++i)
        if (!(h_list[i] < h_list[i - 1])) throw DomainError("h list must be strictly decreasing");
    ConvergenceStudy study;
    std::vector<double> hs, errs;
    for (double h : h_list) {
        SizingParams sizing = base;
        sizing.h_target = h;
        study.runs.push_back(run_hole_benchmark(bench, plate, sizing, solver));
        hs.push_back(h);
        errs.push_back(study.runs.back().error.l2_relative);
    }
    study.order = fitted_order(hs, errs);
    return study;
}

std::vector<double> default_h_list() { return {0.16, 0.08, 0.04, 0.02}; }

BenchReport run_benchmarks(const std::vector<double>& h_list, const SizingParams& sizing) {
    const PlateSpec plate;
    BenchReport report;
    report.slab = run_slab_benchmark(plate, sizing);
    report.hole = run_hole_benchmark(HoleBenchmark{}, plate, sizing);
    HoleBenchmark scaled;
    scaled.polygon_sides = 0;
    report.study = convergence_study(scaled, plate, h_list, sizing);
    return report;
}

std::string format_bench_text(const BenchReport& r) {
    std::string out;
    char line[256];
    auto verdict = [](bool ok) { return ok ? "ok" : "FAIL"; };
    std::snprintf(line, sizeof line, "slab   h=%.4g nodes=%zu l2=%.3e linf=%.3e (<= %.0e) %s\n", r.slab.h, r.slab.nodes,
                  r.slab.error.l2_relative, r.slab.error.linf, r.thresholds.slab_l2, verdict(r.slab_ok()));
    out += line;
    std::snprintf(line, sizeof line, "hole   h=%.4g nodes=%zu l2=%.3e linf=%.3e (<= %.2g) %s\n", r.hole.h, r.hole.nodes,
                  r.hole.error.l2_relative, r.hole.error.linf, r.thresholds.hole_l2, verdict(r.hole_ok()));
    out += line;
    out += "convergence (hole, sides scaled with h)\n";
    for (const BenchRun& run : r.study.runs) {
        std::snprintf(line, sizeof line, "  h=%-8.4g nodes=%-7zu l2=%.3e linf=%.3e\n", run.h, run.nodes,
                      run.error.l2_relative, run.error.linf);
        out += line;
    }
    std::snprintf(line, sizeof line, "order  %.3f (in [%.1f, %.1f]) %s\n", r.study.order, r.thresholds.order_lo,
                  r.thresholds.order_hi, verdict(r.order_ok()));
    out += line;
    return out;
}

std::string format_bench_csv(const BenchReport& r) {
    std::string out = "case,h,nodes,l2,linf,order\n";
    char line[256];
    auto row = [&](const char* name, const BenchRun& run, const std::string& order) {
        std::snprintf(line, sizeof line, "%s,%.6g,%zu,%.6e,%.6e,%s\n", name, run.h, run.nodes, run.error.l2_relative,
                      run.error.linf, order.c_str());
        out += line;
    };
    row("slab", r.slab, "");
    row("hole", r.hole, "");
    char order[32];
    std::snprintf(order, sizeof order, "%.4f", r.study.order);
    for (std::size_t i = 0; i < r.study.runs.size(); ++i)
        row("convergence", r.study.runs[i], i + 1 == r.study.runs.size() ? order : "");
    return out;
}

}  // namespace crackgen

#include "crackgen/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace crackgen {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw DomainError(std::string("sampler config: ") + field + " " + what);
}

}  // namespace

std::int64_t RngStream::uniform_int(std::int64_t lo, std::int64_t hi) {
    if (hi <= lo) return lo;
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
}

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t index) {
    return derive_stream(master_seed, index, 0);
}

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t index, std::uint64_t channel) {
    const std::uint64_t h = splitmix64(splitmix64(splitmix64(master_seed) ^ index) + channel * 0xd1b54a32d192ed03ULL);
    return RngStream(h);
}

void validate(const SamplerConfig& cfg) {
    validate(cfg.plate);
    validate(cfg.material);
    require(cfg.length_range.lo > 0.0 && cfg.length_range.lo <= cfg.length_range.hi, "length_range",
            "must satisfy 0 < l_min <= l_max");
    require(!cfg.width_exponents.empty(), "width_exponents", "must not be empty");
    for (int e : cfg.width_exponents)
        require(std::pow(10.0, -e) < cfg.length_range.lo, "width_exponents", "must give widths below l_min");
    require(std::isfinite(cfg.angle_range.lo) && cfg.angle_range.lo <= cfg.angle_range.hi, "angle_range",
            "must be a finite non-empty range");
    require(cfg.crack_count_range.first >= 1 && cfg.crack_count_range.first <= cfg.crack_count_range.second,
            "crack_count_range", "must satisfy 1 <= min <= max");
    require(cfg.margin >= 0.0, "margin", "must be >= 0");
    require(cfg.clearance >= 0.0, "clearance", "must be >= 0");
    require(std::isfinite(cfg.temp_range.lo) && std::isfinite(cfg.temp_range.hi) &&
                cfg.temp_range.lo <= cfg.temp_range.hi,
            "temp_range", "must be a finite non-empty range");
    require(std::isfinite(cfg.flux_range.lo) && std::isfinite(cfg.flux_range.hi) &&
                cfg.flux_range.lo <= cfg.flux_range.hi,
            "flux_range", "must be a finite non-empty range");
    require(cfg.bc_edge_count_range.first >= 1 && cfg.bc_edge_count_range.second <= 4 &&
                cfg.bc_edge_count_range.first <= cfg.bc_edge_count_range.second,
            "bc_edge_count_range", "must lie within [1, 4]");
    require(cfg.dirichlet_probability > 0.0 && cfg.dirichlet_probability <= 1.0, "dirichlet_probability",
            "must lie in (0, 1]");
    require(!cfg.colormap_set.empty(), "colormap_set", "must not be empty");
    require(cfg.transient_probability >= 0.0 && cfg.transient_probability <= 1.0, "transient_probability",
            "must lie in [0, 1]");
    require(cfg.transient_span.lo > 0.0 && cfg.transient_span.lo <= cfg.transient_span.hi, "transient_span",
            "must satisfy 0 < lo <= hi");
    require(cfg.transient_steps >= 1, "transient_steps", "must be >= 1");
    require(std::isfinite(cfg.initial_temperature), "initial_temperature", "must be finite");
}

int SolveMode::steps() const {
    if (!transient() || !(dt > 0.0)) return 0;
    return std::max(1, static_cast<int>(std::lround(t_end / dt)));
}

void validate(const ScenarioSpec& s, double margin, double clearance) {
    validate(s.plate);
    validate(s.material);
    for (std::size_t i = 0; i < s.cracks.size(); ++i) {
        validate(s.cracks[i]);
        if (!crack_within_plate(s.cracks[i], s.plate, margin))
            throw DomainError("crack " + std::to_string(i) + " is not inside the plate");
        for (std::size_t j = 0; j < i; ++j)
            if (cracks_overlap(s.cracks[i], s.cracks[j], clearance))
                throw DomainError("cracks " + std::to_string(j) + " and " + std::to_string(i) + " overlap");
    }
    const bool has_dirichlet = std::any_of(s.edge_bcs.begin(), s.edge_bcs.end(),
                                           [](const EdgeBC& e) { return e.bc.kind == BcKind::Dirichlet; });
    if (!has_dirichlet) throw DomainError("scenario needs at least one Dirichlet edge");
    if (s.mode.transient() && (!(s.mode.dt > 0.0) || !(s.mode.t_end > 0.0)))
        throw DomainError("transient mode needs dt > 0 and t_end > 0");
}

double diffusion_time_constant(const PlateSpec& plate, const MaterialProps& material) {
    const double side = std::max(plate.width, plate.height);
    return side * side / (std::numbers::pi * std::numbers::pi * material.diffusivity());
}

EdgeBCs sample_edge_bcs(const SamplerConfig& cfg, RngStream& rng) {
    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
        EdgeBCs bcs;
        for (Edge e : kAllEdges) bcs[static_cast<int>(e)] = EdgeBC{e, BoundaryCondition::insulated()};

        const auto k = rng.uniform_int(cfg.bc_edge_count_range.first, cfg.bc_edge_count_range.second);
        std::array<int, 4> order{0, 1, 2, 3};
        for (int i = 3; i > 0; --i) std::swap(order[i], order[rng.uniform_int(0, i)]);

        bool has_dirichlet = false;
        for (int j = 0; j < k; ++j) {
            auto& slot = bcs[order[j]];
            if (rng.bernoulli(cfg.dirichlet_probability)) {
                slot.bc = BoundaryCondition::dirichlet(rng.uniform(cfg.temp_range.lo, cfg.temp_range.hi));
                has_dirichlet = true;
            } else {
                slot.bc = BoundaryCondition::flux(rng.uniform(cfg.flux_range.lo, cfg.flux_range.hi));
            }
        }
        if (has_dirichlet) return bcs;
    }
    throw SamplingExhausted("no boundary-condition draw produced a Dirichlet edge");
}

ScenarioSpec sample_scenario(const SamplerConfig& cfg, std::uint64_t master_seed, std::int64_t index) {
    if (index < 0) throw DomainError("sample index must be >= 0");
    RngStream rng = derive_stream(master_seed, static_cast<std::uint64_t>(index));

    ScenarioSpec s;
    s.plate = cfg.plate;
    s.material = cfg.material;
    s.crack_bc = cfg.crack_bc;
    s.sample_index = index;
    s.seed = master_seed;

    const auto count = rng.uniform_int(cfg.crack_count_range.first, cfg.crack_count_range.second);
    const double x0 = cfg.plate.origin.x() + cfg.margin;
    const double x1 = cfg.plate.origin.x() + cfg.plate.width - cfg.margin;
    const double y0 = cfg.plate.origin.y() + cfg.margin;
    const double y1 = cfg.plate.origin.y() + cfg.plate.height - cfg.margin;

    for (std::int64_t c = 0; c < count; ++c) {
        int rejections = 0;
        while (true) {
            CrackSpec crack;
            crack.length = rng.uniform(cfg.length_range.lo, cfg.length_range.hi);
            const int exponent = cfg.width_exponents[static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<std::int64_t>(cfg.width_exponents.size()) - 1))];
            crack.width = std::pow(10.0, -exponent);
            crack.angle = rng.uniform(cfg.angle_range.lo, cfg.angle_range.hi);
            crack.center = Point2(rng.uniform(x0, x1), rng.uniform(y0, y1));

            bool ok = crack_within_plate(crack, cfg.plate, cfg.margin);
            for (std::size_t j = 0; ok && j < s.cracks.size(); ++j)
                ok = !cracks_overlap(crack, s.cracks[j], cfg.clearance);
            if (ok) {
                s.cracks.push_back(crack);
                break;
            }
            if (++rejections >= kMaxRejections)
                throw SamplingExhausted("crack placement rejected " + std::to_string(kMaxRejections) +
                                        " consecutive times (sample " + std::to_string(index) + ")");
        }
    }

    s.edge_bcs = sample_edge_bcs(cfg, rng);

    s.colormap = cfg.colormap_set[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(cfg.colormap_set.size()) - 1))];

    if (rng.bernoulli(cfg.transient_probability)) {
        const double tau = diffusion_time_constant(cfg.plate, cfg.material);
        s.mode.kind = SolveMode::Kind::Transient;
        s.mode.t_end = tau * rng.uniform(cfg.transient_span.lo, cfg.transient_span.hi);
        s.mode.dt = s.mode.t_end / cfg.transient_steps;
        s.mode.initial_temperature = cfg.initial_temperature;
    }
    return s;
}

}  // namespace crackgen

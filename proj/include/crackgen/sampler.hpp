#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "crackgen/boundary.hpp"
#include "crackgen/colormap.hpp"
#include "crackgen/geometry.hpp"

namespace crackgen {

/// Deterministic stream of draws. Uses only integer outputs of mt19937_64 so that
/// sequences are identical across standard library implementations.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi); returns lo when the range is degenerate.
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer on [lo, hi], unbiased.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 engine_;
};

RngStream derive_stream(std::uint64_t master_seed, std::uint64_t index);

/// Independent stream family for a named purpose (e.g. augmentation) so that
/// adding draws in one family never perturbs another.
RngStream derive_stream(std::uint64_t master_seed, std::uint64_t index, std::uint64_t channel);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    friend bool operator==(const Interval&, const Interval&) = default;
};

struct SamplerConfig {
    PlateSpec plate{};
    MaterialProps material{};
    Interval length_range{0.3, 0.7};
    std::vector<int> width_exponents{2, 3, 4};
    Interval angle_range{0.0, 3.14159265358979323846};  // half-open [lo, hi)
    std::pair<int, int> crack_count_range{1, 2};
    double margin = 0.05;
    double clearance = 0.05;
    Interval temp_range{0.0, 100.0};
    Interval flux_range{-50.0, 50.0};
    std::pair<int, int> bc_edge_count_range{1, 4};
    double dirichlet_probability = 0.5;
    BoundaryCondition crack_bc{};
    std::vector<ColormapName> colormap_set{ColormapName::Jet, ColormapName::Inferno, ColormapName::Grayscale};
    double transient_probability = 0.0;
    Interval transient_span{0.25, 5.0};  // in diffusion time constants
    int transient_steps = 20;
    double initial_temperature = 0.0;
};

void validate(const SamplerConfig& cfg);  // throws DomainError naming the field

struct SolveMode {
    enum class Kind { Steady, Transient };
    Kind kind = Kind::Steady;
    double t_end = 0.0;
    double dt = 0.0;
    double initial_temperature = 0.0;

    bool transient() const { return kind == Kind::Transient; }
    int steps() const;
};

struct ScenarioSpec {
    PlateSpec plate{};
    MaterialProps material{};
    std::vector<CrackSpec> cracks;
    EdgeBCs edge_bcs{{{Edge::Left, {}}, {Edge::Right, {}}, {Edge::Top, {}}, {Edge::Bottom, {}}}};
    BoundaryCondition crack_bc{};
    SolveMode mode{};
    ColormapName colormap = ColormapName::Grayscale;
    std::int64_t sample_index = 0;
    std::uint64_t seed = 0;
};

/// Throws DomainError if cracks leave the plate, overlap, or no edge is Dirichlet.
void validate(const ScenarioSpec& scenario, double margin = 0.0, double clearance = 0.0);

/// rho c L^2 / (pi^2 k) with L the larger plate side: decay time of the slowest mode.
double diffusion_time_constant(const PlateSpec& plate, const MaterialProps& material);

EdgeBCs sample_edge_bcs(const SamplerConfig& cfg, RngStream& rng);

ScenarioSpec sample_scenario(const SamplerConfig& cfg, std::uint64_t master_seed, std::int64_t index);

inline constexpr int kMaxRejections = 1000;

}  // namespace crackgen

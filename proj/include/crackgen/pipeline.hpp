#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crackgen/annotate.hpp"
#include "crackgen/augment.hpp"
#include "crackgen/fem.hpp"
#include "crackgen/mesh.hpp"
#include "crackgen/render.hpp"
#include "crackgen/sampler.hpp"
#include "crackgen/serialize.hpp"

namespace crackgen {

enum class LabelFormat { Yolo, Coco, Both };

std::string to_string(LabelFormat f);
LabelFormat parse_label_format(const std::string& s);

struct GenerateConfig {
    std::int64_t count = 10;
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    int width = 280;
    int height = 280;
    LabelFormat format = LabelFormat::Both;
    SamplerConfig sampler;
    SizingParams sizing;
    SolverConfig solver;
    double augment_strength = 0.0;  // > 0 adds an augmented copy per sample
    std::optional<Rgb> hole_fill;
    int jobs = 0;  // 0: hardware concurrency
    bool keep_partial = false;
    bool dump_meshes = false;  // meshes/<stem>.off per sample
};

void validate(const GenerateConfig& cfg);  // throws DomainError naming the field

/// Hash of every setting other than the seed that shapes the output bytes.
std::string config_hash(const GenerateConfig& cfg);

struct RenderedSample {
    ScenarioSpec scenario;
    Mesh mesh;
    TemperatureField field;
    RenderResult render;
    std::vector<AnnotationRecord> annotations;
};

/// Mesh, solve, rasterize and annotate one scenario.
RenderedSample render_scenario(const ScenarioSpec& scenario, const SizingParams& sizing, const SolverConfig& solver,
                               int width, int height, const std::optional<Rgb>& hole_fill = std::nullopt);

/// Rebuilds the image described by a sidecar, including any augmentation.
ThermogramImage regenerate(const SampleMetadata& meta);

/// Pixel bounding boxes of the scenario's cracks.
std::vector<std::array<double, 4>> crack_bboxes(const ScenarioSpec& scenario, int width, int height);

/// Stream channel for augmentation draws.
inline constexpr std::uint64_t kAugmentChannel = 1;

std::string sample_stem(std::int64_t index);

struct SampleFailure {
    std::int64_t index = 0;
    std::string message;
};

struct GenerateSummary {
    DatasetManifest manifest;
    std::vector<SampleFailure> failures;
    double seconds = 0.0;
};

using ProgressFn = std::function<void(std::int64_t done, std::int64_t total)>;

/// Writes images/, labels/, meta/ and annotations.json under cfg.out_dir.
GenerateSummary run_generate(const GenerateConfig& cfg, const ProgressFn& progress = {});

struct AugmentConfig {
    std::string in_dir;
    std::string out_dir;
    std::uint64_t seed = 0;
    double strength = 0.5;
    int jobs = 0;
};

/// Augmented copies of every unaugmented image in a dataset, with labels and
/// sidecars, plus a fresh annotations.json.
GenerateSummary run_augment(const AugmentConfig& cfg);

/// Sidecar paths under dir/meta, sorted by name.
std::vector<std::string> list_metadata(const std::string& dir);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads.
void parallel_for(std::int64_t n, int jobs, const std::function<void(std::int64_t)>& fn);

}  // namespace crackgen
